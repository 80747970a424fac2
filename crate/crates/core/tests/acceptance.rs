//! Acceptance criteria 1–11: one PASS/FAIL line each.
//!
//! Every tolerance is pinned below. A criterion passes when its sweep finds
//! no failure and finishes inside its time limit. Criterion 6 asks for an
//! exhaustive sweep that cannot finish on this hardware; it runs the feasible
//! part, reports FAIL, and does not fail the process.

use std::process::ExitCode;
use std::time::Duration;

use finring::corpus::default_corpus;
use finring::suite::{self, Outcome, SnfPlan};

const SEED: u64 = 20_240_601;
/// Criteria whose FAIL is expected and explained, so they do not fail the run.
const KNOWN_INFEASIBLE: &[u8] = &[6];

const VASC_SAMPLES: usize = 1000;
const POINT_PAIRS: usize = 50;
const MODULE_RING_SIZE: usize = 16;
const MODULE_SIZE: usize = 64;

fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn main() -> ExitCode {
    let corpus = default_corpus().expect("corpus builds");
    println!("corpus: {} rings, seed {SEED}", corpus.len());

    let full = SnfPlan::full(SEED);
    let required = suite::snf_exhaustive_matrix_count(&corpus, full);

    let runs: Vec<(u8, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        (1, minutes(2), Box::new(|| suite::purity_sweep(&corpus))),
        (2, minutes(1), Box::new(|| suite::pure_bijection_sweep(&corpus))),
        (3, minutes(2), Box::new(|| suite::stalk_sweep(&corpus))),
        (4, minutes(5), Box::new(|| suite::gluing_sweep(&corpus))),
        (5, minutes(2), Box::new(|| suite::edr_sweep(&corpus))),
        (6, minutes(10), Box::new(|| suite::snf_sweep(&corpus, SnfPlan::feasible(SEED)))),
        (7, minutes(10), Box::new(|| suite::fpinj_sweep(&corpus))),
        (8, minutes(2), Box::new(|| suite::clean_sweep(&corpus))),
        (9, minutes(1), Box::new(|| suite::vasconcelos_sweep(VASC_SAMPLES, SEED))),
        (10, minutes(1), Box::new(|| suite::sequence_sweep(POINT_PAIRS))),
        (11, minutes(5), Box::new(|| suite::modules_sweep(&corpus, MODULE_RING_SIZE, MODULE_SIZE))),
    ];

    // Criterion ids given on the command line restrict the run.
    let only: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (id, limit, run) in runs.iter().filter(|(id, ..)| only.is_empty() || only.contains(id)) {
        let o = run();
        let in_time = o.elapsed <= *limit;
        let pass = o.passed && in_time;
        let timing = format!("{:.1}s of {}s", o.elapsed.as_secs_f64(), limit.as_secs());
        let mut detail = o.detail.clone();
        if !in_time {
            detail = format!("over time limit; {detail}");
        }
        if *id == 6 {
            detail = format!("{detail}; exhaustive target is {required} matrices");
        }
        println!(
            "criterion {id:>2}: {} [{}] {} ({timing})",
            if pass { "PASS" } else { "FAIL" },
            o.name,
            detail
        );
        if !pass && !KNOWN_INFEASIBLE.contains(id) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failures");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
