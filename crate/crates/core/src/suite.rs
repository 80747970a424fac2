//! Named property dispatch and the regression sweeps run by `finring suite`
//! and the acceptance target.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::corpus::{modules_over, CorpusRing};
use crate::error::{Error, Result};
use crate::fpinj::{baer_self_injective, double_annihilator_check, fractionally_if_check, strongly_discrete_check};
use crate::gluing::{brute_force_epi, brute_force_iso, epi_from, gen_count, gen_count_local, iso_test};
use crate::par;
use crate::properties::{
    almost_clean_check, almost_clean_decomposition, arithmetical_check, bezout_check, clean_check,
    clean_decomposition, edr_check, edr_reduction, fitting_ideals, gh_triple_check, hausd_check, hermite_check,
    hermite_witness, is_bezout, is_edr, loalclean, loalclean_equiv, pp_check, HermiteGluer, Matrix, SnfEngine,
};
use crate::report::PropertyReport;
use crate::ring::{find_isomorphism, CyclicModule, Elem, Ring};
use crate::seq::{AlgSeq, IntSeq, Moduli, SeqPoint, SeqRing, Vasc, VascElem};
use crate::spectrum::{
    boolean_ring, gelfand_check, idempotent_generator, is_pure, pure_saturation_check, purity_conditions, stalk_at,
    tau, x_of,
};

/// Property names accepted by [`check_property`].
pub const PROPERTIES: &[&str] = &[
    "bezout",
    "hermite",
    "gh_triple",
    "edr",
    "arithmetical",
    "clean",
    "almost_clean",
    "pp",
    "loalclean_equiv",
    "almost_clean_local",
    "baer_self_injective",
    "double_annihilator",
    "fractionally_if",
    "strongly_discrete",
    "gelfand",
];

pub const SUITES: &[&str] = &["corpus", "paper-examples"];

/// Rejects unknown names before any work is done.
pub fn validate_properties<S: AsRef<str>>(names: &[S]) -> Result<()> {
    match names.iter().find(|n| !PROPERTIES.contains(&n.as_ref())) {
        Some(n) => Err(Error::InvalidArgument(format!(
            "unknown property {:?}; known: {}",
            n.as_ref(),
            PROPERTIES.join(",")
        ))),
        None => Ok(()),
    }
}

pub fn check_property(r: &Ring, name: &str) -> Result<PropertyReport> {
    match name {
        "bezout" => bezout_check(r),
        "hermite" => hermite_check(r),
        "gh_triple" => gh_triple_check(r),
        "edr" => edr_check(r),
        "arithmetical" => arithmetical_check(r),
        "clean" => Ok(clean_check(r)),
        "almost_clean" => Ok(almost_clean_check(r)),
        "pp" => pp_check(r),
        "loalclean_equiv" => loalclean_equiv(r),
        "almost_clean_local" => hausd_check(r),
        "baer_self_injective" => baer_self_injective(r),
        "double_annihilator" => double_annihilator_check(r),
        "fractionally_if" => fractionally_if_check(r),
        "strongly_discrete" => strongly_discrete_check(r),
        "gelfand" => gelfand_check(r),
        other => {
            validate_properties(&[other])?;
            unreachable!()
        }
    }
}

/// Result of one sweep. `detail` is deterministic; timing is kept apart.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "passed": self.passed, "checked": self.checked, "detail": self.detail})
    }
}

/// Runs `body`, which returns the number of cases checked and the failures.
fn sweep(name: &str, body: impl FnOnce() -> Result<(usize, Vec<String>, String)>) -> Outcome {
    let start = Instant::now();
    let (passed, checked, detail) = match body() {
        Ok((n, fails, note)) if fails.is_empty() => (true, n, note),
        Ok((n, fails, _)) => (false, n, format!("{} failures; first: {}", fails.len(), fails[0])),
        Err(e) => (false, 0, format!("error: {e}")),
    };
    Outcome {
        name: name.into(),
        passed,
        checked,
        detail,
        elapsed: start.elapsed(),
    }
}

/// Per-ring sweep body run in parallel; failures come back in corpus order.
fn per_ring(
    corpus: &[CorpusRing],
    f: impl Fn(&Ring) -> Result<(usize, Vec<String>)> + Sync,
) -> Result<(usize, Vec<String>)> {
    let results = par::map(corpus, |c| f(&c.ring).map_err(|e| (c.ring.name(), e)));
    let mut total = 0;
    let mut fails = Vec::new();
    for r in results {
        match r {
            Ok((n, fs)) => {
                total += n;
                fails.extend(fs);
            }
            Err((name, e)) => fails.push(format!("{name}: {e}")),
        }
    }
    Ok((total, fails))
}

/// Purity conditions agree on every ideal; pure ideals are generated by an idempotent.
pub fn purity_sweep(corpus: &[CorpusRing]) -> Outcome {
    sweep("purity equivalence", || {
        let (n, f) = per_ring(corpus, |r| {
            let mut fails = Vec::new();
            let ideals = r.ideals()?;
            for a in ideals.iter() {
                let c = purity_conditions(r, a)?;
                if !(c.common_family == c.elementwise && c.elementwise == c.flat) {
                    fails.push(format!("{}: {} gives {:?}", r.name(), r.fmt_ideal(a), c));
                }
                if c.elementwise && idempotent_generator(r, a).is_none() {
                    fails.push(format!("{}: pure {} has no idempotent generator", r.name(), r.fmt_ideal(a)));
                }
            }
            Ok((ideals.len(), fails))
        })?;
        Ok((n, f, format!("{n} ideals over {} rings", corpus.len())))
    })
}

/// Pure ideals correspond to unions of blocks through `V` and `∩ 0_P`.
pub fn pure_bijection_sweep(corpus: &[CorpusRing]) -> Outcome {
    sweep("pure ideals ↔ block unions", || {
        let (n, f) = per_ring(corpus, |r| {
            let s = r.spectrum()?;
            let k = s.blocks.len();
            let mut fails = Vec::new();
            let mut images = BTreeSet::new();
            for mask in 0u32..(1 << k) {
                let blocks: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).collect();
                let c = s.union_of(&blocks);
                match pure_saturation_check(r, &c)? {
                    Some(a) if is_pure(r, &a).pure && s.v(&a) == c => {
                        images.insert(a.members().ones().collect::<Vec<_>>());
                    }
                    _ => fails.push(format!("{}: blocks {blocks:?} give no pure ideal", r.name())),
                }
            }
            let pure: Vec<_> = r.ideals()?.iter().filter(|a| is_pure(r, a).pure).cloned().collect();
            for a in &pure {
                match pure_saturation_check(r, &s.v(a))? {
                    Some(b) if b == *a => {}
                    _ => fails.push(format!("{}: {} is not recovered from V", r.name(), r.fmt_ideal(a))),
                }
            }
            if images.len() != 1 << k || pure.len() != 1 << k {
                fails.push(format!("{}: {} pure ideals for {k} blocks", r.name(), pure.len()));
            }
            Ok((pure.len(), fails))
        })?;
        Ok((n, f, format!("{n} pure ideals over {} rings", corpus.len())))
    })
}

/// `|pSpec| = |X(R)|`, `τ` bijective, stalks at `τ(x)` isomorphic to `R/A(x)`.
pub fn stalk_sweep(corpus: &[CorpusRing]) -> Outcome {
    sweep("stalks over X(R)", || {
        let (n, f) = per_ring(corpus, |r| {
            let s = r.spectrum()?;
            let xs = x_of(&boolean_ring(r)?)?;
            let mut fails = Vec::new();
            if xs.len() != s.blocks.len() {
                fails.push(format!("{}: |pSpec| = {}, |X| = {}", r.name(), s.blocks.len(), xs.len()));
                return Ok((0, fails));
            }
            let t = tau(r)?;
            for (b, block) in s.blocks.iter().enumerate() {
                let stalk = stalk_at(r, t[b])?;
                let local = r.quotient(&block.pure_ideal)?;
                if find_isomorphism(&stalk, &local).is_none() {
                    fails.push(format!("{}: stalk at τ(block {b}) differs from R/A(x)", r.name()));
                }
            }
            Ok((s.blocks.len(), fails))
        })?;
        Ok((n, f, format!("{n} blocks over {} rings", corpus.len())))
    })
}

/// Glued Hermite witnesses on Bézout rings, against direct search.
pub fn gluing_sweep(corpus: &[CorpusRing]) -> Outcome {
    sweep("Hermite gluing", || {
        let bezout: Vec<CorpusRing> = corpus
            .iter()
            .filter(|c| is_bezout(&c.ring).unwrap_or(false))
            .cloned()
            .collect();
        let (n, f) = per_ring(&bezout, |r| {
            let gluer = HermiteGluer::new(r)?;
            let rows = par::map_range(r.size(), |a| -> Result<Vec<String>> {
                let a = Elem(a as u32);
                let mut fails = Vec::new();
                for b in r.elements() {
                    let glued = gluer.witness(a, b)?;
                    let direct = hermite_witness(r, a, b)?;
                    if glued.is_some() != direct.is_some() {
                        fails.push(format!("{}: solvability differs on ({}, {})", r.name(), r.fmt_elem(a), r.fmt_elem(b)));
                    }
                    if let Some((d, a1, b1)) = glued {
                        let ok = r.mul(d, a1) == a && r.mul(d, b1) == b && r.ideal(&[a1, b1]).is_whole();
                        if !ok {
                            fails.push(format!("{}: glued witness fails on ({}, {})", r.name(), r.fmt_elem(a), r.fmt_elem(b)));
                        }
                    }
                }
                Ok(fails)
            });
            let mut fails = Vec::new();
            for row in rows {
                fails.extend(row?);
            }
            Ok((r.size() * r.size(), fails))
        })?;
        Ok((n, f, format!("{n} pairs over {} Bézout rings", bezout.len())))
    })
}

/// EDR verdict against the reduction to `R/L`, wherever the reduction's
/// hypothesis (every `R/A(x)` Bézout) holds.
pub fn edr_sweep(corpus: &[CorpusRing]) -> Outcome {
    sweep("EDR reduction to minimal primes", || {
        let reds = par::map(corpus, |c| edr_check(&c.ring).and_then(|_| edr_reduction(&c.ring)));
        let mut fails = Vec::new();
        let (mut applicable, mut outside, mut outside_disagree) = (0, 0, 0);
        for (c, red) in corpus.iter().zip(reds) {
            let red = red?;
            if red.applicable {
                applicable += 1;
                if red.direct != red.via_minimal_primes {
                    fails.push(format!("{}: direct {} vs minimal primes {}", c.ring.name(), red.direct, red.via_minimal_primes));
                }
            } else {
                outside += 1;
                outside_disagree += usize::from(red.direct != red.via_minimal_primes);
            }
        }
        let note = format!(
            "{applicable} rings satisfy the hypothesis and agree; {outside} rings fall outside it ({outside_disagree} of those would disagree unconditionally)"
        );
        Ok((applicable, fails, note))
    })
}

/// Which matrices [`snf_sweep`] covers.
#[derive(Debug, Clone, Copy)]
pub struct SnfPlan {
    pub max_ring_size: usize,
    pub max_dim: usize,
    /// Shapes with at most this many matrices are enumerated; larger ones sampled.
    pub exhaustive_limit: u128,
    pub samples_per_large_shape: usize,
    pub random_4x4: usize,
    pub seed: u64,
}

impl SnfPlan {
    pub fn full(seed: u64) -> SnfPlan {
        SnfPlan {
            max_ring_size: 12,
            max_dim: 3,
            exhaustive_limit: u128::MAX,
            samples_per_large_shape: 0,
            random_4x4: 500,
            seed,
        }
    }

    pub fn feasible(seed: u64) -> SnfPlan {
        SnfPlan {
            max_ring_size: 12,
            max_dim: 3,
            exhaustive_limit: 1 << 20,
            samples_per_large_shape: 2000,
            random_4x4: 500,
            seed,
        }
    }
}

fn verify_snf(engine: &SnfEngine, a: &Matrix) -> Result<Option<String>> {
    let r = engine.ring();
    let s = engine.diagonalize(a)?;
    if s.p.mul(r, a).mul(r, &s.q) != s.d || !s.d.is_diagonal() {
        return Ok(Some("P·A·Q ≠ D".into()));
    }
    let d = s.d.diagonal();
    if d.windows(2).any(|w| !r.principal(w[0]).contains(w[1])) {
        return Ok(Some("divisibility chain broken".into()));
    }
    let fitting = fitting_ideals(r, a);
    let mut prod = r.one();
    for (k, &dk) in d.iter().enumerate() {
        prod = r.mul(prod, dk);
        if r.principal(prod) != fitting[k] {
            return Ok(Some(format!("diagonal disagrees with the Fitting ideal of {}-minors", k + 1)));
        }
    }
    Ok(None)
}

fn matrix_from_index(r: &Ring, rows: usize, cols: usize, mut idx: u128) -> Matrix {
    let n = r.size() as u128;
    let data = (0..rows * cols)
        .map(|_| {
            let e = Elem((idx % n) as u32);
            idx /= n;
            e
        })
        .collect();
    Matrix::new(rows, cols, data)
}

/// SNF over every EDR corpus ring of bounded size: `P·A·Q = D`, divisibility
/// chain, and agreement with the Fitting ideals of `A`.
pub fn snf_sweep(corpus: &[CorpusRing], plan: SnfPlan) -> Outcome {
    sweep("Smith normal form", || {
        let rings: Vec<&CorpusRing> = corpus
            .iter()
            .filter(|c| c.ring.size() <= plan.max_ring_size && is_edr(&c.ring).unwrap_or(false))
            .collect();
        let mut fails = Vec::new();
        let (mut checked, mut skipped) = (0usize, 0u128);
        let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
        for c in &rings {
            let r = &c.ring;
            let engine = SnfEngine::new(r)?;
            let n = r.size() as u128;
            let mut shapes: Vec<(usize, usize)> = Vec::new();
            for rows in 1..=plan.max_dim {
                for cols in 1..=plan.max_dim {
                    shapes.push((rows, cols));
                }
            }
            for (rows, cols) in shapes {
                let total = n.checked_pow((rows * cols) as u32).unwrap_or(u128::MAX);
                let indices: Vec<u128> = if total <= plan.exhaustive_limit {
                    (0..total).collect()
                } else {
                    skipped += total - plan.samples_per_large_shape as u128;
                    (0..plan.samples_per_large_shape).map(|_| rng.gen_range(0..total)).collect()
                };
                let results = par::map(&indices, |&i| {
                    let a = matrix_from_index(r, rows, cols, i);
                    verify_snf(&engine, &a).map(|f| f.map(|msg| format!("{}: {msg} on {}", r.name(), a.to_json(r))))
                });
                checked += indices.len();
                for res in results {
                    if let Some(f) = res? {
                        fails.push(f);
                    }
                }
            }
            let samples: Vec<Matrix> = (0..plan.random_4x4)
                .map(|_| Matrix::new(4, 4, (0..16).map(|_| Elem(rng.gen_range(0..n as u32))).collect()))
                .collect();
            for (a, res) in samples.iter().zip(par::map(&samples, |a| verify_snf(&engine, a))) {
                if let Some(msg) = res? {
                    fails.push(format!("{}: {msg} on {}", r.name(), a.to_json(r)));
                }
            }
            checked += samples.len();
        }
        if skipped > 0 {
            fails.push(format!(
                "exhaustive coverage incomplete: {skipped} matrices up to {0}×{0} were skipped; their shapes were only sampled",
                plan.max_dim
            ));
        }
        let note = format!("{checked} matrices over {} EDR rings of size ≤ {}", rings.len(), plan.max_ring_size);
        Ok((checked, fails, note))
    })
}

/// A sampled SNF sweep is complete only if nothing was skipped.
pub fn snf_exhaustive_matrix_count(corpus: &[CorpusRing], plan: SnfPlan) -> u128 {
    corpus
        .iter()
        .filter(|c| c.ring.size() <= plan.max_ring_size && is_edr(&c.ring).unwrap_or(false))
        .map(|c| {
            let n = c.ring.size() as u128;
            let mut total = 0u128;
            for rows in 1..=plan.max_dim {
                for cols in 1..=plan.max_dim {
                    total = total.saturating_add(n.checked_pow((rows * cols) as u32).unwrap_or(u128::MAX));
                }
            }
            total
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Fractionally IF ⟺ arithmetical; Baer ⟺ double annihilator.
pub fn fpinj_sweep(corpus: &[CorpusRing]) -> Outcome {
    sweep("fractionally IF and self-injectivity", || {
        let (n, f) = per_ring(corpus, |r| {
            let mut fails = Vec::new();
            let (fif, ar) = (fractionally_if_check(r)?.holds, arithmetical_check(r)?.holds);
            if fif != ar {
                fails.push(format!("{}: fractionally IF {fif}, arithmetical {ar}", r.name()));
            }
            let (baer, dann) = (baer_self_injective(r)?.holds, double_annihilator_check(r)?.holds);
            if baer != dann {
                fails.push(format!("{}: Baer {baer}, double annihilator {dann}", r.name()));
            }
            Ok((1, fails))
        })?;
        Ok((n, f, format!("{n} rings")))
    })
}

/// Clean = almost clean with equal least witnesses; the three local-clean
/// conditions agree; PP implies almost clean.
pub fn clean_sweep(corpus: &[CorpusRing]) -> Outcome {
    sweep("clean, almost clean, PP", || {
        let (n, f) = per_ring(corpus, |r| {
            let mut fails = Vec::new();
            let (c, ac) = (clean_check(r), almost_clean_check(r));
            if c.holds != ac.holds || c.counterexample != ac.counterexample {
                fails.push(format!("{}: clean and almost clean reports differ", r.name()));
            }
            if let Some(a) = r.elements().find(|&a| clean_decomposition(r, a) != almost_clean_decomposition(r, a)) {
                fails.push(format!("{}: least decompositions differ at {}", r.name(), r.fmt_elem(a)));
            }
            let l = loalclean(r)?;
            if !l.agree() {
                fails.push(format!("{}: local-clean conditions disagree: {l:?}", r.name()));
            }
            if pp_check(r)?.holds && !ac.holds {
                fails.push(format!("{}: PP but not almost clean", r.name()));
            }
            Ok((r.size(), fails))
        })?;
        Ok((n, f, format!("{n} elements over {} rings", corpus.len())))
    })
}

/// Generator counts against their local maxima; glued epimorphisms and
/// isomorphism tests against brute-force hom search.
pub fn modules_sweep(corpus: &[CorpusRing], max_ring_size: usize, max_module_size: usize) -> Outcome {
    sweep("generator counts and module homs", || {
        let small: Vec<CorpusRing> = corpus.iter().filter(|c| c.ring.size() <= max_ring_size).cloned().collect();
        let (n, f) = per_ring(&small, |r| {
            let ms = modules_over(r, 3, max_module_size)?;
            let mut fails = Vec::new();
            let name = |m: &CyclicModule| m.name();
            for m in &ms {
                let k = gen_count(m)?;
                let local = gen_count_local(m)?;
                if k != local {
                    fails.push(format!("{}: μ = {k}, local max {local}", name(m)));
                }
                for j in [k.saturating_sub(1), k] {
                    if j == 0 && k > 0 {
                        continue;
                    }
                    let free = CyclicModule::free(r, j)?;
                    let glued = epi_from(&free, m)?;
                    let brute = brute_force_epi(&free, m)?;
                    let ok = glued.is_some() == brute.is_some() && glued.as_ref().map_or(true, |h| h.is_surjective());
                    if !ok || glued.is_some() != (j >= k) {
                        fails.push(format!("{}: epimorphism from R^{j} disagrees", name(m)));
                    }
                }
            }
            // Each module against itself and against the next module of the
            // same size; all same-size pairs would be quadratic.
            let mut pairs = 0;
            for (i, m) in ms.iter().enumerate() {
                let next = ms[i + 1..].iter().find(|m2| m2.size() == m.size());
                for m2 in std::iter::once(m).chain(next) {
                    pairs += 1;
                    let glued = iso_test(m, m2)?;
                    let brute = brute_force_iso(m, m2)?;
                    if glued != brute.is_some() {
                        fails.push(format!("{} vs {}: iso_test {glued}", name(m), name(m2)));
                    }
                }
            }
            Ok((ms.len() + pairs, fails))
        })?;
        Ok((n, f, format!("{n} modules and module pairs over {} rings", small.len())))
    })
}

fn sample_vasc(rng: &mut ChaCha8Rng, support: usize) -> VascElem {
    let m: i64 = rng.gen_range(-50..=50);
    let mask: u32 = rng.gen_range(0..1 << support);
    VascElem::new(m, (0..support).filter(|i| mask >> i & 1 == 1))
}

/// Decomposition recipe, classifiers against bounded search, and the
/// non-finitely-generated annihilator of `(2, ∅)`.
pub fn vasconcelos_sweep(samples: usize, seed: u64) -> Outcome {
    sweep("Vasconcelos ring", || {
        let v = Vasc;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut fails = Vec::new();
        for _ in 0..samples {
            let a = sample_vasc(&mut rng, 8);
            let (e, r) = v.almost_clean_decompose(&a)?;
            if !(v.is_idempotent(&e) && v.mul(&e, &e) == e && v.is_regular(&r) && v.add(&e, &r) == a) {
                fails.push(format!("decomposition of {}", a.to_json()));
            }
            let searched = v.bounded_annihilator_search(&a, 9);
            if v.is_regular(&a) != searched.is_none() {
                fails.push(format!("regularity of {}", a.to_json()));
            }
            if v.is_idempotent(&a) != (v.mul(&a, &a) == a) {
                fails.push(format!("idempotency of {}", a.to_json()));
            }
            if let Some(w) = v.annihilator(&a) {
                if !v.is_zero(&v.mul(&w, &a)) || v.is_zero(&w) {
                    fails.push(format!("annihilator certificate of {}", a.to_json()));
                }
            }
        }
        let a = VascElem::new(2, []);
        let gen_sets: Vec<Vec<VascElem>> = vec![
            vec![],
            vec![VascElem::new(0, [0])],
            vec![VascElem::new(0, [0]), VascElem::new(0, [1])],
            vec![VascElem::new(0, [0, 3]), VascElem::new(0, [5])],
            vec![VascElem::new(0, [1, 2, 3, 4])],
            vec![VascElem::new(0, [7]), VascElem::new(0, [0, 1]), VascElem::new(0, [2])],
        ];
        for gens in &gen_sets {
            let w = v.annihilator_refuter(&a, gens)?;
            let support: BTreeSet<usize> = gens.iter().flat_map(|g| g.x.iter().copied()).collect();
            let outside = w.m == 0.into() && w.x.len() == 1 && w.x.iter().all(|k| !support.contains(k));
            if !v.is_zero(&v.mul(&w, &a)) || !outside {
                fails.push(format!("refuter on {} generators", gens.len()));
            }
        }
        if !matches!(v.annihilator_refuter(&a, &[VascElem::new(1, [])]), Err(Error::NotInAnnihilator(_))) {
            fails.push("a non-annihilating candidate was accepted".into());
        }
        let note = format!(
            "{samples} sampled elements; (0:(2,0)) refuted for {} candidate gen-sets",
            gen_sets.len()
        );
        Ok((samples + gen_sets.len(), fails, note))
    })
}

/// Points and separating idempotents, stalks of the two algebra families,
/// and the refuter for `(0 : x·1)`.
pub fn sequence_sweep(pairs: usize) -> Outcome {
    sweep("sequence rings", || {
        let mut fails = Vec::new();
        let r = SeqRing::new(IntSeq::new(Moduli::powers(2, 1)?));
        let pts: Vec<SeqPoint> = r.points().take(12).collect();
        let mut done = 0;
        'outer: for x in &pts {
            for y in &pts {
                if done == pairs {
                    break 'outer;
                }
                if x == y {
                    continue;
                }
                let e = r.separating_idempotent(*x, *y)?;
                let f = r.sub(&r.one(), &e);
                if !(r.point_in_open(*x, &e) && r.point_in_open(*y, &f)) {
                    fails.push(format!("{x:?}, {y:?} not separated"));
                }
                done += 1;
            }
        }
        if done < pairs {
            fails.push(format!("only {done} point pairs available"));
        }

        let nq = SeqRing::new(AlgSeq::non_qif());
        let v = Ring::nilpotent(2, &["X"], 2, vec![])?;
        let k = Ring::zmod(2)?;
        for n in 0..8 {
            let stalk = nq.stalk(SeqPoint::At(n))?;
            let target = if n % 2 == 0 { &v } else { &k };
            if find_isomorphism(stalk.finite().expect("finite coordinates"), target).is_none() {
                fails.push(format!("stalk at x_{n} has the wrong type"));
            }
        }
        let x = nq.model().base().parse(&json!([0, 1]))?;
        let x1 = nq.from_tail(nq.model().diagonal(x));
        let xe0 = nq.mul(&x1, &nq.e(0));
        let gen_sets = vec![
            vec![],
            vec![x1.clone()],
            vec![x1.clone(), nq.e(1)],
            vec![x1.clone(), nq.e(1), nq.e(3)],
            vec![nq.e(1), nq.e(3), nq.e(5)],
            vec![xe0.clone(), nq.e(7)],
        ];
        for gens in &gen_sets {
            let w = nq.annihilator_refuter(&x1, gens)?;
            let (&n, _) = w.exceptions.iter().next().expect("refuter output is nonzero");
            let vanish = gens.iter().all(|g| nq.coord(g, n) == Elem(0));
            if !nq.is_zero(&nq.mul(&w, &x1)) || nq.is_zero(&w) || !vanish || w.exceptions.len() != 1 {
                fails.push(format!("refuter on {} generators", gens.len()));
            }
        }

        let q3 = SeqRing::new(AlgSeq::q3());
        let tail = q3.stalk(SeqPoint::Infinity)?;
        let tail = tail.finite().expect("finite tail domain");
        let target = Ring::nilpotent(2, &["Y", "Z"], 2, vec![])?;
        if find_isomorphism(tail, &target).is_none() {
            fails.push("Q3 stalk at x_∞ is not K[Y,Z]/(Y,Z)²".into());
        }
        if arithmetical_check(tail)?.holds {
            fails.push("Q3 stalk at x_∞ passes arithmetical_check".into());
        }
        let note = format!(
            "{done} separated point pairs; nonQIF stalks x_0..x_7; (0:x·1) refuted for {} candidate gen-sets; Q3 stalk not arithmetical",
            gen_sets.len()
        );
        Ok((done + 8 + gen_sets.len() + 1, fails, note))
    })
}

/// Runs a named suite; `seed` drives every sampled sweep.
pub fn run_suite(name: &str, corpus: &[CorpusRing], seed: u64) -> Result<Vec<Outcome>> {
    match name {
        "corpus" => Ok(vec![
            purity_sweep(corpus),
            pure_bijection_sweep(corpus),
            stalk_sweep(corpus),
            gluing_sweep(corpus),
            edr_sweep(corpus),
            snf_sweep(corpus, SnfPlan::feasible(seed)),
            fpinj_sweep(corpus),
            clean_sweep(corpus),
            modules_sweep(corpus, 16, 64),
        ]),
        "paper-examples" => Ok(vec![vasconcelos_sweep(1000, seed), sequence_sweep(50)]),
        other => Err(Error::InvalidArgument(format!(
            "unknown suite {other:?}; known: {}",
            SUITES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_property_is_rejected() {
        assert!(validate_properties(&["bezout", "edr"]).is_ok());
        assert!(matches!(validate_properties(&["bezoot"]), Err(Error::InvalidArgument(_))));
        assert!(check_property(&Ring::zmod(4).unwrap(), "nope").is_err());
    }

    #[test]
    fn every_property_runs_on_z6() {
        let r = Ring::zmod(6).unwrap();
        for p in PROPERTIES {
            let rep = check_property(&r, p).unwrap();
            assert_eq!(rep.property, *p);
        }
    }

    #[test]
    fn example_suite_passes() {
        for o in run_suite("paper-examples", &[], 7).unwrap() {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &[], 0).is_err());
    }
}
