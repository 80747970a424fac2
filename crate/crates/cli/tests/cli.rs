use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_finring"))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str], files: &[&Path]) -> Output {
    let mut cmd = bin();
    let mut files = files.iter();
    for a in args {
        if *a == "@" {
            cmd.arg(files.next().unwrap());
        } else {
            cmd.arg(a);
        }
    }
    cmd.output().unwrap()
}

fn json_out(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

const ZMOD6: &str = r#"{"kind":"zmod","n":6}"#;
const ZMOD4: &str = r#"{"kind":"zmod","n":4}"#;
const KXY2: &str = r#"{"kind":"nilpotent_algebra","p":2,"vars":["x","y"],"truncation_degree":2}"#;

#[test]
fn check_zmod6_all_true() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "zmod6.json", ZMOD6);
    let v = json_out(&run(&["check", "@", "--properties", "bezout,hermite,edr,clean"], &[&f]));
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r["holds"] == Value::Bool(true)));
}

#[test]
fn check_false_verdict_exits_zero() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "kxy2.json", KXY2);
    let v = json_out(&run(&["check", "@", "--properties", "arithmetical"], &[&f]));
    let rep = &v["reports"][0];
    assert_eq!(rep["holds"], Value::Bool(false));
    // The two principal ideals (y) and (x), least pair first.
    assert_eq!(rep["counterexample"], serde_json::json!([[[0, 0, 1]], [[0, 1, 0]]]));
}

#[test]
fn check_zmod4_fractionally_if() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "zmod4.json", ZMOD4);
    let v = json_out(&run(&["check", "@", "--properties", "fractionally_if"], &[&f]));
    assert_eq!(v["reports"][0]["holds"], Value::Bool(true));
}

#[test]
fn unknown_property_is_a_usage_error() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "zmod4.json", ZMOD4);
    let o = run(&["check", "@", "--properties", "bezout,nonsense"], &[&f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_ring_is_a_parse_error() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "bad.json", r#"{"kind":"zmod"}"#);
    assert_eq!(run(&["check", "@", "--properties", "bezout"], &[&f]).status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_three() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "zmod6.json", ZMOD6);
    let o = run(&["check", "@", "--properties", "bezout", "--cap-elements", "4"], &[&f]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn spec_reports_blocks_and_writes_dot() {
    let d = TempDir::new().unwrap();
    let z6 = write(&d, "zmod6.json", ZMOD6);
    let z4 = write(&d, "zmod4.json", ZMOD4);
    let prod = write(
        &d,
        "prod.json",
        r#"{"kind":"product","factors":[{"kind":"zmod","n":4},{"kind":"zmod","n":9}]}"#,
    );
    let dot = d.path().join("z6.dot");
    let v = json_out(&run(&["spec", "@", "--dot", "@"], &[&z6, &dot]));
    assert_eq!(v["spec"].as_array().unwrap().len(), 2);
    assert_eq!(v["pspec"].as_array().unwrap().len(), 2);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches("subgraph cluster_").count(), 2);

    let v = json_out(&run(&["spec", "@"], &[&z4]));
    assert_eq!(v["spec"].as_array().unwrap().len(), 1);
    assert_eq!(v["pspec"].as_array().unwrap().len(), 1);

    let v = json_out(&run(&["spec", "@"], &[&prod]));
    let blocks = v["pspec"].as_array().unwrap();
    assert_eq!(blocks.len(), 2);
    // Coordinate pure ideals: 0 × Z/9 and Z/4 × 0.
    assert_eq!(blocks[0]["pure_ideal_elements"].as_array().unwrap().len(), 9);
    assert_eq!(blocks[1]["pure_ideal_elements"].as_array().unwrap().len(), 4);
}

#[test]
fn snf_transcripts() {
    let d = TempDir::new().unwrap();
    let z6 = write(&d, "zmod6.json", ZMOD6);
    for (m, diag) in [("[[2,3],[4,1]]", "[1,2]"), ("[[2,0],[0,3]]", "[1,0]"), ("[[1,0],[0,1]]", "[1,1]")] {
        let mf = write(&d, "m.json", m);
        let v = json_out(&run(&["snf", "@", "@"], &[&z6, &mf]));
        assert_eq!(v["diagonal"], serde_json::from_str::<Value>(diag).unwrap(), "{m}");
        assert_eq!(v["PAQ_equals_D"], Value::Bool(true));
        assert_eq!(v["PAQ"], v["D"]);
    }
}

#[test]
fn snf_on_non_edr_ring_exits_four() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "kxy2.json", KXY2);
    let m = write(&d, "m.json", "[[[0,1,0],[0,0,1]]]");
    assert_eq!(run(&["snf", "@", "@"], &[&f, &m]).status.code(), Some(4));
}

#[test]
fn example_suite_is_deterministic() {
    let a = run(&["suite", "paper-examples", "--seed", "3"], &[]);
    let b = run(&["suite", "paper-examples", "--seed", "3"], &[]);
    let v = json_out(&a);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(a.stdout, b.stdout);
    let detail = v["members"][0]["detail"].as_str().unwrap();
    assert!(detail.contains("(0:(2,0)) refuted for 6 candidate gen-sets"), "{detail}");
}

#[test]
fn unknown_suite_exits_two() {
    assert_eq!(run(&["suite", "nope"], &[]).status.code(), Some(2));
}

#[test]
fn cli_verdicts_match_library() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "kxy2.json", KXY2);
    let ring = finring::RingDescriptor::from_json(KXY2).unwrap().build().unwrap();
    let v = json_out(&run(&["check", "@", "--properties", "bezout,baer_self_injective,gelfand"], &[&f]));
    for rep in v["reports"].as_array().unwrap() {
        let name = rep["property"].as_str().unwrap();
        let lib = finring::suite::check_property(&ring, name).unwrap();
        assert_eq!(rep, &lib.to_json(), "{name}");
    }
}
