//! The ten acceptance criteria. Prints one line per criterion and fails if
//! any criterion fails. Lines go straight to the stderr handle so they are
//! visible without `--nocapture`.

use hyperstress::experiments::suite::{determinism, run_criteria, CRITERIA};
use hyperstress::experiments::RateReport;
use std::io::Write;
use std::time::Instant;

const SEED: u64 = 20_240_601;

fn line(i: usize, r: &RateReport) -> String {
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    let mut s = format!("criterion {:>2} [{verdict}] {}", i + 1, CRITERIA[i]);
    for c in r.checks.iter().filter(|c| !c.pass) {
        s.push_str(&format!("\n    failed: {} = {:e}", c.name, c.value));
    }
    s
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let mut reports = run_criteria(SEED).expect("criteria run");
    reports.push(determinism(&reports, SEED).expect("rerun"));
    let mut failed = Vec::new();
    let mut err = std::io::stderr().lock();
    writeln!(err).unwrap();
    for (i, r) in reports.iter().enumerate() {
        writeln!(err, "{}", line(i, r)).unwrap();
        if !r.pass {
            failed.push(i + 1);
        }
    }
    writeln!(err, "acceptance suite took {:.1}s", start.elapsed().as_secs_f64()).unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
