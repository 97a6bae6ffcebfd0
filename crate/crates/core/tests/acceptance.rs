//! Acceptance suite: one pass/fail line per criterion, with runtime checked
//! against the pinned budget. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use bsn_core::acceptance::{self, CriterionResult, BUDGET_SECS};

fn timed(id: usize, f: impl FnOnce() -> CriterionResult) -> CriterionResult {
    let start = Instant::now();
    let mut r = f();
    let secs = start.elapsed().as_secs_f64();
    let budget = BUDGET_SECS[id - 1];
    if secs > budget {
        r.passed = false;
        r.detail = format!("{}; runtime {secs:.2} s exceeds {budget} s", r.detail);
    }
    println!("{}  ({secs:.2} s, budget {budget} s)", r.line());
    r
}

fn main() -> ExitCode {
    let checks: [fn() -> CriterionResult; 8] = [
        acceptance::criterion_1,
        acceptance::criterion_2,
        acceptance::criterion_3,
        acceptance::criterion_4,
        acceptance::criterion_5,
        acceptance::criterion_6,
        acceptance::criterion_7,
        acceptance::criterion_8,
    ];
    let mut results: Vec<CriterionResult> = checks
        .iter()
        .enumerate()
        .map(|(i, f)| timed(i + 1, f))
        .collect();
    let first = results.clone();
    results.push(timed(9, || acceptance::criterion_9(&first)));
    let passed = results.iter().filter(|r| r.passed).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
