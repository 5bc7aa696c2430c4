//! Runs every acceptance criterion and prints one PASS/FAIL line for each.
//! Exits nonzero if any criterion fails or overruns its time limit.

use foldlab_core::acceptance::{run_criterion, CRITERIA};
use foldlab_core::invariants::DEFAULT_SEED;
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut failed = vec![];
    for (id, _, _) in CRITERIA {
        let r = run_criterion(id, DEFAULT_SEED).expect("criterion ids are valid");
        let ok = r.pass && r.seconds <= r.limit_seconds as f64;
        println!("{} criterion {:>2}: {} ({:.2}s, limit {}s)", if ok { "PASS" } else { "FAIL" }, r.id, r.title, r.seconds, r.limit_seconds);
        if !ok {
            println!("    {}", r.detail);
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
