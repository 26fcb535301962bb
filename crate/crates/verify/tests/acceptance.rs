//! Acceptance suite: one line per criterion, exit status non-zero when any
//! criterion fails. All comparisons are exact (rational arithmetic and
//! equality of interned objects); the only numeric tolerance is the
//! 60-second budget per suite.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use tiltstab::verify::{criterion, Suite, DEFAULT_SEED};

const SUITE_BUDGET: Duration = Duration::from_secs(60);

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for suite in [Suite::P1, Suite::Kronecker, Suite::Core] {
        let start = Instant::now();
        for &n in suite.criteria() {
            let entries = criterion(n, DEFAULT_SEED);
            let passed = entries.iter().all(|e| e.passed);
            println!("{} criterion {n} (tolerance: exact)", if passed { "PASS" } else { "FAIL" });
            for e in &entries {
                println!("    {} {}: {}", if e.passed { "ok  " } else { "FAIL" }, e.name, e.detail);
            }
            if !passed {
                failed.push(n);
            }
        }
        let elapsed = start.elapsed();
        let in_budget = elapsed < SUITE_BUDGET;
        println!(
            "{} suite {suite:?} finished in {:.2}s (budget {}s)",
            if in_budget { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            SUITE_BUDGET.as_secs()
        );
        if !in_budget {
            failed.push(0);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
