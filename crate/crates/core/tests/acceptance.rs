//! Runs every acceptance criterion at full size and prints one line each.

use std::process::ExitCode;

use superspin::checks::{check_all, MAX_CHECK_RANK};

fn main() -> ExitCode {
    let report = check_all(MAX_CHECK_RANK);
    for c in &report.criteria {
        println!(
            "criterion {:>2} {:<22} {}  ({:.2}s) {}",
            c.id,
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.seconds,
            c.detail
        );
    }
    if report.all_pass {
        println!("acceptance: all {} criteria pass", report.criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
