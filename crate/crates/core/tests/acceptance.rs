//! Acceptance suite: runs criteria 1 to 10 and prints one PASS/FAIL line
//! per criterion. Set `BEI_CYCLE6=1` to add the 6-cycle to criterion 2.
//! Runs without the libtest harness so the lines are always shown.

use bei::corpus::DEFAULT_SEED;
use bei::graphs::FamilySpec;
use bei::verify::{run, Status, VerifyOptions, CRITERIA};

fn main() {
    let mut opts = VerifyOptions::acceptance(DEFAULT_SEED);
    if std::env::var_os("BEI_CYCLE6").is_some_and(|v| v == "1") {
        opts.members.push(FamilySpec::Cycle { n: 6 });
    }
    let report = run(&opts).expect("sweep inputs are valid");

    let mut failed = Vec::new();
    for &(c, name) in &CRITERIA {
        let status = report.criterion_status(c);
        let shown = match status {
            Some(Status::Pass) => "PASS",
            Some(Status::Skipped) => "FAIL (skipped: over budget)",
            Some(Status::Fail) => "FAIL",
            None => "FAIL (no checks ran)",
        };
        println!("criterion {c:>2}: {shown} - {name}");
        if status != Some(Status::Pass) {
            failed.push(c);
        }
    }
    if !failed.is_empty() {
        for check in report.checks.iter().filter(|k| k.status != Status::Pass) {
            println!("  {} [{}] {}: {}", check.status, check.criterion, check.subject, check.detail);
        }
        eprintln!("criteria {failed:?} did not pass");
        std::process::exit(1);
    }
}
