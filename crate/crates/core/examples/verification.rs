//! Runs every built-in verification suite at a small size.
use dwcalc::verify::{render_table, run, Suite, VerifyConfig};

fn main() {
    let cfg = VerifyConfig {
        max_order: 4,
        seifert_cases: 20,
        branch_cases: 10,
        ..VerifyConfig::default()
    };
    let reports = run(&Suite::ALL, &cfg);
    print!("{}", render_table(&reports));
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite.name()).collect();
    println!("failed suites: {failed:?}");
}
