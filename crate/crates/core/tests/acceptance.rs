//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::Instant;

use hcbridge::cli_harness::Suites;

/// Runtime targets in seconds; the shared theorem1 runs count towards 11.
const BUDGET: [(usize, f64); 2] = [(1, 60.0), (11, 300.0)];

fn main() {
    let suites = Suites::new();
    let mut failed = 0;
    for id in 1..=12 {
        let t = Instant::now();
        let o = suites.run(id);
        let mut secs = t.elapsed().as_secs_f64();
        if id == 11 {
            secs += suites.theorem_seconds();
        }
        let over = BUDGET.iter().find(|(i, _)| *i == id).filter(|(_, b)| secs > *b);
        let passed = o.passed && over.is_none();
        failed += usize::from(!passed);
        let budget = over.map(|(_, b)| format!(" (over the {b:.0}s target)")).unwrap_or_default();
        println!(
            "{} criterion {:>2} {}: {} exact checks in {secs:.1}s{budget}; {}",
            if passed { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.checks,
            o.detail
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
