//! The acceptance gate: one numbered check per criterion, each printed as a
//! pass/fail line. All tolerances are exact equality; run with
//! `cargo test -p daw-core --test acceptance -- --nocapture` to see the lines.

use daw_core::diagram::Flavor;
use daw_core::suites::{self, CheckResult, SuiteConfig};
use std::time::Instant;

fn report(criterion: &str, checks: &[CheckResult], started: Instant) -> bool {
    let pass = checks.iter().all(|c| c.pass);
    let status = if pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion}: {status} ({} checks, {:.1}s)",
        checks.len(),
        started.elapsed().as_secs_f64()
    );
    for c in checks.iter().filter(|c| !c.pass) {
        println!("    {}: {}", c.id, c.details);
    }
    pass
}

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let mut all = true;

    let t = Instant::now();
    let mut checks = Vec::new();
    for f in Flavor::ALL {
        checks.extend(suites::dimension_counts(f).unwrap());
    }
    all &= report("1 (dimension counts)", &checks, t);

    let t = Instant::now();
    let mut checks = Vec::new();
    for f in Flavor::ALL {
        checks.extend(suites::associativity(f, &cfg).unwrap());
    }
    all &= report("2 (associativity)", &checks, t);

    let t = Instant::now();
    let checks = suites::idempotent_ideal_lemmas().unwrap();
    all &= report("3 (idempotent and ideal lemmas)", &checks, t);

    let t = Instant::now();
    let checks = suites::fp_scaling().unwrap();
    all &= report("4 (mirror-diagram scaling)", &checks, t);

    let t = Instant::now();
    let checks = suites::tor_engine_oracle(&cfg).unwrap();
    all &= report("5 (Tor engine oracle)", &checks, t);

    let t = Instant::now();
    let checks = suites::rook_homology_theorem(&cfg).unwrap();
    all &= report("6 (rook homology)", &checks, t);

    let t = Instant::now();
    let checks = suites::brauer_homology_theorem(&cfg).unwrap();
    all &= report("7 (Brauer homology)", &checks, t);

    let t = Instant::now();
    let checks = suites::tl_homology_theorem(&cfg).unwrap();
    all &= report("8 (Temperley-Lieb homology)", &checks, t);

    let t = Instant::now();
    let checks = suites::rookbrauer_homology_theorem(&cfg).unwrap();
    all &= report("9 (rook-Brauer homology)", &checks, t);

    let t = Instant::now();
    let checks = suites::motzkin_homology_theorem(&cfg).unwrap();
    all &= report("10 (Motzkin homology)", &checks, t);

    let t = Instant::now();
    let checks = suites::sroka_suite(&cfg).unwrap();
    all &= report("11 (non-invertible parameters)", &checks, t);

    let t = Instant::now();
    let checks = suites::braid_suite(&cfg).unwrap();
    all &= report("12 (braided suite)", &checks, t);

    let t = Instant::now();
    let checks = suites::stability_suite(&cfg).unwrap();
    all &= report("13 (stability spot-check)", &checks, t);

    assert!(all, "acceptance criteria failed; see lines above");
}
