use std::time::Instant;

use clausen_core::verification::{run_all, run_suite, SUITE_NAMES};
use clausen_core::SuiteConfig;

#[test]
fn every_suite_passes_with_defaults() {
    for name in SUITE_NAMES {
        let start = Instant::now();
        let report = run_suite(name, &SuiteConfig::default()).unwrap();
        let elapsed = start.elapsed().as_secs_f64();
        for c in &report.checks {
            println!(
                "{name:>15} {:<48} {:>12.3e} {:?} {:.1e} {}",
                c.id,
                c.measured,
                c.relation,
                c.bound,
                if c.pass { "ok" } else { "FAIL" }
            );
        }
        assert!(report.overall_pass, "{}", report.to_json());
        assert!(elapsed < 60.0, "{name} took {elapsed:.1} s");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let cfg = SuiteConfig::default();
    for name in ["theta-cross", "phase"] {
        let a = run_suite(name, &cfg).unwrap().to_json();
        let b = run_suite(name, &cfg).unwrap().to_json();
        assert_eq!(a, b);
    }
}

#[test]
fn all_runs_suites_in_declared_order() {
    let cfg = SuiteConfig {
        theta_samples: 5,
        quasi_samples: 5,
        grid_points: 5,
        ..SuiteConfig::default()
    };
    let names: Vec<String> = run_all(&cfg)
        .unwrap()
        .into_iter()
        .map(|r| r.suite_name)
        .collect();
    assert_eq!(names, SUITE_NAMES);
}

#[test]
fn different_seeds_sample_different_points() {
    let a = run_suite("theta-cross", &SuiteConfig::default()).unwrap();
    let b = run_suite(
        "theta-cross",
        &SuiteConfig {
            rng_seed: 7,
            ..SuiteConfig::default()
        },
    )
    .unwrap();
    assert_ne!(a.to_json(), b.to_json());
    assert!(b.overall_pass);
}
