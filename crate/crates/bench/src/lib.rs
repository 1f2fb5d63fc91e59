//! Fixed inputs shared by the criterion benchmarks.

use clausen_core::{Complex64, Interval, Seed, TauParameter};

/// Moderate nome, Re τ ≠ 0 so every kernel works with complex values.
pub fn bench_tau() -> TauParameter {
    TauParameter::from_parts(0.3, 1.5).expect("valid tau")
}

/// Small-nome case where the series and product need the most terms.
pub fn small_tau() -> TauParameter {
    TauParameter::from_parts(0.1, 0.1).expect("valid tau")
}

pub fn bench_points() -> Vec<Complex64> {
    (1..=32)
        .map(|k| Complex64::new(k as f64 / 33.0, 0.1 * ((k % 5) as f64 - 2.0)))
        .collect()
}

pub fn unit_domain() -> Interval {
    Interval::new(0.0, 0.99).expect("valid interval")
}

pub fn seeds() -> [(&'static str, Seed); 3] {
    [
        ("polylog", Seed::polylog()),
        ("circular", Seed::circular()),
        ("elliptic", Seed::elliptic(bench_tau())),
    ]
}
