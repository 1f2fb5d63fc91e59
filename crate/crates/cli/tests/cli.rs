use std::f64::consts::{PI, TAU};
use std::path::Path;
use std::process::{Command, Output};

use clausen_core::circular::polylog_fourier;

fn clausen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clausen"))
        .args(args)
        .env_remove("CLAUSEN_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = clausen(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

fn assert_matches_golden(text: &str, golden: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(golden);
    let expected = std::fs::read_to_string(&path).unwrap();
    let (h1, r1) = parse_csv(text);
    let (h2, r2) = parse_csv(&expected);
    assert_eq!(h1, h2, "{golden}: header");
    assert_eq!(r1.len(), r2.len(), "{golden}: row count");
    for (a, b) in r1.iter().zip(&r2) {
        for (x, y) in a.iter().zip(b) {
            assert!(
                (x - y).abs() <= 1e-12 * (1.0 + y.abs()),
                "{golden}: {x} vs {y}"
            );
        }
    }
}

#[test]
fn theta_table_matches_golden_and_reference_values() {
    let text = stdout(&[
        "theta", "--tau-re", "0.3", "--tau-im", "1.5", "--grid", "0.1", "0.9", "9",
    ]);
    assert_matches_golden(&text, "theta_tau_0.3_1.5.csv");
    // θ₁(πx, q)/(π θ₁′(0, q)) at 30 digits, q = e^{iπτ}
    let reference = [
        (0.1, 0.098362226777298041944, 2.883164892319961825e-6),
        (0.5, 0.3182781146237277493, 0.000097706258371192501485),
        (0.9, 0.098362226777298015547, 2.8831648923199595038e-6),
    ];
    let (_, rows) = parse_csv(&text);
    for (x, re, im) in reference {
        let row = rows.iter().find(|r| (r[0] - x).abs() < 1e-12).unwrap();
        assert!(
            (row[1] - re).abs() < 1e-14 && (row[2] - im).abs() < 1e-14,
            "x = {x}"
        );
        assert!((row[4] - im.atan2(re)).abs() < 1e-12);
    }
}

#[test]
fn tower_tables_match_goldens() {
    let elliptic = stdout(&[
        "tower", "--seed", "elliptic", "--tau-re", "0.3", "--tau-im", "1.5", "--n", "3", "--grid",
        "0.1", "0.9", "5",
    ]);
    assert_matches_golden(&elliptic, "tower_elliptic_n3.csv");
    let polylog = stdout(&[
        "tower", "--seed", "polylog", "--n", "3", "--grid", "0.5", "6.0", "6",
    ]);
    assert_matches_golden(&polylog, "tower_polylog_n3.csv");
    let circular = stdout(&[
        "tower", "--seed", "circular", "--n", "2", "--grid", "0.05", "0.95", "7",
    ]);
    assert_matches_golden(&circular, "tower_circular_n2.csv");
}

#[test]
fn circular_tower_against_closed_forms() {
    let text = stdout(&[
        "tower", "--seed", "circular", "--n", "2", "--grid", "0.05", "0.95", "7",
    ]);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["x", "n", "re", "im", "A", "B"]);
    for row in rows {
        let x = row[0];
        let want = match row[1] as u32 {
            1 => (2.0 * (PI * x).sin()).ln(),
            _ => -polylog_fourier(2, TAU * x, 1e-14).unwrap().im / TAU,
        };
        assert!((row[2] - want).abs() < 1e-9, "x = {x}, n = {}", row[1]);
        assert!(row[3].abs() < 1e-12);
        assert_eq!(row[4], 2.0 * row[2]);
    }
}

#[test]
fn tower_json_embeds_the_tower() {
    let text = stdout(&[
        "tower", "--n", "2", "--grid", "0.2", "0.8", "3", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    assert_eq!(v["tower"]["seed"]["kind"], "elliptic");
    assert_eq!(v["tower"]["max_order"], 2);
}

#[test]
fn generating_residuals() {
    let text = stdout(&[
        "generating",
        "--seed",
        "elliptic",
        "--n",
        "5",
        "--lambda",
        "-1",
        "--lambda",
        "1",
    ]);
    let (header, rows) = parse_csv(&text);
    assert_eq!(
        header,
        [
            "w",
            "lambda",
            "n",
            "residual_re",
            "residual_im",
            "residual_abs"
        ]
    );
    assert_eq!(rows.len(), 26);
    assert!(rows.iter().all(|r| r[5] <= 1e-6));
    let bare = stdout(&["generating", "--uncorrected", "--lambda", "0.5"]);
    let (_, rows) = parse_csv(&bare);
    assert!(rows.iter().any(|r| r[5] >= 0.1));
}

#[test]
fn phase_profile_is_monotone_in_parameter() {
    let text = stdout(&[
        "phase", "--tau-re", "0.3", "--tau-im", "1.5", "--grid", "0.1", "0.9", "9",
    ]);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["param", "x", "y", "unwrapped_arg"]);
    assert!(rows.len() >= 9);
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows.last().unwrap()[0], 1.0);
}

#[test]
fn exit_codes() {
    let low = clausen(&["theta", "--tau-im", "0.01"]);
    assert_eq!(low.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&low.stderr).contains("tau_min"));
    for args in [
        &["theta", "--grid", "0.9", "0.1", "5"][..],
        &["theta", "--grid", "0.1", "0.9", "1"],
        &["theta", "--grid", "0.1", "1.5", "5"],
        &["tower", "--n", "0"],
        &["verify", "--suite", "nonsense"],
        &["frobnicate"],
    ] {
        assert_eq!(clausen(args).status.code(), Some(2), "{args:?}");
    }
    let near_zero = clausen(&["theta", "--grid", "0.0", "0.5", "5"]);
    assert_eq!(near_zero.status.code(), Some(3));
}

#[test]
fn verify_reports() {
    let text = stdout(&["verify", "--suite", "boundary"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["suite_name"], "boundary");
    assert_eq!(v["overall_pass"], true);
    let all = stdout(&["verify"]);
    let v: serde_json::Value = serde_json::from_str(&all).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["suite_name"].as_str().unwrap())
        .collect();
    assert_eq!(names, clausen_core::verification::SUITE_NAMES);
    let other = stdout(&["verify", "--suite", "theta-cross", "--rng-seed", "7"]);
    assert_ne!(other, stdout(&["verify", "--suite", "theta-cross"]));
}

#[test]
fn output_directory_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_clausen"))
        .args([
            "theta",
            "--grid",
            "0.1",
            "0.9",
            "3",
            "--output",
            "table.csv",
        ])
        .env("CLAUSEN_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("table.csv")).unwrap();
    assert_eq!(written, stdout(&["theta", "--grid", "0.1", "0.9", "3"]));

    let absolute = dir.path().join("abs.json");
    let out = clausen(&[
        "verify",
        "--suite",
        "theta-cross",
        "--output",
        absolute.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&absolute)
        .unwrap()
        .contains("theta-cross"));

    let missing = dir.path().join("no/such/dir/x.csv");
    let out = clausen(&["theta", "--output", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn uncorrected_flag_alias() {
    let args = ["generating", "--grid", "0.2", "0.8", "3"];
    let a = stdout(&[&args[..], &["--uncorrected"]].concat());
    let b = stdout(&[&args[..], &["--paper-form"]].concat());
    assert_eq!(a, b);
}
