use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use clausen_core::generating::GeneratingSlice;
use clausen_core::hierarchy::{build_tower, DOMAIN_MARGIN};
use clausen_core::phase::unwrap_phase;
use clausen_core::theta::theta1_normalized;
use clausen_core::verification::{run_suite, SUITE_NAMES};
use clausen_core::{Complex64, Interval, PathSpec, Seed, SuiteConfig, TauParameter, ThetaSettings};
use serde_json::{json, Map};

use crate::args::{
    Format, GeneratingArgs, GridArgs, OutputArgs, SeedArg, TauArgs, ThetaArgs, TowerArgs,
    VerifyArgs,
};
use crate::table::{Cell, Table};

pub const ENV_OUTPUT_DIR: &str = "CLAUSEN_OUTPUT_DIR";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(clausen_core::Error),
    Io(PathBuf, std::io::Error),
}

impl From<clausen_core::Error> for CliError {
    fn from(e: clausen_core::Error) -> Self {
        CliError::Numeric(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::Io(..) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Text to emit plus the process exit code.
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

struct Grid {
    lo: f64,
    hi: f64,
    points: usize,
}

impl Grid {
    fn values(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.hi
                } else {
                    self.lo + step * i as f64
                }
            })
            .collect()
    }
}

fn parse_grid(args: &GridArgs, default: (f64, f64, usize), upper: f64) -> Result<Grid> {
    let (lo, hi, points) = match &args.grid {
        None => default,
        Some(v) => {
            let p = v[2];
            if !(p.fract() == 0.0 && (2.0..=1e6).contains(&p)) {
                return Err(CliError::Usage(format!(
                    "grid points must be an integer >= 2, got {p}"
                )));
            }
            (v[0], v[1], p as usize)
        }
    };
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Usage(format!(
            "grid needs LO < HI, got {lo} and {hi}"
        )));
    }
    if lo < 0.0 || hi >= upper {
        return Err(CliError::Usage(format!(
            "grid must lie in [0, {upper}), got [{lo}, {hi}]"
        )));
    }
    Ok(Grid { lo, hi, points })
}

fn tau(args: &TauArgs) -> Result<TauParameter> {
    Ok(TauParameter::from_parts(args.tau_re, args.tau_im)?)
}

fn seed(kind: SeedArg, t: &TauArgs) -> Result<Seed> {
    Ok(match kind {
        SeedArg::Polylog => Seed::polylog(),
        SeedArg::Circular => Seed::circular(),
        SeedArg::Elliptic => Seed::elliptic(tau(t)?),
    })
}

/// Upper grid bound and default tower domain for a seed.
fn seed_range(seed: &Seed) -> (f64, Interval) {
    let limit = seed.first_zero() - DOMAIN_MARGIN;
    let upper = if seed.first_zero() == 1.0 {
        1.0
    } else {
        limit + f64::EPSILON * TAU
    };
    (upper, Interval::new(0.0, limit).expect("valid domain"))
}

fn tau_json(t: &TauParameter) -> serde_json::Value {
    json!({ "re": t.tau().re, "im": t.tau().im })
}

fn render(table: &Table, format: Format, extra: Map<String, serde_json::Value>) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(extra),
    }
}

pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(ENV_OUTPUT_DIR) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Writes `text` to the requested file, or returns it for standard output.
pub fn deliver(text: String, output: Option<&Path>) -> Result<String> {
    match output {
        None => Ok(text),
        Some(p) => {
            let target = resolve_output(p);
            std::fs::write(&target, text).map_err(|e| CliError::Io(target.clone(), e))?;
            Ok(String::new())
        }
    }
}

fn finish(text: String, out: &OutputArgs) -> Result<Outcome> {
    Ok(Outcome {
        text: deliver(text, out.output.as_deref())?,
        exit_code: 0,
    })
}

pub fn theta(args: &ThetaArgs) -> Result<Outcome> {
    let t = tau(&args.tau)?;
    let grid = parse_grid(&args.grid, (0.1, 0.9, 81), 1.0)?;
    let settings = ThetaSettings::default();
    let profile = unwrap_phase(&t, &PathSpec::real_segment(grid.lo, grid.hi)?)?;
    let mut table = Table::new(vec!["x", "re", "im", "abs", "arg_unwrapped"]);
    for x in grid.values() {
        let z = Complex64::new(x, 0.0);
        let v = theta1_normalized(z, &t, &settings)?;
        let arg = profile.arg_at((x - grid.lo) / (grid.hi - grid.lo), z)?;
        table.push(vec![
            Cell::Num(x),
            Cell::Num(v.re),
            Cell::Num(v.im),
            Cell::Num(v.norm()),
            Cell::Num(arg),
        ]);
    }
    let mut extra = Map::new();
    extra.insert("tau".into(), tau_json(&t));
    finish(render(&table, args.out.format, extra), &args.out)
}

pub fn phase(args: &ThetaArgs) -> Result<Outcome> {
    let t = tau(&args.tau)?;
    let grid = parse_grid(&args.grid, (0.1, 0.9, 81), 1.0)?;
    let path = PathSpec::real_segment(grid.lo, grid.hi)?.with_samples_hint(grid.points - 1)?;
    let profile = unwrap_phase(&t, &path)?;
    let mut table = Table::new(vec!["param", "x", "y", "unwrapped_arg"]);
    for s in profile.samples() {
        table.push(vec![
            Cell::Num(s.param),
            Cell::Num(s.position.re),
            Cell::Num(s.position.im),
            Cell::Num(s.unwrapped_arg),
        ]);
    }
    let mut extra = Map::new();
    extra.insert("tau".into(), tau_json(&t));
    extra.insert("max_step_phase".into(), json!(profile.max_step_phase()));
    extra.insert("refined".into(), json!(profile.refined()));
    finish(render(&table, args.out.format, extra), &args.out)
}

pub fn tower(args: &TowerArgs) -> Result<Outcome> {
    let s = seed(args.seed, &args.tau)?;
    let (upper, domain) = seed_range(&s);
    let default = if args.seed == SeedArg::Polylog {
        (0.3, 6.0, 58)
    } else {
        (0.1, 0.9, 81)
    };
    let grid = parse_grid(&args.grid, default, upper)?;
    let tower = build_tower(s, args.n.max(2), domain, args.resolution as usize)?;
    let mut table = Table::new(vec!["x", "n", "re", "im", "A", "B"]);
    for x in grid.values() {
        for n in 1..=args.n {
            let f = tower.eval(n, x)?;
            table.push(vec![
                Cell::Num(x),
                Cell::Int(n as i64),
                Cell::Num(f.re),
                Cell::Num(f.im),
                Cell::Num(2.0 * f.re),
                Cell::Num(-2.0 * f.im),
            ]);
        }
    }
    let mut extra = Map::new();
    extra.insert(
        "tower".into(),
        serde_json::to_value(&tower).expect("tower serializes"),
    );
    finish(render(&table, args.out.format, extra), &args.out)
}

pub fn generating(args: &GeneratingArgs) -> Result<Outcome> {
    let s = seed(args.seed, &args.tau)?;
    let (upper, domain) = seed_range(&s);
    let default = if args.seed == SeedArg::Polylog {
        (0.5, 5.5, 21)
    } else {
        (0.2, 0.8, 13)
    };
    let grid = parse_grid(&args.grid, default, upper)?;
    if !(args.h > 0.0 && args.h < 1e-2) {
        return Err(CliError::Usage(format!(
            "--h must lie in (0, 0.01), got {}",
            args.h
        )));
    }
    if grid.lo - args.h < 0.0 || grid.hi + args.h > domain.hi() {
        return Err(CliError::Usage(
            "grid plus the difference step must stay inside the tower domain".into(),
        ));
    }
    let lambdas = if args.lambda.is_empty() {
        vec![0.5]
    } else {
        args.lambda.clone()
    };
    if let Some(l) = lambdas.iter().find(|l| !l.is_finite()) {
        return Err(CliError::Usage(format!("lambda must be finite, got {l}")));
    }
    let tower = build_tower(s, args.n.max(2), domain, 16)?;
    let mut table = Table::new(vec![
        "w",
        "lambda",
        "n",
        "residual_re",
        "residual_im",
        "residual_abs",
    ]);
    for &l in &lambdas {
        let slice = GeneratingSlice::new(&tower, args.n, Complex64::new(l, 0.0))?;
        for w in grid.values() {
            let r = if args.uncorrected {
                slice.uncorrected_residual(w, args.h)?
            } else {
                slice.residual(w, args.h)?
            };
            table.push(vec![
                Cell::Num(w),
                Cell::Num(l),
                Cell::Int(args.n as i64),
                Cell::Num(r.re),
                Cell::Num(r.im),
                Cell::Num(r.norm()),
            ]);
        }
    }
    let mut extra = Map::new();
    extra.insert(
        "form".into(),
        json!(if args.uncorrected {
            "uncorrected"
        } else {
            "corrected"
        }),
    );
    finish(render(&table, args.out.format, extra), &args.out)
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let mut config = SuiteConfig::default();
    if let Some(seed) = args.rng_seed {
        config.rng_seed = seed;
    }
    let names: Vec<&str> = if args.suite == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![args.suite.as_str()]
    };
    let reports = names
        .iter()
        .map(|n| run_suite(n, &config))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let pass = reports.iter().all(|r| r.overall_pass);
    let mut text = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    }
    .expect("reports serialize");
    text.push('\n');
    Ok(Outcome {
        text: deliver(text, args.output.as_deref())?,
        exit_code: if pass { 0 } else { 1 },
    })
}
