//! Command-line surface: bound calculators, extremal emitters, recovery
//! experiments, verification suites and convergence tables.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::gridfn::{GridFunction, DEFAULT_GRID};
use crate::kscore::{general_bound, glue_extremal, ks_bound, ks_extremal, weight_decomposition, StepWeight};
use crate::landau::{
    delta_recovery_value, extremal_sup_norm, landau_constant, landau_extremal, operator_norm,
    stechkin_lower_certificate, stechkin_value, StechkinTarget, Variant, Window,
};
use crate::lspace::Element;
use crate::modulus::Modulus;
use crate::oracle::{sample_class, verify, Class, Suite, SampleSpec, VerifyConfig};
use crate::ostrowski::{
    point_vs_mean_bound, point_vs_mean_extremal, symmetric_bound, symmetrized_pair_bound, symmetrized_pair_extremal,
    two_interval_bound, two_interval_extremal, TwoIntervalConfig,
};
use crate::recovery::{
    derivative_extremal, lower_extremal_integral, lower_extremal_mean, omega_spline, optimal_knots, Partition,
    Problem,
};

/// Exit code for malformed input.
pub const EXIT_PARSE: i32 = 1;
/// Exit code for a violated hypothesis of the requested operation.
pub const EXIT_PRECONDITION: i32 = 2;
/// Exit code when `verify` finds a failing check.
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ksr", version, about = "Sharp Korneichuk-Stechkin, Ostrowski and Landau bounds with brute-force oracles")]
struct Cli {
    /// Plain-text key=value file with defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// Modulus of continuity, e.g. `power:K=1,alpha=0.5`.
    #[arg(long, global = true)]
    omega: Option<String>,
    /// Grid intervals.
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form sharp bounds.
    Bound {
        #[command(subcommand)]
        kind: BoundKind,
        #[command(flatten)]
        common: Common,
    },
    /// Extremal functions as CSV.
    Extremal {
        #[command(subcommand)]
        kind: BoundKind,
        #[command(flatten)]
        common: Common,
        /// Output file, stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimal recovery value, lower bound and empirical worst case.
    Recover {
        problem: String,
        #[command(flatten)]
        p: RecoverArgs,
        #[command(flatten)]
        common: Common,
        /// Writes the lower-bound extremal here.
        #[arg(long)]
        extremal_csv: Option<PathBuf>,
    },
    /// Landau type inequality constant and its extremal.
    Landau {
        #[arg(long)]
        variant: Option<String>,
        #[command(flatten)]
        w: WindowArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        extremal_csv: Option<PathBuf>,
    },
    /// Best approximation of the derivative or a divided difference by bounded operators.
    Stechkin {
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        w: WindowArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Optimal recovery of the derivative at a point from inexact values.
    DeltaRecover {
        #[command(flatten)]
        w: WindowArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Oracle suites; JSON report with per-check margins.
    Verify {
        /// `all` or a comma separated list.
        #[arg(long)]
        suite: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Convergence table `param,theoretical,empirical,gap` for a recovery problem.
    Sweep {
        problem: String,
        /// `n` or `grid`.
        #[arg(long)]
        over: Option<String>,
        /// Comma separated sweep values; empty for an empty table.
        #[arg(long)]
        values: Option<String>,
        #[command(flatten)]
        p: RecoverArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum BoundKind {
    /// Two disjoint step weights: `--psi1 a,b;lo,hi,w;... --psi2 ...`.
    Ks(WeightArgs),
    /// Arbitrary step weights of equal mass.
    General(WeightArgs),
    /// Means over `[a,b]` and `[c,d]`.
    Ostrowski(SegmentArgs),
    /// Means over `[a,b]` and a concentric `[c,d]`.
    Symmetric(SegmentArgs),
    /// `f(t)` against the mean over `[c,d]`.
    PointMean(PointArgs),
    /// `(f(t) + f(a+b−t))/2` against the mean over `[a,b]`.
    Pair(PointArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct WeightArgs {
    #[arg(long)]
    psi1: Option<String>,
    #[arg(long)]
    psi2: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
struct SegmentArgs {
    #[arg(long)]
    ab: Option<String>,
    #[arg(long)]
    cd: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
struct PointArgs {
    #[arg(long)]
    t: Option<f64>,
    /// Domain `[a,b]`.
    #[arg(long)]
    ab: Option<String>,
    /// Mean segment for point-mean, `[a,b]` when absent.
    #[arg(long)]
    cd: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
struct RecoverArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    ab: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
struct WindowArgs {
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    ab: Option<String>,
}

/// Flag values layered over the config file.
struct Params {
    config: BTreeMap<String, String>,
}

impl Params {
    fn load(path: Option<&Path>) -> Result<Params> {
        let mut config = BTreeMap::new();
        if let Some(p) = path {
            let text = std::fs::read_to_string(p)?;
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", i + 1)))?;
                let v = v.trim().trim_matches('"');
                config.insert(k.trim().replace('_', "-"), v.to_string());
            }
        }
        Ok(Params { config })
    }

    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.config.get(key) {
            None => Ok(None),
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|_| Error::Parse(format!("bad value '{s}' for {key}"))),
        }
    }

    fn need<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T> {
        self.get(flag, key)?
            .ok_or_else(|| Error::Parse(format!("missing --{key}")))
    }

    fn or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        Ok(self.get(flag, key)?.unwrap_or(default))
    }

    fn omega(&self, c: &Common) -> Result<Modulus> {
        self.or(c.omega.clone(), "omega", "power:K=1,alpha=1".to_string())?
            .parse()
    }

    fn grid(&self, c: &Common) -> Result<usize> {
        let n = self.or(c.grid, "grid", DEFAULT_GRID)?;
        if n < 2 {
            return Err(Error::Parse("--grid must be at least 2".into()));
        }
        Ok(n)
    }

    fn pair(&self, flag: Option<String>, key: &str, default: Option<(f64, f64)>) -> Result<(f64, f64)> {
        match self.get(flag, key)? {
            Some(s) => parse_pair(&s),
            None => default.ok_or_else(|| Error::Parse(format!("missing --{key}"))),
        }
    }
}

fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().map_err(|_| Error::Parse(format!("bad number '{x}'")));
    match parts.as_slice() {
        [a, b] => Ok((num(a)?, num(b)?)),
        _ => Err(Error::Parse(format!("expected 'a,b', got '{s}'"))),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn write_csv_to(f: &GridFunction, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => f.write_csv(BufWriter::new(File::create(p)?)),
        None => f.write_csv(out),
    }
}

fn weights(p: &Params, w: &WeightArgs) -> Result<(StepWeight, StepWeight)> {
    let psi1: StepWeight = p.need::<String>(w.psi1.clone(), "psi1")?.parse()?;
    let psi2: StepWeight = p.need::<String>(w.psi2.clone(), "psi2")?.parse()?;
    Ok((psi1, psi2))
}

fn bound(p: &Params, kind: &BoundKind, omega: &Modulus) -> Result<serde_json::Value> {
    Ok(match kind {
        BoundKind::Ks(w) => {
            let (a, b) = weights(p, w)?;
            json!({"bound": ks_bound(&a, &b, omega)?})
        }
        BoundKind::General(w) => {
            let (a, b) = weights(p, w)?;
            let sharp = omega.is_concave() && glue_extremal(&weight_decomposition(&a, &b)?, omega, 64).is_ok();
            json!({"bound": general_bound(&a, &b, omega)?, "sharp": sharp})
        }
        BoundKind::Ostrowski(s) => {
            let cfg = TwoIntervalConfig::new(p.pair(s.ab.clone(), "ab", None)?, p.pair(s.cd.clone(), "cd", None)?)?;
            json!({"case": cfg.case, "bound": two_interval_bound(&cfg, omega)})
        }
        BoundKind::Symmetric(s) => {
            let (a, b) = p.pair(s.ab.clone(), "ab", None)?;
            let (c, d) = p.pair(s.cd.clone(), "cd", None)?;
            json!({"bound": symmetric_bound(a, b, c, d, omega)?})
        }
        BoundKind::PointMean(s) => {
            let t = p.need(s.t, "t")?;
            let ab = p.pair(s.ab.clone(), "ab", Some((0.0, 1.0)))?;
            let (c, d) = p.pair(s.cd.clone(), "cd", Some(ab))?;
            json!({"bound": point_vs_mean_bound(t, c, d, omega)?})
        }
        BoundKind::Pair(s) => {
            let t = p.need(s.t, "t")?;
            let (a, b) = p.pair(s.ab.clone(), "ab", Some((0.0, 1.0)))?;
            json!({"bound": symmetrized_pair_bound(t, a, b, omega)?})
        }
    })
}

fn extremal(p: &Params, kind: &BoundKind, omega: &Modulus, n: usize) -> Result<GridFunction> {
    match kind {
        BoundKind::Ks(w) => {
            let (a, b) = weights(p, w)?;
            ks_extremal(&a, &b, omega, n)
        }
        BoundKind::General(w) => {
            let (a, b) = weights(p, w)?;
            glue_extremal(&weight_decomposition(&a, &b)?, omega, n)
        }
        BoundKind::Ostrowski(s) | BoundKind::Symmetric(s) => {
            let cfg = TwoIntervalConfig::new(p.pair(s.ab.clone(), "ab", None)?, p.pair(s.cd.clone(), "cd", None)?)?;
            two_interval_extremal(&cfg, omega, n)
        }
        BoundKind::PointMean(s) => {
            let t = p.need(s.t, "t")?;
            let (a, b) = p.pair(s.ab.clone(), "ab", Some((0.0, 1.0)))?;
            point_vs_mean_extremal(t, a, b, omega, n)
        }
        BoundKind::Pair(s) => {
            let t = p.need(s.t, "t")?;
            let (a, b) = p.pair(s.ab.clone(), "ab", Some((0.0, 1.0)))?;
            symmetrized_pair_extremal(t, a, b, omega, n)
        }
    }
}

fn problem(name: &str, p: &Params, r: &RecoverArgs, n_override: Option<usize>) -> Result<Problem> {
    let n = match n_override {
        Some(n) => n,
        None => p.need(r.n, "n")?,
    };
    match name {
        "convexify" => Ok(Problem::Convexify { n, h: p.need(r.h, "h")? }),
        "integral" => Ok(Problem::Integral { n, h: p.need(r.h, "h")? }),
        "identity" => Ok(Problem::Identity { n }),
        "derivative" => Ok(Problem::Derivative { n }),
        _ => Err(Error::Parse(format!(
            "unknown problem '{name}', expected convexify, integral, identity or derivative"
        ))),
    }
}

struct Experiment {
    omega: Modulus,
    a: f64,
    b: f64,
    grid: usize,
    trials: usize,
    seed: u64,
}

fn recovery_report(pr: Problem, e: &Experiment) -> Result<crate::recovery::RecoveryReport> {
    let class = if pr.needs_derivative() {
        Class::W1Homega
    } else {
        Class::Homega
    };
    let samples = sample_class(&SampleSpec::new(class, &e.omega, e.a, e.b, e.grid, e.trials, e.seed))?;
    pr.report(&e.omega, e.a, e.b, e.grid, &Element::singleton(1.0), &samples)
}

fn recovery_extremal(pr: Problem, e: &Experiment) -> Result<GridFunction> {
    let (a, b) = (e.a, e.b);
    match pr {
        Problem::Convexify { n, h } => lower_extremal_mean(&optimal_knots(n, a, b)?.0, h, a, b, &e.omega, e.grid),
        Problem::Integral { n, h } => lower_extremal_integral(&optimal_knots(n, a, b)?.0, h, a, b, &e.omega, e.grid),
        Problem::Identity { n } => omega_spline(&Partition::uniform(n, a, b)?, &e.omega)?.sample(e.grid),
        Problem::Derivative { n } => Ok(derivative_extremal(n, &e.omega, a, b, e.grid)?.0),
    }
}

fn window(p: &Params, w: &WindowArgs, default_gamma: f64) -> Result<(Window, f64, f64)> {
    let (a, b) = p.pair(w.ab.clone(), "ab", Some((0.0, 1.0)))?;
    let t = p.or(w.t, "t", 0.5 * (a + b))?;
    let h = p.need(w.h, "h")?;
    let gamma = p.or(w.gamma, "gamma", default_gamma)?;
    Ok((Window::clamped(t, gamma, h, a, b)?, a, b))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let p = Params::load(cli.config.as_deref())?;
    match cli.command {
        Command::Bound { kind, common } => {
            let omega = p.omega(&common)?;
            out.write_all(to_json(&bound(&p, &kind, &omega)?)?.as_bytes())?;
        }
        Command::Extremal { kind, common, out: path } => {
            let omega = p.omega(&common)?;
            let f = extremal(&p, &kind, &omega, p.grid(&common)?)?;
            let path = p.get(path, "out")?;
            write_csv_to(&f, path.as_deref(), out)?;
        }
        Command::Recover {
            problem: name,
            p: r,
            common,
            extremal_csv,
        } => {
            let pr = problem(&name, &p, &r, None)?;
            let (a, b) = p.pair(r.ab.clone(), "ab", Some((0.0, 1.0)))?;
            let e = Experiment {
                omega: p.omega(&common)?,
                a,
                b,
                grid: p.grid(&common)?,
                trials: p.or(common.trials, "trials", 1000)?,
                seed: p.or(common.seed, "seed", 7)?,
            };
            let report = recovery_report(pr, &e)?;
            let mut v = serde_json::to_value(&report)?;
            if let Some(path) = p.get(extremal_csv, "extremal-csv")? {
                write_csv_to(&recovery_extremal(pr, &e)?, Some(&path), out)?;
                v["extremal_csv"] = json!(path.display().to_string());
            }
            out.write_all(to_json(&v)?.as_bytes())?;
        }
        Command::Landau {
            variant,
            w,
            common,
            extremal_csv,
        } => {
            let variant: Variant = p.or(variant, "variant", "e".to_string())?.parse()?;
            let omega = p.omega(&common)?;
            let (win, a, b) = window(&p, &w, 0.0)?;
            let value = landau_constant(variant, &win, &omega)?;
            let mut v = json!({"variant": variant, "window": win, "value": value});
            if variant == Variant::E {
                v["extremal_sup_norm"] = json!(extremal_sup_norm(&win, &omega));
            }
            if let Some(path) = p.get(extremal_csv, "extremal-csv")? {
                let e = landau_extremal(variant, &win, &omega, a, b, p.grid(&common)?)?;
                write_csv_to(&e.f, Some(&path), out)?;
                v["extremal_csv"] = json!(path.display().to_string());
            }
            out.write_all(to_json(&v)?.as_bytes())?;
        }
        Command::Stechkin { target, w, common } => {
            let target: StechkinTarget = p.or(target, "target", "derivative".to_string())?.parse()?;
            let omega = p.omega(&common)?;
            let (win, a, b) = window(&p, &w, 0.0)?;
            let value = stechkin_value(target, &win, &omega)?;
            let cert = stechkin_lower_certificate(target, &win, &omega, a, b, p.grid(&common)?)?;
            let v = json!({
                "target": target,
                "window": win,
                "value": value,
                "operator_norm": operator_norm(&win),
                "lower_certificate": cert,
            });
            out.write_all(to_json(&v)?.as_bytes())?;
        }
        Command::DeltaRecover { w, common } => {
            let omega = p.omega(&common)?;
            let (a, b) = p.pair(w.ab.clone(), "ab", Some((0.0, 1.0)))?;
            let t = p.or(w.t, "t", 0.5 * (a + b))?;
            let r = delta_recovery_value(t, p.need(w.h, "h")?, &omega, a, b)?;
            out.write_all(to_json(&r)?.as_bytes())?;
        }
        Command::Verify { suite, common } => {
            let suites = Suite::parse_list(&p.or(suite, "suite", "all".to_string())?)?;
            let cfg = VerifyConfig {
                trials: p.or(common.trials, "trials", 1000)?,
                grid: p.grid(&common)?,
                seed: p.or(common.seed, "seed", 7)?,
            };
            let report = verify(&suites, cfg)?;
            out.write_all(to_json(&report)?.as_bytes())?;
            if !report.pass {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Sweep {
            problem: name,
            over,
            values,
            p: r,
            common,
        } => {
            let over = p.or(over, "over", "n".to_string())?;
            if over != "n" && over != "grid" {
                return Err(Error::Parse(format!("--over must be n or grid, got '{over}'")));
            }
            let values: Vec<usize> = p
                .or(values, "values", String::new())?
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad sweep value '{s}'"))))
                .collect::<Result<_>>()?;
            if values.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::Parse("sweep values must increase".into()));
            }
            let (a, b) = p.pair(r.ab.clone(), "ab", Some((0.0, 1.0)))?;
            let mut csv = csv::Writer::from_writer(Vec::new());
            csv.write_record(["param", "theoretical", "empirical", "gap"])?;
            for v in values {
                let (pr, grid) = if over == "n" {
                    (problem(&name, &p, &r, Some(v))?, p.grid(&common)?)
                } else {
                    (problem(&name, &p, &r, None)?, v)
                };
                let e = Experiment {
                    omega: p.omega(&common)?,
                    a,
                    b,
                    grid,
                    trials: p.or(common.trials, "trials", 200)?,
                    seed: p.or(common.seed, "seed", 7)?,
                };
                let rep = recovery_report(pr, &e)?;
                csv.write_record([
                    v.to_string(),
                    rep.theoretical.to_string(),
                    rep.empirical_upper.to_string(),
                    (rep.theoretical - rep.empirical_upper).to_string(),
                ])?;
            }
            let bytes = csv.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            out.write_all(&bytes)?;
        }
    }
    Ok(0)
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_precondition() {
                EXIT_PRECONDITION
            } else {
                EXIT_PARSE
            }
        }
    }
}

/// Sizes the global worker pool from `KSR_THREADS` when it is set.
pub fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("KSR_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| Error::Parse(format!("KSR_THREADS must be a positive integer, got '{v}'")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("ksr").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ostrowski_bound_json() {
        let (code, out, _) = call(&["bound", "ostrowski", "--ab", "0,1", "--cd", "0.25,0.75", "--omega", "power:K=1,alpha=1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["case"], "Nested");
        assert!((v["bound"].as_f64().unwrap() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["bound", "ostrowski", "--ab", "0,x", "--cd", "0,1"]).0, EXIT_PARSE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_PARSE);
        let (code, _, err) = call(&["bound", "pair", "--t", "0.9"]);
        assert_eq!(code, EXIT_PRECONDITION);
        assert!(err.contains("error:"));
        let psi = ["--psi1", "0,1;0,0.25,1", "--psi2", "0,1;0.75,1,1", "--omega", "pl:0,0;1,1;2,1.2;3,2"];
        let (code, _, err) = call(&[&["extremal", "ks"][..], &psi[..]].concat());
        assert_eq!(code, EXIT_PRECONDITION);
        assert!(err.contains("not concave"));
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn empty_sweep_is_header_only() {
        let (code, out, _) = call(&["sweep", "integral", "--values", "", "--h", "0.01"]);
        assert_eq!(code, 0);
        assert_eq!(out, "param,theoretical,empirical,gap\n");
    }

    #[test]
    fn config_file_is_overridden_by_flags() {
        let dir = std::env::temp_dir().join(format!("ksr-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let cfg = dir.join("run.cfg");
        std::fs::write(&cfg, "# defaults\nomega = \"power:K=1,alpha=1\"\nt = 0.5\nh = 0.1\n").unwrap();
        let c = cfg.to_str().unwrap();
        let (code, out, _) = call(&["delta-recover", "--config", c]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["delta"].as_f64().unwrap() - 0.005).abs() < 1e-15);
        let (_, out, _) = call(&["delta-recover", "--config", c, "--h", "0.2"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["value"].as_f64().unwrap() - 0.2).abs() < 1e-15);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn landau_and_stechkin_values() {
        let (_, out, _) = call(&["landau", "--variant", "e", "--t", "0.5", "--h", "0.3"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["extremal_sup_norm"].as_f64().unwrap() - 0.045).abs() < 1e-15);
        let (_, out, _) = call(&["stechkin", "--target", "derivative", "--h", "0.2", "--grid", "1000"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["value"].as_f64().unwrap() - 0.1).abs() < 1e-15);
    }
}
