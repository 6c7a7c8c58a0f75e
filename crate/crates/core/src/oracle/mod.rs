//! Brute-force verification: class samplers, empirical suprema and the
//! pass/fail reports behind `verify`.

mod sampler;
mod suites;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::recovery::Sample;

pub use sampler::{rng_for, sample_at, sample_class, Class, SampleModel, SampleSpec};
pub use suites::{run_suite, verify, Suite, VerifyConfig, SUITES};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupReport {
    pub sup: f64,
    /// Index of the maximizing sample, `None` when there were no samples.
    pub argmax: Option<usize>,
}

/// Largest value of `functional` over `samples`; ties go to the lowest index.
pub fn empirical_sup<F>(samples: &[Sample], functional: F) -> Result<SupReport>
where
    F: Fn(&Sample) -> Result<f64> + Sync,
{
    let values: Vec<f64> = samples.par_iter().map(&functional).collect::<Result<_>>()?;
    let mut best = SupReport {
        sup: f64::NEG_INFINITY,
        argmax: None,
    };
    for (i, v) in values.into_iter().enumerate() {
        if v > best.sup {
            best = SupReport { sup: v, argmax: Some(i) };
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Samples stay below `target + tol`; the injected extremal reaches `target − tol`.
    Bound,
    /// Samples stay below `target + tol`, no extremal.
    Upper,
    /// `|empirical − target| ≤ tol`.
    Exact,
    /// `empirical > target`.
    Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub omega: String,
    pub kind: CheckKind,
    pub target: f64,
    pub tolerance: f64,
    pub empirical: f64,
    pub argmax: Option<usize>,
    pub injected: Option<f64>,
    /// Non-negative exactly when the check passes.
    pub margin: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        omega: impl Into<String>,
        kind: CheckKind,
        target: f64,
        tolerance: f64,
        empirical: SupReport,
        injected: Option<f64>,
    ) -> Check {
        let e = if empirical.argmax.is_some() {
            empirical.sup
        } else {
            f64::NEG_INFINITY
        };
        let margin = match kind {
            CheckKind::Bound | CheckKind::Upper => {
                let top = injected.map_or(e, |v| v.max(e));
                let sound = target + tolerance - top;
                match (kind, injected) {
                    (CheckKind::Bound, Some(v)) => sound.min(v - (target - tolerance)),
                    (CheckKind::Bound, None) => f64::NEG_INFINITY,
                    _ => sound,
                }
            }
            CheckKind::Exact => tolerance - (e - target).abs(),
            CheckKind::Witness => e - target,
        };
        let pass = match kind {
            CheckKind::Witness => margin > 0.0,
            _ => margin >= 0.0,
        };
        Check {
            name: name.into(),
            omega: omega.into(),
            kind,
            target,
            tolerance,
            empirical: if e.is_finite() { e } else { 0.0 },
            argmax: empirical.argmax,
            injected,
            margin,
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub grid: usize,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}
