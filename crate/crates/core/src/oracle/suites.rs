use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gridfn::{grid_tolerance, GridFunction};
use crate::kscore::{
    functional, general_bound, glue_extremal, ks_bound, ks_extremal, weight_decomposition, StepWeight,
};
use crate::landau::{
    derivative_deviation, divided_difference, extremal_sup_norm, k_value, landau_constant, landau_extremal,
    landau_lhs, landau_second, operator_norm, StechkinTarget, Variant, Window,
};
use crate::lspace::Element;
use crate::modulus::Modulus;
use crate::ostrowski::{
    point_vs_mean_bound, point_vs_mean_extremal, point_vs_mean_functional, symmetric_bound, symmetric_functional,
    symmetrized_pair_bound, symmetrized_pair_extremal, symmetrized_pair_functional, two_interval_bound,
    two_interval_extremal, two_interval_functional, TwoIntervalConfig,
};
use crate::recovery::{omega_spline, polyline_uniform_error, Partition, Problem, Sample};

use super::sampler::{rng_for, sample_class, Class, SampleModel, SampleSpec};
use super::{empirical_sup, Check, CheckKind, SupReport, SuiteReport, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Ks,
    General,
    Ostrowski,
    Recovery,
    Spline,
    Landau,
    Stechkin,
    Delta,
    Metric,
    Isotropy,
}

pub const SUITES: [Suite; 10] = [
    Suite::Ks,
    Suite::General,
    Suite::Ostrowski,
    Suite::Recovery,
    Suite::Spline,
    Suite::Landau,
    Suite::Stechkin,
    Suite::Delta,
    Suite::Metric,
    Suite::Isotropy,
];

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Ks => "ks",
            Suite::General => "general",
            Suite::Ostrowski => "ostrowski",
            Suite::Recovery => "recovery",
            Suite::Spline => "spline",
            Suite::Landau => "landau",
            Suite::Stechkin => "stechkin",
            Suite::Delta => "delta",
            Suite::Metric => "metric",
            Suite::Isotropy => "isotropy",
        }
    }

    /// `"all"` or a comma separated list of suite names.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(SUITES.to_vec());
        }
        s.split(',').map(|p| p.trim().parse()).collect()
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        SUITES
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub grid: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            trials: 1000,
            grid: crate::gridfn::DEFAULT_GRID,
            seed: 7,
        }
    }
}

fn fnv(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

struct Ctx {
    cfg: VerifyConfig,
    seed: u64,
    lin: Modulus,
    sqrt: Modulus,
}

impl Ctx {
    fn new(cfg: VerifyConfig, suite: Suite) -> Ctx {
        Ctx {
            cfg,
            seed: cfg.seed ^ fnv(suite.name()),
            lin: Modulus::linear(),
            sqrt: Modulus::power(1.0, 0.5).expect("valid modulus"),
        }
    }

    fn n(&self) -> usize {
        self.cfg.grid
    }

    fn eps(&self, omega: &Modulus) -> f64 {
        grid_tolerance(omega, 0.0, 1.0, self.cfg.grid)
    }

    fn pool(&self, class: Class, omega: &Modulus, tag: u64) -> Result<Vec<Sample>> {
        let spec = SampleSpec::new(class, omega, 0.0, 1.0, self.cfg.grid, self.cfg.trials, self.seed ^ tag);
        sample_class(&spec)
    }

    fn pool_of(&self, model: SampleModel, class: Class, omega: &Modulus, tag: u64) -> Result<Vec<Sample>> {
        let spec = SampleSpec::new(class, omega, 0.0, 1.0, self.cfg.grid, self.cfg.trials, self.seed ^ tag);
        sample_class(&spec.with_model(model))
    }
}

fn unit() -> Element {
    Element::singleton(1.0)
}

/// Smallest functional value over the extremal and its singleton lift.
fn on_extremal(f: &GridFunction, fun: impl Fn(&GridFunction) -> Result<f64>) -> Result<f64> {
    Ok(fun(f)?.min(fun(&f.lift(&unit())?)?))
}

fn exact(name: &str, omega: &str, target: f64, tol: f64, value: f64) -> Check {
    let sup = SupReport {
        sup: value,
        argmax: Some(0),
    };
    Check::new(name, omega, CheckKind::Exact, target, tol, sup, None)
}

fn ks_suite(c: &Ctx) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let psi1 = StepWeight::indicator(0.0, 0.25, 1.0)?;
    let psi2 = StepWeight::indicator(0.75, 1.0, 1.0)?;
    for (k, omega) in [&c.lin, &c.sqrt].into_iter().enumerate() {
        let samples = c.pool(Class::Homega, omega, k as u64)?;
        let target = ks_bound(&psi1, &psi2, omega)?;
        let emp = empirical_sup(&samples, |s| functional(&psi1, &psi2, &s.f))?;
        let ext = ks_extremal(&psi1, &psi2, omega, c.n())?;
        let inj = on_extremal(&ext, |f| functional(&psi1, &psi2, f))?;
        out.push(Check::new("ks_two_interval", omega.to_string(), CheckKind::Bound, target, c.eps(omega), emp, Some(inj)));
    }
    let w = |a: f64, b: f64, p: Vec<(f64, f64, f64)>| StepWeight::new(a, b, p);
    let configs = [
        (w(0.0, 1.0, vec![(0.0, 0.25, 1.0)])?, w(0.0, 1.0, vec![(0.75, 1.0, 1.0)])?),
        (w(0.0, 1.0, vec![(0.0, 0.3, 1.0)])?, w(0.0, 1.0, vec![(0.6, 1.0, 0.75)])?),
        (w(0.0, 1.0, vec![(0.0, 0.1, 2.0), (0.1, 0.3, 0.5)])?, w(0.0, 1.0, vec![(0.5, 0.8, 1.0)])?),
        (w(0.0, 1.0, vec![(0.0, 0.2, 1.0)])?, w(0.0, 1.0, vec![(0.2, 0.6, 0.5)])?),
        (
            w(0.0, 1.0, vec![(0.0, 0.2, 1.0), (0.2, 0.4, 0.25)])?,
            w(0.0, 1.0, vec![(0.7, 0.8, 1.5), (0.8, 0.9, 1.0)])?,
        ),
    ];
    for (i, (p1, p2)) in configs.iter().enumerate() {
        let rho_form = ks_bound(p1, p2, &c.sqrt)?;
        let rearranged = general_bound(p1, p2, &c.sqrt)?;
        out.push(exact(&format!("rearrangement_form_{}", i + 1), &c.sqrt.to_string(), rho_form, 1e-7, rearranged));
    }
    Ok(out)
}

fn general_suite(c: &Ctx) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let omega = &c.lin;
    let samples = c.pool(Class::Homega, omega, 0)?;
    let cfg = TwoIntervalConfig::new((0.0, 1.0), (0.25, 0.75))?;
    let (p1, p2) = cfg.weights()?;
    let alt1 = StepWeight::new(0.0, 1.0, vec![(0.0, 0.25, 1.0), (0.75, 1.0, 1.0)])?;
    let alt2 = StepWeight::indicator(0.25, 0.75, 1.0)?.on_domain(0.0, 1.0)?;
    for (name, a, b) in [("general_nested", &p1, &p2), ("general_alternating", &alt1, &alt2)] {
        let target = general_bound(a, b, omega)?;
        let emp = empirical_sup(&samples, |s| functional(a, b, &s.f))?;
        let ext = glue_extremal(&weight_decomposition(a, b)?, omega, c.n())?;
        let inj = on_extremal(&ext, |f| functional(a, b, f))?;
        out.push(Check::new(name, omega.to_string(), CheckKind::Bound, target, c.eps(omega), emp, Some(inj)));
    }
    out.push(exact(
        "general_equals_two_interval",
        &omega.to_string(),
        two_interval_bound(&cfg, omega),
        1e-12,
        general_bound(&p1, &p2, omega)?,
    ));
    Ok(out)
}

fn ostrowski_suite(c: &Ctx) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let lin_samples = c.pool(Class::Homega, &c.lin, 0)?;
    let sq_samples = c.pool(Class::Homega, &c.sqrt, 1)?;
    for (omega, samples) in [(&c.lin, &lin_samples), (&c.sqrt, &sq_samples)] {
        let eps = c.eps(omega);
        let os = omega.to_string();
        for (name, ab, cd) in [
            ("two_interval_nested", (0.0, 1.0), (0.25, 0.75)),
            ("two_interval_overlap", (0.0, 0.6), (0.4, 1.0)),
            ("two_interval_disjoint", (0.0, 0.3), (0.6, 1.0)),
        ] {
            let cfg = TwoIntervalConfig::new(ab, cd)?;
            let emp = empirical_sup(samples, |s| two_interval_functional(&cfg, &s.f))?;
            let inj = on_extremal(&two_interval_extremal(&cfg, omega, c.n())?, |f| two_interval_functional(&cfg, f))?;
            out.push(Check::new(name, os.clone(), CheckKind::Bound, two_interval_bound(&cfg, omega), eps, emp, Some(inj)));
        }
        let cfg = TwoIntervalConfig::new((0.0, 1.0), (0.1, 0.9))?;
        let emp = empirical_sup(samples, |s| symmetric_functional(0.0, 1.0, 0.1, 0.9, &s.f))?;
        let inj = on_extremal(&two_interval_extremal(&cfg, omega, c.n())?, |f| {
            symmetric_functional(0.0, 1.0, 0.1, 0.9, f)
        })?;
        let target = symmetric_bound(0.0, 1.0, 0.1, 0.9, omega)?;
        out.push(Check::new("symmetric", os.clone(), CheckKind::Bound, target, eps, emp, Some(inj)));
        for t in [0.5, 0.0, 0.3] {
            let emp = empirical_sup(samples, |s| point_vs_mean_functional(t, 0.0, 1.0, &s.f))?;
            let ext = point_vs_mean_extremal(t, 0.0, 1.0, omega, c.n())?;
            let inj = on_extremal(&ext, |f| point_vs_mean_functional(t, 0.0, 1.0, f))?;
            let target = point_vs_mean_bound(t, 0.0, 1.0, omega)?;
            out.push(Check::new(format!("point_vs_mean_t{t}"), os.clone(), CheckKind::Bound, target, eps, emp, Some(inj)));
        }
        for t in [0.0, 0.2] {
            let emp = empirical_sup(samples, |s| symmetrized_pair_functional(t, 0.0, 1.0, &s.f))?;
            let ext = symmetrized_pair_extremal(t, 0.0, 1.0, omega, c.n())?;
            let inj = on_extremal(&ext, |f| symmetrized_pair_functional(t, 0.0, 1.0, f))?;
            let target = symmetrized_pair_bound(t, 0.0, 1.0, omega)?;
            out.push(Check::new(format!("symmetrized_pair_t{t}"), os.clone(), CheckKind::Bound, target, eps, emp, Some(inj)));
        }
    }
    Ok(out)
}

fn recovery_check(c: &Ctx, p: Problem, omega: &Modulus, samples: &[Sample], name: String) -> Result<Check> {
    let theoretical = p.theoretical(omega, 0.0, 1.0)?;
    let lower = p.lower_bound(omega, 0.0, 1.0, c.n(), &unit())?;
    let emp = empirical_sup(samples, |s| p.method_error(s))?;
    Ok(Check::new(name, omega.to_string(), CheckKind::Bound, theoretical, c.eps(omega), emp, Some(lower)))
}

fn recovery_suite(c: &Ctx) -> Result<Vec<Check>> {
    let omega = &c.lin;
    let h = c.pool(Class::Homega, omega, 0)?;
    let w1 = c.pool(Class::W1Homega, omega, 1)?;
    [
        (Problem::Convexify { n: 2, h: 0.1 }, &h),
        (Problem::Integral { n: 2, h: 0.05 }, &h),
        (Problem::Identity { n: 2 }, &w1),
        (Problem::Derivative { n: 4 }, &w1),
    ]
    .into_iter()
    .map(|(p, s)| recovery_check(c, p, omega, s, format!("recover_{}", p.name())))
    .collect()
}

fn spline_suite(c: &Ctx) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (k, omega) in [&c.lin, &c.sqrt].into_iter().enumerate() {
        let w1 = c.pool(Class::W1Homega, omega, k as u64)?;
        for n in [1, 2, 4] {
            let target = polyline_uniform_error(n, omega, 1.0);
            let g = omega_spline(&Partition::uniform(n, 0.0, 1.0)?, omega)?;
            let sup = g.sample(c.n())?.sup_norm();
            out.push(exact(&format!("spline_sup_n{n}"), &omega.to_string(), target, c.eps(omega), sup));
            out.push(recovery_check(c, Problem::Identity { n }, omega, &w1, format!("polyline_n{n}"))?);
        }
    }
    Ok(out)
}

/// `(lhs − tail) / ‖D_H f‖_ω`, or −∞ for a vanishing seminorm.
fn landau_ratio(v: Variant, w: &Window, omega: &Modulus, f: &GridFunction, df: &GridFunction) -> Result<f64> {
    let norm = df.omega_seminorm(omega, false);
    if norm < 1e-9 {
        return Ok(f64::NEG_INFINITY);
    }
    let lhs = landau_lhs(v, w, f, df)?;
    let second = landau_second(v, w, f)?;
    let tail = if v.uses_sup_norm() {
        operator_norm(w) * second
    } else {
        second
    };
    Ok((lhs - tail) / norm)
}

fn landau_suite(c: &Ctx) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (k, omega) in [&c.lin, &c.sqrt].into_iter().enumerate() {
        let w1 = c.pool(Class::W1Homega, omega, k as u64)?;
        let eps = c.eps(omega);
        for (t, gamma, h) in [(0.5, 0.1, 0.2), (0.1, 0.05, 0.3)] {
            let w = Window::clamped(t, gamma, h, 0.0, 1.0)?;
            for v in Variant::ALL {
                let target = landau_constant(v, &w, omega)?;
                let emp = empirical_sup(&w1, |s| landau_ratio(v, &w, omega, &s.f, s.df.as_ref().unwrap()))?;
                let e = landau_extremal(v, &w, omega, 0.0, 1.0, c.n())?;
                let real = landau_ratio(v, &w, omega, &e.f, &e.g)?;
                let lifted = landau_ratio(v, &w, omega, &e.f.lift(&unit())?, &e.g.lift(&unit())?)?;
                let name = format!("landau_{v}_t{t}");
                out.push(Check::new(name, omega.to_string(), CheckKind::Bound, target, eps, emp, Some(real.min(lifted))));
            }
        }
        let w = Window::clamped(0.5, 0.0, 0.3, 0.0, 1.0)?;
        let e = landau_extremal(Variant::E, &w, omega, 0.0, 1.0, c.n())?;
        out.push(exact("extremal_sup_norm_h0.3", &omega.to_string(), extremal_sup_norm(&w, omega), eps, e.f.sup_norm()));
    }
    Ok(out)
}

/// Smallest miss `‖A f − λ Δ_{h₁',h₂'} f(t)‖` over scaled differences of norm at most `2/(h₁+h₂)`.
fn family_min(target: StechkinTarget, w: &Window, f: &GridFunction, df: &GridFunction) -> Result<f64> {
    let a_f = match target {
        StechkinTarget::Derivative => df.eval_real(w.t),
        StechkinTarget::DividedDiff => divided_difference(f, w.t, w.gamma1, w.gamma2)?.as_real().unwrap_or(0.0),
    };
    let (a, b) = f.domain();
    let bound = operator_norm(w);
    let mut best = f64::INFINITY;
    for i in 0..=10 {
        for j in 0..=10 {
            let (h1, h2) = ((0.05 * i as f64).min(w.t - a), (0.05 * j as f64).min(b - w.t));
            if h1 + h2 <= 0.0 {
                continue;
            }
            let d = divided_difference(f, w.t, h1, h2)?.as_real().unwrap_or(0.0);
            let lmax = bound * (h1 + h2) / 2.0;
            for k in 0..=20 {
                let lambda = lmax * (k as f64 / 10.0 - 1.0);
                best = best.min((a_f - lambda * d).abs());
            }
        }
    }
    Ok(best)
}

fn stechkin_suite(c: &Ctx) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (k, omega) in [&c.lin, &c.sqrt].into_iter().enumerate() {
        let w1 = c.pool(Class::W1Homega, omega, k as u64)?;
        let eps = c.eps(omega);
        let os = omega.to_string();
        for (target, gamma) in [(StechkinTarget::Derivative, 0.0), (StechkinTarget::DividedDiff, 0.1)] {
            let w = Window::clamped(0.5, gamma, 0.2, 0.0, 1.0)?;
            let value = match target {
                StechkinTarget::Derivative => derivative_deviation(&w, omega),
                StechkinTarget::DividedDiff => k_value(&w, omega)?,
            };
            let emp = empirical_sup(&w1, |s| {
                let df = s.df.as_ref().unwrap();
                let norm = df.omega_seminorm(omega, false);
                if norm < 1e-9 {
                    return Ok(f64::NEG_INFINITY);
                }
                let a_f = match target {
                    StechkinTarget::Derivative => df.eval(w.t).convexify(),
                    StechkinTarget::DividedDiff => divided_difference(&s.f, w.t, w.gamma1, w.gamma2)?,
                };
                Ok(a_f.dist(&divided_difference(&s.f, w.t, w.h1, w.h2)?)? / norm)
            })?;
            let variant = match target {
                StechkinTarget::Derivative => Variant::E,
                StechkinTarget::DividedDiff => Variant::D,
            };
            let e = landau_extremal(variant, &w, omega, 0.0, 1.0, c.n())?;
            let inj = family_min(target, &w, &e.f, &e.g)?;
            let name = match target {
                StechkinTarget::Derivative => "stechkin_derivative",
                StechkinTarget::DividedDiff => "stechkin_divided_diff",
            };
            out.push(Check::new(name, os.clone(), CheckKind::Bound, value, eps, emp, Some(inj)));
        }
    }
    let w = Window::clamped(0.5, 0.0, 0.2, 0.0, 1.0)?;
    // Δ_h needs Hukuhara differences, so set-valued inputs of varying width are left out
    let mut bounded = c.pool_of(SampleModel::Real, Class::Homega, &c.sqrt, 2)?;
    bounded.extend(c.pool_of(SampleModel::Lifted, Class::Homega, &c.sqrt, 3)?);
    let ratio = |f: &GridFunction| -> Result<f64> {
        let s = f.sup_norm();
        if s < 1e-12 {
            return Ok(f64::NEG_INFINITY);
        }
        Ok(divided_difference(f, w.t, w.h1, w.h2)?.norm() / s)
    };
    let emp = empirical_sup(&bounded, |s| ratio(&s.f))?;
    let m = 0.5 * w.h1.min(w.h2);
    let step = GridFunction::from_real(0.0, 1.0, c.n(), |u| ((u - w.t) / m).clamp(-1.0, 1.0))?;
    let inj = on_extremal(&step, ratio)?;
    out.push(Check::new("operator_norm", "any", CheckKind::Bound, operator_norm(&w), 1e-9, emp, Some(inj)));
    Ok(out)
}

/// `x` moved by `e` and inflated by `r`, at Hausdorff distance `|e| + r` for sets.
fn perturb(x: &Element, e: f64, r: f64) -> Element {
    match x {
        Element::Real(v) => Element::Real(v + e),
        Element::Interval(lo, hi) => Element::Interval(lo + e - r, hi + e + r),
        Element::Vector(v) => {
            let mut v = v.clone();
            v[0] += e;
            Element::Vector(v)
        }
        other => other.clone(),
    }
}

fn delta_suite(c: &Ctx) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (k, omega) in [&c.lin, &c.sqrt].into_iter().enumerate() {
        let w1 = c.pool(Class::W1Homega, omega, k as u64)?;
        let eps = c.eps(omega);
        let w = Window::clamped(0.5, 0.0, 0.1, 0.0, 1.0)?;
        let r = crate::landau::delta_recovery_value(0.5, 0.1, omega, 0.0, 1.0)?;
        let indexed: Vec<(usize, &Sample)> = w1.iter().enumerate().collect();
        let errors: Vec<Sample> = indexed
            .iter()
            .map(|&(i, s)| {
                let mut rng = rng_for(c.seed ^ 0xde17a ^ k as u64, i);
                let knots: Vec<f64> = (0..7).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let peak = knots.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-12);
                let set = matches!(s.f.values()[0], Element::Interval(..));
                let inflate = if set { rng.gen_range(0.0..0.5) * r.delta } else { 0.0 };
                let scale = (r.delta - inflate) / peak;
                let (a, b) = s.f.domain();
                let vals = s
                    .f
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(j, x)| {
                        let u = 6.0 * j as f64 / s.f.n() as f64;
                        let m = (u.floor() as usize).min(5);
                        let e = knots[m] + (u - m as f64) * (knots[m + 1] - knots[m]);
                        perturb(x, scale * e, inflate)
                    })
                    .collect();
                Ok(Sample {
                    f: GridFunction::new(a, b, vals)?,
                    df: s.df.clone(),
                })
            })
            .collect::<Result<_>>()?;
        let emp = empirical_sup(&errors, |g| {
            let df = g.df.as_ref().unwrap();
            df.eval(w.t).convexify().dist(&divided_difference(&g.f, w.t, w.h1, w.h2)?)
        })?;
        let e = landau_extremal(Variant::E, &w, omega, 0.0, 1.0, c.n())?;
        let zero = GridFunction::from_real(0.0, 1.0, c.n(), |_| 0.0)?;
        let inj = (e.g.eval_real(w.t) - divided_difference(&zero, w.t, w.h1, w.h2)?.as_real().unwrap()).abs();
        out.push(Check::new("delta_recovery", omega.to_string(), CheckKind::Bound, r.value, eps, emp, Some(inj)));
        out.push(exact("delta_level", &omega.to_string(), r.delta, eps, e.f.sup_norm()));
    }
    Ok(out)
}

fn random_invertible(rng: &mut impl Rng) -> Element {
    match rng.gen_range(0..3) {
        0 => Element::Real(rng.gen_range(-10.0..10.0)),
        1 => Element::Vector((0..3).map(|_| rng.gen_range(-10.0..10.0)).collect()),
        _ => Element::singleton(rng.gen_range(-10.0..10.0)),
    }
}

fn metric_suite(c: &Ctx) -> Result<Vec<Check>> {
    let (mut inv, mut inv_norm, mut scaling) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..c.cfg.trials {
        let mut rng = rng_for(c.seed, i);
        let x = random_invertible(&mut rng);
        let xp = x.inverse()?;
        let theta = x.zero_like();
        let n = x.dist(&theta)?;
        inv = inv.max((x.dist(&xp)? - 2.0 * n).abs());
        inv_norm = inv_norm.max((xp.dist(&theta)? - n).abs());
        let alpha: f64 = rng.gen_range(0.0..5.0);
        let beta: f64 = rng.gen_range(0.0..5.0);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let (alpha, beta) = (sign * alpha, sign * beta);
        let lo: f64 = rng.gen_range(-3.0..3.0);
        let y = Element::interval(lo, lo + rng.gen_range(0.0..3.0))?;
        for z in [&x, &y] {
            let d = z.scale(alpha).dist(&z.scale(beta))?;
            scaling = scaling.max((d - (alpha - beta).abs() * z.norm()).abs());
        }
    }
    Ok(vec![
        exact("inverse_distance", "none", 0.0, 1e-12, inv),
        exact("inverse_norm", "none", 0.0, 1e-12, inv_norm),
        exact("scaling", "none", 0.0, 1e-12, scaling),
    ])
}

fn isotropy_suite(c: &Ctx) -> Result<Vec<Check>> {
    let _ = c;
    let vals: Vec<f64> = (0..7).map(|i| 0.5 * i as f64).collect();
    let (mut strict, mut excess, mut rejected, mut total) = (f64::NEG_INFINITY, f64::NEG_INFINITY, 0usize, 0usize);
    let mut interval_gap = 0.0f64;
    for &x in &vals {
        for &y in &vals {
            let (ex, ey) = (Element::max_space(x)?, Element::max_space(y)?);
            total += 1;
            if matches!(ex.hukuhara_diff(&ey), Err(Error::NonIsotropic)) {
                rejected += 1;
            }
            for &z in &vals {
                let ez = Element::max_space(z)?;
                let shifted = ex.add(&ez)?.dist(&ey.add(&ez)?)?;
                let d = ex.dist(&ey)?;
                strict = strict.max(d - shifted);
                excess = excess.max(shifted - d);
                let (ix, iy, iz) = (Element::interval(x, 2.0 * x)?, Element::interval(y, y + 1.0)?, Element::interval(-z, z)?);
                interval_gap = interval_gap.max((ix.add(&iz)?.dist(&iy.add(&iz)?)? - ix.dist(&iy)?).abs());
            }
        }
    }
    let sup = |v: f64| SupReport {
        sup: v,
        argmax: Some(0),
    };
    Ok(vec![
        Check::new("max_space_strict_shift", "none", CheckKind::Witness, 0.0, 0.0, sup(strict), None),
        Check::new("max_space_semi_invariance", "none", CheckKind::Upper, 0.0, 1e-12, sup(excess), None),
        exact("max_space_hukuhara_rejected", "none", 1.0, 0.0, rejected as f64 / total as f64),
        exact("interval_shift_invariance", "none", 0.0, 1e-12, interval_gap),
    ])
}

pub fn run_suite(suite: Suite, cfg: VerifyConfig) -> Result<SuiteReport> {
    let c = Ctx::new(cfg, suite);
    let checks = match suite {
        Suite::Ks => ks_suite(&c)?,
        Suite::General => general_suite(&c)?,
        Suite::Ostrowski => ostrowski_suite(&c)?,
        Suite::Recovery => recovery_suite(&c)?,
        Suite::Spline => spline_suite(&c)?,
        Suite::Landau => landau_suite(&c)?,
        Suite::Stechkin => stechkin_suite(&c)?,
        Suite::Delta => delta_suite(&c)?,
        Suite::Metric => metric_suite(&c)?,
        Suite::Isotropy => isotropy_suite(&c)?,
    };
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        pass: checks.iter().all(|k| k.pass),
        checks,
    })
}

pub fn verify(suites: &[Suite], cfg: VerifyConfig) -> Result<VerifyReport> {
    let reports = suites.iter().map(|&s| run_suite(s, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        seed: cfg.seed,
        trials: cfg.trials,
        grid: cfg.grid,
        pass: reports.iter().all(|r| r.pass),
        suites: reports,
    })
}
