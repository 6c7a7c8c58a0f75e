//! Hukuhara divided differences, the deviation constant K, Landau type
//! inequalities, Stechkin approximation values and recovery from inexact data.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gridfn::GridFunction;
use crate::lspace::Element;
use crate::modulus::Modulus;
use crate::ostrowski::{two_interval_extremal, TwoIntervalConfig};

/// Point `t` with the inner window `[t−γ₁, t+γ₂]` inside the outer `[t−h₁, t+h₂]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub t: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub h1: f64,
    pub h2: f64,
}

impl Window {
    pub fn new(t: f64, gamma1: f64, gamma2: f64, h1: f64, h2: f64) -> Window {
        Window {
            t,
            gamma1,
            gamma2,
            h1,
            h2,
        }
    }

    /// `γ₁ = min{γ, t−a}`, `γ₂ = min{γ, b−t}`, `h₁ = min{h, t−a}`, `h₂ = min{h, b−t}`.
    pub fn clamped(t: f64, gamma: f64, h: f64, a: f64, b: f64) -> Result<Window> {
        if !(t >= a && t <= b) {
            return Err(Error::WindowViolation(format!("t = {t} outside [{a}, {b}]")));
        }
        if !(h > 0.0) || gamma < 0.0 || gamma > h {
            return Err(Error::WindowViolation(format!("need 0 ≤ γ ≤ h and h > 0, got γ = {gamma}, h = {h}")));
        }
        let w = Window::new(t, gamma.min(t - a), gamma.min(b - t), h.min(t - a), h.min(b - t));
        w.validate(a, b, false)?;
        Ok(w)
    }

    pub fn outer_len(&self) -> f64 {
        self.h1 + self.h2
    }

    pub fn inner_len(&self) -> f64 {
        self.gamma1 + self.gamma2
    }

    /// Checks the window conditions; `with_gamma` also requires `γ₁ + γ₂ > 0`.
    pub fn validate(&self, a: f64, b: f64, with_gamma: bool) -> Result<()> {
        let Window { t, gamma1, gamma2, h1, h2 } = *self;
        let tol = 1e-12 * (b - a).max(1.0);
        let bad = |m: &str| Err(Error::WindowViolation(m.into()));
        if [gamma1, gamma2, h1, h2].iter().any(|v| *v < 0.0 || !v.is_finite()) {
            return bad("window sizes must be nonnegative");
        }
        if with_gamma && !(gamma1 + gamma2 > 0.0) {
            return bad("γ₁ + γ₂ must be positive");
        }
        if !(h1 + h2 > 0.0) {
            return bad("h₁ + h₂ must be positive");
        }
        if gamma1 > h1 + tol || gamma2 > h2 + tol {
            return bad("inner window must lie in the outer one");
        }
        if t - h1 < a - tol || t + h2 > b + tol {
            return bad("outer window must lie in [a, b]");
        }
        Ok(())
    }

    /// Whether the outer window is as long as allowed on both sides: a shorter
    /// side must end at the domain boundary.
    fn check_clamped(&self, a: f64, b: f64) -> Result<()> {
        let tol = 1e-9 * (b - a);
        let ok = if self.h1 < self.h2 - tol {
            (self.t - self.h1 - a).abs() <= tol
        } else if self.h2 < self.h1 - tol {
            (b - self.t - self.h2).abs() <= tol
        } else {
            true
        };
        if ok {
            Ok(())
        } else {
            Err(Error::WindowViolation("outer window is not clamped to the domain".into()))
        }
    }
}

/// `K(γ₁, γ₂; h₁, h₂)`, zero when the windows coincide.
pub fn k_value(w: &Window, omega: &Modulus) -> Result<f64> {
    let (u, v) = (w.h1 - w.gamma1, w.h2 - w.gamma2);
    if u < -1e-12 || v < -1e-12 {
        return Err(Error::WindowViolation("inner window must lie in the outer one".into()));
    }
    let d = u.max(0.0) + v.max(0.0);
    if d <= 0.0 {
        return Ok(0.0);
    }
    let s = w.outer_len();
    Ok(d / (s * s) * (omega.i0(s * u.max(0.0) / d) + omega.i0(s * v.max(0.0) / d)))
}

/// `(I(h₁) + I(h₂)) / (h₁ + h₂)`.
pub fn derivative_deviation(w: &Window, omega: &Modulus) -> f64 {
    (omega.i0(w.h1) + omega.i0(w.h2)) / w.outer_len()
}

/// `(f(t+γ₂) −_H f(t−γ₁)) / (γ₁ + γ₂)`.
pub fn divided_difference(f: &GridFunction, t: f64, gamma1: f64, gamma2: f64) -> Result<Element> {
    if !(gamma1 + gamma2 > 0.0) {
        return Err(Error::WindowViolation("γ₁ + γ₂ must be positive".into()));
    }
    Ok(f.eval(t + gamma2)
        .hukuhara_diff(&f.eval(t - gamma1))?
        .scale(1.0 / (gamma1 + gamma2)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Divided difference against `‖Δ_h f(t)‖`.
    B,
    /// Derivative against `‖Δ_h f(t)‖`.
    C,
    /// Divided difference against `‖f‖_C`.
    D,
    /// Derivative against `‖f‖_C`.
    E,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::B, Variant::C, Variant::D, Variant::E];

    pub fn uses_gamma(self) -> bool {
        matches!(self, Variant::B | Variant::D)
    }

    pub fn uses_sup_norm(self) -> bool {
        matches!(self, Variant::D | Variant::E)
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "b" => Ok(Variant::B),
            "c" => Ok(Variant::C),
            "d" => Ok(Variant::D),
            "e" => Ok(Variant::E),
            _ => Err(Error::Parse(format!("unknown variant '{s}', expected b, c, d or e"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::B => "b",
            Variant::C => "c",
            Variant::D => "d",
            Variant::E => "e",
        };
        f.write_str(s)
    }
}

/// Coefficient of `‖D_H f‖_ω` in the right-hand side.
pub fn landau_constant(variant: Variant, w: &Window, omega: &Modulus) -> Result<f64> {
    if variant.uses_gamma() {
        k_value(w, omega)
    } else {
        Ok(derivative_deviation(w, omega))
    }
}

/// Right-hand side; `second` is `‖Δ_h f(t)‖` for b/c and `‖f‖_C` for d/e.
pub fn landau_rhs(variant: Variant, w: &Window, omega: &Modulus, norm_omega: f64, second: f64) -> Result<f64> {
    let c = landau_constant(variant, w, omega)?;
    let tail = if variant.uses_sup_norm() {
        2.0 / w.outer_len() * second
    } else {
        second
    };
    Ok(c * norm_omega + tail)
}

/// Left-hand side `‖Δ_γ f(t)‖` (b/d) or `‖D_H f(t)‖` (c/e), with `df` the derivative of `f`.
pub fn landau_lhs(variant: Variant, w: &Window, f: &GridFunction, df: &GridFunction) -> Result<f64> {
    if variant.uses_gamma() {
        Ok(divided_difference(f, w.t, w.gamma1, w.gamma2)?.norm())
    } else {
        Ok(df.eval(w.t).convexify().norm())
    }
}

/// `‖Δ_h f(t)‖` for b/c, `‖f‖_C` for d/e.
pub fn landau_second(variant: Variant, w: &Window, f: &GridFunction) -> Result<f64> {
    if variant.uses_sup_norm() {
        Ok(f.sup_norm())
    } else {
        Ok(divided_difference(f, w.t, w.h1, w.h2)?.norm())
    }
}

/// A real extremal `f` with its derivative `g`; `xi` is the balancing point for d/e.
#[derive(Clone, Debug)]
pub struct LandauExtremal {
    pub f: GridFunction,
    pub g: GridFunction,
    pub xi: Option<f64>,
}

/// `u ↦ ∫_from^u g`, exact for the piecewise linear interpolant of `g`.
fn primitive_from(g: &GridFunction, from: f64) -> Result<GridFunction> {
    let (a, b) = g.domain();
    let base = g.integrate_real(a, from)?;
    let vals = (0..=g.n())
        .map(|i| Ok(g.integrate_real(a, g.node(i))? - base))
        .collect::<Result<Vec<_>>>()?;
    GridFunction::from_real_values(a, b, vals)
}

/// Point of `[lo, hi]` splitting `∫_lo^hi g` into equal halves, for `g ≥ 0`.
fn balance_point(g: &GridFunction, lo: f64, hi: f64) -> Result<f64> {
    let half = 0.5 * g.integrate_real(lo, hi)?;
    let (mut x, mut y) = (lo, hi);
    for _ in 0..200 {
        let m = 0.5 * (x + y);
        if g.integrate_real(lo, m)? < half {
            x = m;
        } else {
            y = m;
        }
    }
    Ok(0.5 * (x + y))
}

/// Two-segment extremal for the windows, nonnegative, with inner mean at least
/// the outer mean, evaluated on the outer window.
fn window_profile(w: &Window, omega: &Modulus, grid: usize) -> Result<impl Fn(f64) -> f64> {
    let (lo, hi) = (w.t - w.h1, w.t + w.h2);
    let cfg = TwoIntervalConfig::new((lo, hi), (w.t - w.gamma1, w.t + w.gamma2))?;
    let g = two_interval_extremal(&cfg, omega, grid)?;
    let inner = g.mean(w.t - w.gamma1, w.t + w.gamma2)?.as_real().unwrap_or(0.0);
    let outer = g.mean(lo, hi)?.as_real().unwrap_or(0.0);
    let sign = if inner >= outer { 1.0 } else { -1.0 };
    Ok(move |u: f64| sign * g.eval_real(u.clamp(lo, hi)))
}

pub fn landau_extremal(
    variant: Variant,
    w: &Window,
    omega: &Modulus,
    a: f64,
    b: f64,
    grid: usize,
) -> Result<LandauExtremal> {
    w.validate(a, b, variant.uses_gamma())?;
    if variant.uses_gamma() {
        omega.require_concave()?;
    }
    let (lo, hi) = (w.t - w.h1, w.t + w.h2);
    let top = omega.w(w.h1).max(omega.w(w.h2));
    let g = match variant {
        Variant::B => {
            let p = window_profile(w, omega, grid)?;
            let m = (0..=grid)
                .map(|i| p(lo + (hi - lo) * i as f64 / grid as f64))
                .fold(f64::INFINITY, f64::min);
            GridFunction::from_real(a, b, grid, |u| p(u) - m)?
        }
        Variant::C => GridFunction::from_real(a, b, grid, |u| top - omega.w((u.clamp(lo, hi) - w.t).abs()))?,
        Variant::D => {
            w.check_clamped(a, b)?;
            let p = window_profile(w, omega, grid)?;
            let end = if w.h2 >= w.h1 { hi } else { lo };
            let base = p(end);
            GridFunction::from_real(a, b, grid, |u| if u < lo || u > hi { 0.0 } else { (p(u) - base).max(0.0) })?
        }
        Variant::E => {
            w.check_clamped(a, b)?;
            GridFunction::from_real(a, b, grid, |u| (top - omega.w((u - w.t).abs())).max(0.0))?
        }
    };
    let (from, xi) = if variant.uses_sup_norm() {
        let xi = balance_point(&g, lo, hi)?;
        (xi, Some(xi))
    } else {
        (a, None)
    };
    Ok(LandauExtremal {
        f: primitive_from(&g, from)?,
        g,
        xi,
    })
}

/// `(h₁+h₂)/2 · max ω(hᵢ) − (I(h₁) + I(h₂))/2`, the sup norm of the variant-(e) extremal.
pub fn extremal_sup_norm(w: &Window, omega: &Modulus) -> f64 {
    0.5 * w.outer_len() * omega.w(w.h1).max(omega.w(w.h2)) - 0.5 * (omega.i0(w.h1) + omega.i0(w.h2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StechkinTarget {
    Derivative,
    DividedDiff,
}

impl FromStr for StechkinTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<StechkinTarget> {
        match s {
            "derivative" => Ok(StechkinTarget::Derivative),
            "divided-diff" | "divided_diff" => Ok(StechkinTarget::DividedDiff),
            _ => Err(Error::Parse(format!("unknown target '{s}', expected derivative or divided-diff"))),
        }
    }
}

impl StechkinTarget {
    fn variant(self) -> Variant {
        match self {
            StechkinTarget::Derivative => Variant::E,
            StechkinTarget::DividedDiff => Variant::D,
        }
    }
}

/// Best approximation of the target by operators of norm at most `2/(h₁+h₂)`,
/// attained by `Δ_{h₁,h₂}(t)`.
pub fn stechkin_value(target: StechkinTarget, w: &Window, omega: &Modulus) -> Result<f64> {
    match target {
        StechkinTarget::Derivative => Ok(derivative_deviation(w, omega)),
        StechkinTarget::DividedDiff => {
            omega.require_concave()?;
            k_value(w, omega)
        }
    }
}

/// `2/(h₁+h₂)`, the norm bound of `Δ_{h₁,h₂}(t)` on `C([a, b], X)`.
pub fn operator_norm(w: &Window) -> f64 {
    2.0 / w.outer_len()
}

/// `‖A f‖ − N‖f‖_C` on the extremal of the matching Landau inequality: every operator
/// of norm at most `N` misses `A f` by at least this much.
pub fn stechkin_lower_certificate(
    target: StechkinTarget,
    w: &Window,
    omega: &Modulus,
    a: f64,
    b: f64,
    grid: usize,
) -> Result<f64> {
    let v = target.variant();
    let e = landau_extremal(v, w, omega, a, b, grid)?;
    Ok(landau_lhs(v, w, &e.f, &e.g)? - operator_norm(w) * e.f.sup_norm())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeltaRecovery {
    pub delta: f64,
    pub value: f64,
    pub h1: f64,
    pub h2: f64,
}

/// The noise level `δ` at which `Δ_{h₁,h₂}(t)` recovers `D_H f(t)` optimally, and the error.
pub fn delta_recovery_value(t: f64, h: f64, omega: &Modulus, a: f64, b: f64) -> Result<DeltaRecovery> {
    let w = Window::clamped(t, 0.0, h, a, b)?;
    Ok(DeltaRecovery {
        delta: extremal_sup_norm(&w, omega),
        value: omega.w(w.h1).max(omega.w(w.h2)),
        h1: w.h1,
        h2: w.h2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ostrowski::two_interval_bound;

    fn lin() -> Modulus {
        Modulus::linear()
    }

    #[test]
    fn k_examples() {
        let w = Window::new(0.5, 0.0, 0.0, 0.2, 0.2);
        assert!((k_value(&w, &lin()).unwrap() - 0.1).abs() < 1e-15);
        let w = Window::new(0.5, 0.2, 0.2, 0.2, 0.2);
        assert_eq!(k_value(&w, &lin()).unwrap(), 0.0);
        let w = Window::new(0.5, 0.0, 0.1, 0.2, 0.2);
        assert!((k_value(&w, &lin()).unwrap() - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn k_is_the_nested_two_segment_bound() {
        let sq = Modulus::power(1.0, 0.5).unwrap();
        for (g1, g2, h1, h2) in [(0.05, 0.1, 0.2, 0.3), (0.1, 0.0, 0.1, 0.25), (0.02, 0.02, 0.4, 0.1)] {
            let w = Window::new(0.5, g1, g2, h1, h2);
            let cfg = TwoIntervalConfig::new((0.5 - h1, 0.5 + h2), (0.5 - g1, 0.5 + g2)).unwrap();
            assert!((k_value(&w, &sq).unwrap() - two_interval_bound(&cfg, &sq)).abs() < 1e-12);
        }
    }

    #[test]
    fn divided_difference_examples() {
        let f = GridFunction::from_real(0.0, 1.0, 1000, |t| t * t).unwrap();
        let d = divided_difference(&f, 0.5, 0.1, 0.1).unwrap();
        assert!((d.as_real().unwrap() - 1.0).abs() < 1e-6);
        let f = GridFunction::from_fn(0.0, 1.0, 100, |t| Element::interval(0.0, t).unwrap()).unwrap();
        let d = divided_difference(&f, 0.5, 0.1, 0.1).unwrap();
        assert!(d.approx_eq(&Element::interval(0.0, 1.0).unwrap(), 1e-12));
        let c = GridFunction::from_fn(0.0, 1.0, 10, |_| Element::interval(2.0, 3.0).unwrap()).unwrap();
        assert!(divided_difference(&c, 0.5, 0.1, 0.1).unwrap().norm() < 1e-15);
    }

    #[test]
    fn clamping() {
        let w = Window::clamped(0.1, 0.2, 0.3, 0.0, 1.0).unwrap();
        assert_eq!((w.gamma1, w.gamma2, w.h1, w.h2), (0.1, 0.2, 0.1, 0.3));
        assert!(Window::clamped(0.5, 0.4, 0.3, 0.0, 1.0).is_err());
        assert!(Window::new(0.5, 0.0, 0.0, 0.6, 0.1).validate(0.0, 1.0, false).is_err());
    }

    #[test]
    fn rhs_examples() {
        let s2 = 2f64.sqrt();
        let w = Window::new(2.0, 0.0, 0.0, s2, s2);
        let v = landau_rhs(Variant::E, &w, &lin(), 1.0, 1.0).unwrap();
        assert!((v - s2).abs() < 1e-15);
        let w = Window::new(0.5, 0.2, 0.2, 0.2, 0.2);
        assert_eq!(landau_rhs(Variant::B, &w, &lin(), 3.0, 0.7).unwrap(), 0.7);
        let v = landau_rhs(Variant::C, &w, &lin(), 2.0, 0.0).unwrap();
        assert!((v - 2.0 * 0.04 / 0.4).abs() < 1e-15);
    }

    #[test]
    fn variant_e_extremal_norm_and_balance() {
        let w = Window::clamped(0.5, 0.0, 0.3, 0.0, 1.0).unwrap();
        assert!((extremal_sup_norm(&w, &lin()) - 0.045).abs() < 1e-15);
        let e = landau_extremal(Variant::E, &w, &lin(), 0.0, 1.0, 4000).unwrap();
        assert!((e.f.sup_norm() - 0.045).abs() < 1e-9);
        assert!((e.xi.unwrap() - 0.5).abs() < 1e-9);
        let g = &e.g;
        let xi = e.xi.unwrap();
        assert!((g.integrate_real(0.2, xi).unwrap() - g.integrate_real(xi, 0.8).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn extremals_turn_inequalities_into_equalities() {
        let sq = Modulus::power(1.0, 0.5).unwrap();
        for omega in [lin(), sq] {
            for (t, gamma, h) in [(0.5, 0.1, 0.3), (0.1, 0.05, 0.3), (0.95, 0.2, 0.25)] {
                let w = Window::clamped(t, gamma, h, 0.0, 1.0).unwrap();
                for v in Variant::ALL {
                    let e = landau_extremal(v, &w, &omega, 0.0, 1.0, 4000).unwrap();
                    let norm = e.g.omega_seminorm(&omega, false);
                    assert!((norm - 1.0).abs() < 1e-6, "{v} {t}: seminorm {norm}");
                    let lhs = landau_lhs(v, &w, &e.f, &e.g).unwrap();
                    let rhs = landau_rhs(v, &w, &omega, norm, landau_second(v, &w, &e.f).unwrap()).unwrap();
                    assert!(lhs <= rhs + 1e-6, "{v} {t}: {lhs} > {rhs}");
                    assert!(lhs >= rhs - 1e-3, "{v} {t} {omega}: {lhs} < {rhs}");
                }
            }
        }
    }

    #[test]
    fn stechkin_and_delta_values() {
        let w = Window::new(0.5, 0.0, 0.0, 0.2, 0.2);
        assert!((stechkin_value(StechkinTarget::Derivative, &w, &lin()).unwrap() - 0.1).abs() < 1e-15);
        let same = Window::new(0.5, 0.2, 0.2, 0.2, 0.2);
        assert_eq!(stechkin_value(StechkinTarget::DividedDiff, &same, &lin()).unwrap(), 0.0);
        let sq = Modulus::power(1.0, 0.5).unwrap();
        let w = Window::new(0.5, 0.0, 0.0, 0.25, 0.25);
        assert!((stechkin_value(StechkinTarget::Derivative, &w, &sq).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        let cert = stechkin_lower_certificate(StechkinTarget::Derivative, &w, &sq, 0.0, 1.0, 4096).unwrap();
        assert!((cert - 1.0 / 3.0).abs() < 1e-3);
        let d = delta_recovery_value(0.5, 0.1, &lin(), 0.0, 1.0).unwrap();
        assert!((d.delta - 0.005).abs() < 1e-15 && (d.value - 0.1).abs() < 1e-15);
        let m = Modulus::min_linear(1.0, 0.05).unwrap();
        assert!((delta_recovery_value(0.5, 0.1, &m, 0.0, 1.0).unwrap().value - 0.05).abs() < 1e-15);
    }
}
