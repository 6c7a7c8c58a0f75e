//! Sharp bounds for the distance between means over two segments, the
//! point-versus-mean and symmetrized-pair corollaries, and their extremals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gridfn::GridFunction;
use crate::kscore::{self, StepWeight};
use crate::lspace::Element;
use crate::modulus::Modulus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    Nested,
    Overlap,
    Disjoint,
}

/// Two segments `[a, b]`, `[c, d]` normalized so that `a ≤ c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoIntervalConfig {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub case: Case,
}

impl TwoIntervalConfig {
    pub fn new(ab: (f64, f64), cd: (f64, f64)) -> Result<TwoIntervalConfig> {
        for (u, v) in [ab, cd] {
            if !(v > u) {
                return Err(Error::Degenerate(u, v));
            }
        }
        // with equal left ends the longer segment goes first, so nesting reads [c,d] ⊂ [a,b]
        let swap = cd.0 < ab.0 || (cd.0 == ab.0 && cd.1 > ab.1);
        let ((a, b), (c, d)) = if swap { (cd, ab) } else { (ab, cd) };
        let case = if c >= b {
            Case::Disjoint
        } else if d <= b {
            Case::Nested
        } else {
            Case::Overlap
        };
        Ok(TwoIntervalConfig { a, b, c, d, case })
    }

    /// `(M, m)`.
    pub fn lengths(&self) -> (f64, f64) {
        let (l1, l2) = (self.b - self.a, self.d - self.c);
        (l1.max(l2), l1.min(l2))
    }

    /// Hull `[a, max(b, d)]` carrying both segments.
    pub fn hull(&self) -> (f64, f64) {
        (self.a, self.b.max(self.d))
    }

    /// Mean weights `χ_{[a,b]}/(b−a)` and `χ_{[c,d]}/(d−c)` on the hull.
    pub fn weights(&self) -> Result<(StepWeight, StepWeight)> {
        let (lo, hi) = self.hull();
        Ok((
            StepWeight::new(lo, hi, vec![(self.a, self.b, 1.0 / (self.b - self.a))])?,
            StepWeight::new(lo, hi, vec![(self.c, self.d, 1.0 / (self.d - self.c))])?,
        ))
    }
}

fn primitive(omega: &Modulus, lo: f64, hi: f64) -> f64 {
    omega.i0(hi) - omega.i0(lo)
}

/// Sharp bound for `dist((b−a)⁻¹∫_a^b f, (d−c)⁻¹∫_c^d f)` over `H^ω`.
pub fn two_interval_bound(cfg: &TwoIntervalConfig, omega: &Modulus) -> f64 {
    let TwoIntervalConfig { a, b, c, d, case } = *cfg;
    let (big, small) = cfg.lengths();
    let diff = big - small;
    match case {
        Case::Nested => {
            if diff <= 0.0 {
                return 0.0;
            }
            diff / (big * big) * (omega.i0(big * (c - a) / diff) + omega.i0(big * (b - d) / diff))
        }
        Case::Overlap => {
            let r = big * (b - c) / small;
            primitive(omega, r, d - a) / (big + small) + diff / (big * big) * omega.i0(r)
        }
        Case::Disjoint => primitive(omega, c - b, d - a) / (big + small),
    }
}

/// `dist((b−a)⁻¹∫_a^b f, (d−c)⁻¹∫_c^d f)`.
pub fn two_interval_functional(cfg: &TwoIntervalConfig, f: &GridFunction) -> Result<f64> {
    f.mean(cfg.a, cfg.b)?.dist(&f.mean(cfg.c, cfg.d)?)
}

/// Glued extremal on the hull, from the Σ-representation of the indicator weights.
pub fn two_interval_extremal(cfg: &TwoIntervalConfig, omega: &Modulus, n: usize) -> Result<GridFunction> {
    let (w1, w2) = cfg.weights()?;
    let decomp = kscore::weight_decomposition(&w1, &w2)?;
    if decomp.hats.is_empty() {
        let (lo, hi) = cfg.hull();
        return GridFunction::from_real(lo, hi, n, |_| 0.0);
    }
    kscore::glue_extremal(&decomp, omega, n)
}

fn check_symmetric(a: f64, b: f64, c: f64, d: f64) -> Result<()> {
    let scale = a.abs().max(b.abs()).max(1.0);
    if ((c + d) - (a + b)).abs() > 1e-12 * scale {
        return Err(Error::Asymmetric(0.5 * (a + b), 0.5 * (c + d)));
    }
    if !(b > a) || !(d >= c) || c < a - 1e-12 * scale || d > b + 1e-12 * scale {
        return Err(Error::OutOfRange(format!("[{c}, {d}] must lie in [{a}, {b}]")));
    }
    Ok(())
}

/// `4(c−a)/(b−a) ∫₀^{(b−a)/2} ω` for segments with a common midpoint.
pub fn symmetric_bound(a: f64, b: f64, c: f64, d: f64, omega: &Modulus) -> Result<f64> {
    check_symmetric(a, b, c, d)?;
    Ok(4.0 * (c - a) / (b - a) * omega.i0(0.5 * (b - a)))
}

/// `dist(∫_a^b f, (b−a)/(d−c) ∫_c^d f)`.
pub fn symmetric_functional(a: f64, b: f64, c: f64, d: f64, f: &GridFunction) -> Result<f64> {
    f.integrate(a, b)?.dist(&f.integrate(c, d)?.scale((b - a) / (d - c)))
}

/// `(d−c)⁻¹ ∫_c^d ω(|s − t|) ds`.
pub fn point_vs_mean_bound(t: f64, c: f64, d: f64, omega: &Modulus) -> Result<f64> {
    if !(d > c) {
        return Err(Error::Degenerate(c, d));
    }
    let total = if t <= c {
        primitive(omega, c - t, d - t)
    } else if t >= d {
        primitive(omega, t - d, t - c)
    } else {
        omega.i0(t - c) + omega.i0(d - t)
    };
    Ok(total / (d - c))
}

/// `dist(P f(t), (d−c)⁻¹ ∫_c^d f)`.
pub fn point_vs_mean_functional(t: f64, c: f64, d: f64, f: &GridFunction) -> Result<f64> {
    f.eval(t).convexify().dist(&f.mean(c, d)?)
}

/// `ω(|· − t|)` on `[a, b]`.
pub fn point_vs_mean_extremal(t: f64, a: f64, b: f64, omega: &Modulus, n: usize) -> Result<GridFunction> {
    GridFunction::from_real(a, b, n, |u| omega.w((u - t).abs()))
}

fn check_half(t: f64, a: f64, b: f64) -> Result<()> {
    if !(t >= a && t < 0.5 * (a + b)) {
        return Err(Error::OutOfRange(format!("t = {t} must lie in [{a}, {})", 0.5 * (a + b))));
    }
    Ok(())
}

/// `2/(b−a) (∫₀^{t−a} ω + ∫₀^{(a+b−2t)/2} ω)`.
pub fn symmetrized_pair_bound(t: f64, a: f64, b: f64, omega: &Modulus) -> Result<f64> {
    check_half(t, a, b)?;
    Ok(2.0 / (b - a) * (omega.i0(t - a) + omega.i0(0.5 * (a + b - 2.0 * t))))
}

/// `dist(½(P f(t) + P f(a+b−t)), (b−a)⁻¹ ∫_a^b f)`.
pub fn symmetrized_pair_functional(t: f64, a: f64, b: f64, f: &GridFunction) -> Result<f64> {
    let pair = f.eval(t).convexify().add(&f.eval(a + b - t).convexify())?.scale(0.5);
    pair.dist(&f.mean(a, b)?)
}

/// `min{ω(|u − t|), ω(|u + t − a − b|)}` on `[a, b]`.
pub fn symmetrized_pair_extremal(t: f64, a: f64, b: f64, omega: &Modulus, n: usize) -> Result<GridFunction> {
    check_half(t, a, b)?;
    GridFunction::from_real(a, b, n, |u| {
        omega.w((u - t).abs()).min(omega.w((u + t - a - b).abs()))
    })
}

/// `u ↦ f(u)·x` for a nonnegative real function and a convex element `x`.
pub fn scale_lift(f: &GridFunction, x: &Element) -> Result<GridFunction> {
    if !x.is_convex() {
        return Err(Error::NonConvex(x.to_string()));
    }
    let vals = f
        .real_values()
        .ok_or_else(|| Error::InvalidElement("only real functions can be lifted".into()))?;
    if let Some(&v) = vals.iter().find(|v| **v < 0.0) {
        return Err(Error::NegativeValues(v));
    }
    let (a, b) = f.domain();
    GridFunction::new(a, b, vals.iter().map(|&v| x.scale(v)).collect())
}
