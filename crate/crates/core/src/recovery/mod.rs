//! Optimal recovery from local means and from point values: optimal knots,
//! optimal methods, error values and the extremal pairs certifying them.

mod mean;
mod polyline;

pub use mean::{
    convexify_method, error_convexify, error_integral, lower_extremal_integral, lower_extremal_mean,
    recover_convexify, recover_integral, MeanInfo,
};
pub use polyline::{
    derivative_error_bound, derivative_extremal, derivative_recovery_value, omega_spline, polyline,
    polyline_derivative, polyline_error, polyline_uniform_error, OmegaSpline, Partition, Polyline,
    PolylineDerivative, SPLINE_RESIDUAL,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gridfn::GridFunction;
use crate::lspace::Element;
use crate::modulus::Modulus;

/// `t*ₖ = a + (2k−1)(b−a)/(2n)` and the cell boundaries `τ₁ = a`, `τᵢ = (tᵢ₋₁ + tᵢ)/2`, `τₙ₊₁ = b`.
pub fn optimal_knots(n: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::OutOfRange("need at least one knot".into()));
    }
    let len = b - a;
    let t: Vec<f64> = (1..=n).map(|k| a + (2 * k - 1) as f64 * len / (2 * n) as f64).collect();
    Ok((t.clone(), cell_bounds(&t, a, b)))
}

pub fn cell_bounds(knots: &[f64], a: f64, b: f64) -> Vec<f64> {
    let mut tau = Vec::with_capacity(knots.len() + 1);
    tau.push(a);
    tau.extend(knots.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    tau.push(b);
    tau
}

/// Checks `a ≤ t₁−h < t₁+h < t₂−h < … < tₙ+h ≤ b`.
pub fn check_knots(knots: &[f64], h: f64, a: f64, b: f64) -> Result<()> {
    if knots.is_empty() || !(h > 0.0) {
        return Err(Error::KnotViolation("need knots and h > 0".into()));
    }
    let tol = 1e-12 * (b - a);
    if knots[0] - h < a - tol || knots[knots.len() - 1] + h > b + tol {
        return Err(Error::KnotViolation(format!("windows of half-width {h} leave [{a}, {b}]")));
    }
    if let Some(w) = knots.windows(2).find(|w| !(w[0] + h < w[1] - h)) {
        return Err(Error::KnotViolation(format!("windows around {} and {} overlap", w[0], w[1])));
    }
    Ok(())
}

/// `∫_u^v p(dist(s, points)) ds`, given `prim(d) = ∫₀^d p` and sorted points.
pub(crate) fn nearest_integral(points: &[f64], u: f64, v: f64, prim: &dyn Fn(f64) -> f64) -> f64 {
    if v <= u {
        return 0.0;
    }
    let mut cuts = vec![u];
    for (i, &p) in points.iter().enumerate() {
        if p > u && p < v {
            cuts.push(p);
        }
        if let Some(&q) = points.get(i + 1) {
            let m = 0.5 * (p + q);
            if m > u && m < v {
                cuts.push(m);
            }
        }
    }
    cuts.push(v);
    cuts.sort_by(f64::total_cmp);
    let mut acc = 0.0;
    for w in cuts.windows(2) {
        let (x, y) = (w[0], w[1]);
        let mid = 0.5 * (x + y);
        let k = points.partition_point(|&p| p < mid);
        let near = match (k.checked_sub(1).map(|j| points[j]), points.get(k)) {
            (Some(l), Some(&r)) => {
                if mid - l <= r - mid {
                    l
                } else {
                    r
                }
            }
            (Some(l), None) => l,
            (None, Some(&r)) => r,
            (None, None) => unreachable!("points are nonempty"),
        };
        acc += if near <= x {
            prim(y - near) - prim(x - near)
        } else {
            prim(near - x) - prim(near - y)
        };
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "problem")]
pub enum Problem {
    Convexify { n: usize, h: f64 },
    Integral { n: usize, h: f64 },
    Identity { n: usize },
    Derivative { n: usize },
}

/// A class member with its Hukuhara derivative when it has one.
#[derive(Clone, Debug)]
pub struct Sample {
    pub f: GridFunction,
    pub df: Option<GridFunction>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecoveryReport {
    #[serde(flatten)]
    pub problem: Problem,
    pub theoretical: f64,
    pub empirical_upper: f64,
    pub lower_bound: f64,
    /// `theoretical − lower_bound`.
    pub gap: f64,
    pub sharp: bool,
}

fn max_over<F: Fn(usize) -> Result<f64>>(n: usize, f: F) -> Result<f64> {
    let mut best: f64 = 0.0;
    for i in 0..=n {
        best = best.max(f(i)?);
    }
    Ok(best)
}

impl Problem {
    pub fn name(&self) -> &'static str {
        match self {
            Problem::Convexify { .. } => "convexify",
            Problem::Integral { .. } => "integral",
            Problem::Identity { .. } => "identity",
            Problem::Derivative { .. } => "derivative",
        }
    }

    /// Whether samples must come from `W¹H^ω` rather than `H^ω`.
    pub fn needs_derivative(&self) -> bool {
        matches!(self, Problem::Identity { .. } | Problem::Derivative { .. })
    }

    pub fn theoretical(&self, omega: &Modulus, a: f64, b: f64) -> Result<f64> {
        let len = b - a;
        match *self {
            Problem::Convexify { n, h } => error_convexify(n, h, omega, len),
            Problem::Integral { n, h } => error_integral(n, h, omega, len),
            Problem::Identity { n } => Ok(polyline_uniform_error(n, omega, len)),
            Problem::Derivative { n } => Ok(derivative_recovery_value(n, omega, len)),
        }
    }

    /// Whether the theoretical value is known to be attained for this ω.
    pub fn sharp(&self, omega: &Modulus) -> bool {
        match self {
            Problem::Convexify { .. } | Problem::Derivative { .. } => true,
            Problem::Integral { .. } | Problem::Identity { .. } => omega.is_concave(),
        }
    }

    /// Error of the optimal method on one class member.
    pub fn method_error(&self, s: &Sample) -> Result<f64> {
        let f = &s.f;
        let (a, b) = f.domain();
        match *self {
            Problem::Convexify { n, h } => {
                let (t, _) = optimal_knots(n, a, b)?;
                let info = MeanInfo::observe(f, &t, h)?;
                max_over(f.n(), |i| {
                    let u = f.node(i);
                    f.values()[i].convexify().dist(&convexify_method(&info, a, b, u))
                })
            }
            Problem::Integral { n, h } => {
                let (t, _) = optimal_knots(n, a, b)?;
                let info = MeanInfo::observe(f, &t, h)?;
                f.integrate_all().dist(&recover_integral(&info, a, b)?)
            }
            Problem::Identity { n } => {
                let p = Partition::uniform(n, a, b)?;
                let l = polyline(&p, p.nodes().iter().map(|&t| f.eval(t)).collect())?;
                max_over(f.n(), |i| f.values()[i].dist(&l.eval(f.node(i))))
            }
            Problem::Derivative { n } => {
                let df = s
                    .df
                    .as_ref()
                    .ok_or_else(|| Error::InvalidElement("derivative recovery needs the derivative".into()))?;
                let p = Partition::uniform(n, a, b)?;
                let d = polyline_derivative(&p, p.nodes().iter().map(|&t| f.eval(t)).collect())?;
                max_over(df.n(), |i| df.values()[i].convexify().dist(&d.eval(df.node(i))))
            }
        }
    }

    /// Half the distance between the targets of the extremal pair `(f)ₓ`, `(f)ₓ′`,
    /// which share their information.
    pub fn lower_bound(&self, omega: &Modulus, a: f64, b: f64, grid: usize, x: &Element) -> Result<f64> {
        let lift_pair = |f: &GridFunction| -> Result<(GridFunction, GridFunction)> {
            let neg = GridFunction::from_real_values(a, b, f.real_values().unwrap().iter().map(|v| -v).collect())?;
            Ok((f.lift(x)?, neg.lift(x)?))
        };
        match *self {
            Problem::Convexify { n, h } => {
                let (t, _) = optimal_knots(n, a, b)?;
                let (hi, lo) = lift_pair(&lower_extremal_mean(&t, h, a, b, omega, grid)?)?;
                Ok(0.5 * max_over(grid, |i| hi.values()[i].convexify().dist(&lo.values()[i].convexify()))?)
            }
            Problem::Integral { n, h } => {
                let (t, _) = optimal_knots(n, a, b)?;
                let (hi, lo) = lift_pair(&lower_extremal_integral(&t, h, a, b, omega, grid)?)?;
                Ok(0.5 * hi.integrate_all().dist(&lo.integrate_all())?)
            }
            Problem::Identity { n } => {
                let p = Partition::uniform(n, a, b)?;
                let (hi, lo) = lift_pair(&omega_spline(&p, omega)?.sample(grid)?)?;
                Ok(0.5 * hi.max_dist(&lo)?)
            }
            Problem::Derivative { n } => {
                let (_, g) = derivative_extremal(n, omega, a, b, grid)?;
                let (hi, lo) = lift_pair(&g)?;
                Ok(0.5 * hi.values()[0].dist(&lo.values()[0])?)
            }
        }
    }

    /// The theoretical value and extremal lower bound, with the worst error over `samples`.
    pub fn report(
        &self,
        omega: &Modulus,
        a: f64,
        b: f64,
        grid: usize,
        x: &Element,
        samples: &[Sample],
    ) -> Result<RecoveryReport> {
        let theoretical = self.theoretical(omega, a, b)?;
        let lower_bound = self.lower_bound(omega, a, b, grid, x)?;
        let mut empirical_upper: f64 = 0.0;
        for s in samples {
            empirical_upper = empirical_upper.max(self.method_error(s)?);
        }
        Ok(RecoveryReport {
            problem: *self,
            theoretical,
            empirical_upper,
            lower_bound,
            gap: theoretical - lower_bound,
            sharp: self.sharp(omega),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimal_knot_examples() {
        let (t, tau) = optimal_knots(2, 0.0, 1.0).unwrap();
        assert_eq!(t, vec![0.25, 0.75]);
        assert_eq!(tau, vec![0.0, 0.5, 1.0]);
        assert_eq!(optimal_knots(1, 0.0, 1.0).unwrap().0, vec![0.5]);
        assert_eq!(optimal_knots(4, 0.0, 2.0).unwrap().0, vec![0.25, 0.75, 1.25, 1.75]);
        assert!(optimal_knots(0, 0.0, 1.0).is_err());
    }

    #[test]
    fn knot_conditions() {
        assert!(check_knots(&[0.25, 0.75], 0.25, 0.0, 1.0).is_err());
        assert!(check_knots(&[0.25, 0.75], 0.2, 0.0, 1.0).is_ok());
        assert!(check_knots(&[0.1, 0.75], 0.2, 0.0, 1.0).is_err());
    }

    #[test]
    fn nearest_integral_matches_quadrature() {
        let w = Modulus::power(1.0, 0.5).unwrap();
        let pts = [0.1, 0.35, 0.9];
        let exact = nearest_integral(&pts, 0.0, 1.0, &|d| w.i0(d));
        let m = 200_000;
        let quad: f64 = (0..m)
            .map(|i| {
                let s = (i as f64 + 0.5) / m as f64;
                let d = pts.iter().map(|p| (s - p).abs()).fold(f64::INFINITY, f64::min);
                w.w(d) / m as f64
            })
            .sum();
        assert!((exact - quad).abs() < 1e-7);
    }

    #[test]
    fn recovery_values_on_the_unit_segment() {
        let lin = Modulus::linear();
        let x = Element::Real(1.0);
        let cases = [
            (Problem::Convexify { n: 2, h: 0.1 }, 0.25),
            (Problem::Integral { n: 2, h: 0.05 }, 0.1),
            (Problem::Identity { n: 2 }, 1.0 / 32.0),
            (Problem::Derivative { n: 4 }, 0.125),
        ];
        for (p, want) in cases {
            let v = p.theoretical(&lin, 0.0, 1.0).unwrap();
            assert!((v - want).abs() < 1e-15, "{p:?}: {v}");
            let lb = p.lower_bound(&lin, 0.0, 1.0, 4096, &x).unwrap();
            assert!(lb >= want - 1e-3 && lb <= want + 1e-3, "{p:?}: lower bound {lb}");
        }
    }
}
