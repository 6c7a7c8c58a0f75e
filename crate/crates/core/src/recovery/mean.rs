use crate::error::{Error, Result};
use crate::gridfn::{GridFunction, Interp};
use crate::lspace::Element;
use crate::modulus::Modulus;
use crate::ostrowski::point_vs_mean_bound;

use super::{cell_bounds, check_knots};

/// Local means `(2h)⁻¹ ∫_{tₖ−h}^{tₖ+h} f` at admissible knots.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanInfo {
    pub knots: Vec<f64>,
    pub h: f64,
    pub means: Vec<Element>,
}

impl MeanInfo {
    pub fn new(knots: Vec<f64>, h: f64, means: Vec<Element>, a: f64, b: f64) -> Result<MeanInfo> {
        check_knots(&knots, h, a, b)?;
        if means.len() != knots.len() {
            return Err(Error::KnotViolation(format!("{} means for {} knots", means.len(), knots.len())));
        }
        Ok(MeanInfo { knots, h, means })
    }

    pub fn observe(f: &GridFunction, knots: &[f64], h: f64) -> Result<MeanInfo> {
        let (a, b) = f.domain();
        check_knots(knots, h, a, b)?;
        let means = knots
            .iter()
            .map(|&t| f.mean(t - h, t + h))
            .collect::<Result<Vec<_>>>()?;
        Ok(MeanInfo {
            knots: knots.to_vec(),
            h,
            means,
        })
    }
}

/// The cell-mean method: the k-th mean on `[τₖ, τₖ₊₁]`.
pub fn convexify_method(info: &MeanInfo, a: f64, b: f64, u: f64) -> Element {
    let tau = cell_bounds(&info.knots, a, b);
    let inner = &tau[1..tau.len() - 1];
    info.means[inner.partition_point(|&x| x <= u)].clone()
}

pub fn recover_convexify(info: &MeanInfo, a: f64, b: f64, grid: usize) -> Result<GridFunction> {
    let values = (0..=grid)
        .map(|i| convexify_method(info, a, b, a + (b - a) * i as f64 / grid as f64))
        .collect();
    GridFunction::with_interp(a, b, values, Interp::Step)
}

/// `(b−a)/n · Σ` of the means.
pub fn recover_integral(info: &MeanInfo, a: f64, b: f64) -> Result<Element> {
    let mut acc = info.means[0].clone();
    for m in &info.means[1..] {
        acc = acc.add(m)?;
    }
    Ok(acc.scale((b - a) / info.means.len() as f64))
}

fn check_width(n: usize, h: f64, len: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::OutOfRange("need at least one knot".into()));
    }
    let half = len / (2 * n) as f64;
    if !(h > 0.0) || h > half * (1.0 + 1e-12) {
        return Err(Error::KnotViolation(format!("h = {h} must lie in (0, {half}]")));
    }
    Ok(half)
}

/// `(2h)⁻¹ ∫_{L/(2n)−h}^{L/(2n)+h} ω`.
pub fn error_convexify(n: usize, h: f64, omega: &Modulus, len: f64) -> Result<f64> {
    let half = check_width(n, h, len)?;
    Ok((omega.i0(half + h) - omega.i0((half - h).max(0.0))) / (2.0 * h))
}

/// `2n (1 − 2nh/L) ∫₀^{L/(2n)} ω`.
pub fn error_integral(n: usize, h: f64, omega: &Modulus, len: f64) -> Result<f64> {
    let half = check_width(n, h, len)?;
    Ok(2.0 * n as f64 * (1.0 - h / half).max(0.0) * omega.i0(half))
}

struct MeanExtremal<'a> {
    knots: &'a [f64],
    h: f64,
    lo: f64,
    hi: f64,
    peak: f64,
    top: f64,
    omega: &'a Modulus,
}

impl MeanExtremal<'_> {
    fn eval(&self, u: f64) -> f64 {
        let (t, h) = (self.knots, self.h);
        if u >= self.lo && u <= self.hi {
            return self.top - self.omega.w((u - self.peak).abs());
        }
        if u > self.hi {
            return match t.iter().position(|&tk| tk + h >= u) {
                Some(k) if u < t[k] - h => self.eval(t[k - 1] + h),
                Some(k) => self.eval(t[k - 1] + t[k] - u),
                None => self.eval(t[t.len() - 1] + h),
            };
        }
        match t.iter().rposition(|&tk| tk - h <= u) {
            Some(k) if u > t[k] + h => self.eval(t[k + 1] - h),
            Some(k) => self.eval(t[k] + t[k + 1] - u),
            None => self.eval(t[0] - h),
        }
    }
}

/// A real member of `H^ω` with vanishing local means at the knots, peaking at the
/// cell boundary farthest from its knot; constant on gaps and mirrored across windows.
pub fn lower_extremal_mean(
    knots: &[f64],
    h: f64,
    a: f64,
    b: f64,
    omega: &Modulus,
    grid: usize,
) -> Result<GridFunction> {
    check_knots(knots, h, a, b)?;
    let n = knots.len();
    let tau = cell_bounds(knots, a, b);
    // the longest of [τᵢ, tᵢ] and [tᵢ, τᵢ₊₁]; j indexes its τ end
    let mut best = (f64::NEG_INFINITY, 0usize);
    for i in 0..n {
        for (len, j) in [(knots[i] - tau[i], i), (tau[i + 1] - knots[i], i + 1)] {
            if len > best.0 {
                best = (len, j);
            }
        }
    }
    let j = best.1;
    let peak = tau[j];
    let lo = if j == 0 { a } else { knots[j - 1] - h };
    let hi = if j == n { b } else { knots[j] + h };
    let k = j.min(n - 1);
    let top = point_vs_mean_bound(peak, knots[k] - h, knots[k] + h, omega)?;
    let ext = MeanExtremal {
        knots,
        h,
        lo,
        hi,
        peak,
        top,
        omega,
    };
    GridFunction::from_real(a, b, grid, |u| ext.eval(u))
}

/// A real member of `H^ω` with vanishing local means at the knots and large integral,
/// built from translates of the even profile `y₀`.
pub fn lower_extremal_integral(
    knots: &[f64],
    h: f64,
    a: f64,
    b: f64,
    omega: &Modulus,
    grid: usize,
) -> Result<GridFunction> {
    omega.require_concave()?;
    check_knots(knots, h, a, b)?;
    let n = knots.len() as f64;
    let len = b - a;
    let half = len / (2.0 * n);
    let y0 = |t: f64| {
        let t = t.abs().min(half);
        if t <= h {
            -(2.0 * n * h / len) * omega.w(len / (2.0 * n * h) * (h - t))
        } else {
            let r = (len - 2.0 * n * h) / len;
            r * omega.w((t - h) / r)
        }
    };
    let shift = 4.0 * n * n * h / (len * len) * omega.i0(half);
    let s = cell_bounds(knots, a, b);
    GridFunction::from_real(a, b, grid, |u| {
        let k = s[1..s.len() - 1].partition_point(|&x| x <= u);
        y0(u - knots[k]) + shift
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recovery::optimal_knots;

    #[test]
    fn error_values() {
        let lin = Modulus::linear();
        assert!((error_convexify(2, 0.1, &lin, 1.0).unwrap() - 0.25).abs() < 1e-15);
        assert!((error_convexify(1, 0.5, &lin, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((error_integral(2, 0.05, &lin, 1.0).unwrap() - 0.1).abs() < 1e-15);
        assert!(error_integral(2, 0.25, &lin, 1.0).unwrap().abs() < 1e-15);
        assert!(error_integral(2, 0.3, &lin, 1.0).is_err());
    }

    #[test]
    fn constant_functions_are_recovered_exactly() {
        let f = GridFunction::new(0.0, 1.0, vec![Element::interval(0.0, 1.0).unwrap(); 65]).unwrap();
        let (t, _) = optimal_knots(2, 0.0, 1.0).unwrap();
        let info = MeanInfo::observe(&f, &t, 0.1).unwrap();
        assert!(recover_integral(&info, 0.0, 1.0).unwrap().approx_eq(&Element::interval(0.0, 1.0).unwrap(), 1e-14));
        let r = recover_convexify(&info, 0.0, 1.0, 64).unwrap();
        assert!(r.max_dist(&f).unwrap() < 1e-14);
    }

    #[test]
    fn mean_extremal_vanishing_means_and_height() {
        let lin = Modulus::linear();
        let sq = Modulus::power(1.0, 0.5).unwrap();
        for omega in [lin, sq] {
            for (knots, h) in [(vec![0.25, 0.75], 0.1), (vec![0.5], 0.2), (vec![0.1, 0.45, 0.8], 0.05)] {
                let f = lower_extremal_mean(&knots, h, 0.0, 1.0, &omega, 4096).unwrap();
                for &t in &knots {
                    assert!(f.mean(t - h, t + h).unwrap().norm() < 1e-3, "{knots:?}");
                }
                assert!(f.check_homega(&omega, false).member, "{knots:?}");
                let want = error_convexify(knots.len(), h, &omega, 1.0).unwrap();
                assert!(f.sup_norm() >= want - 1e-9, "{knots:?}: {} < {want}", f.sup_norm());
            }
        }
        let f = lower_extremal_mean(&[0.5], 0.2, 0.0, 1.0, &Modulus::linear(), 100).unwrap();
        assert!((f.eval_real(0.0) - f.sup_norm()).abs() < 1e-15);
    }

    #[test]
    fn integral_extremal_vanishing_means_and_integral() {
        let lin = Modulus::linear();
        let (t, _) = optimal_knots(2, 0.0, 1.0).unwrap();
        let f = lower_extremal_integral(&t, 0.05, 0.0, 1.0, &lin, 4000).unwrap();
        for &k in &t {
            assert!(f.mean(k - 0.05, k + 0.05).unwrap().norm() < 1e-12);
        }
        assert!(f.check_homega(&lin, false).member);
        assert!((f.integrate_real(0.0, 1.0).unwrap() - 0.1).abs() < 1e-9);
        let skew = lower_extremal_integral(&[0.2, 0.7], 0.05, 0.0, 1.0, &lin, 4000).unwrap();
        assert!(skew.integrate_real(0.0, 1.0).unwrap() >= 0.1 - 1e-9);
        let bad = Modulus::piecewise_linear(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 1.2), (3.0, 2.0)]).unwrap();
        assert!(matches!(lower_extremal_integral(&t, 0.05, 0.0, 1.0, &bad, 64), Err(Error::NonConcave)));
    }
}
