use crate::error::{Error, Result};
use crate::gridfn::GridFunction;
use crate::lspace::Element;
use crate::modulus::Modulus;
use crate::ostrowski::point_vs_mean_bound;

use super::nearest_integral;

/// Largest admissible `|G(tᵢ)|` for a searched ω-spline.
pub const SPLINE_RESIDUAL: f64 = 1e-7;

const MAX_SWEEPS: usize = 10_000;

/// `a = t₀ < t₁ < … < tₙ = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    nodes: Vec<f64>,
}

impl Partition {
    pub fn new(nodes: Vec<f64>) -> Result<Partition> {
        if nodes.len() < 2 || nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid("partition nodes must increase strictly".into()));
        }
        Ok(Partition { nodes })
    }

    pub fn uniform(n: usize, a: f64, b: f64) -> Result<Partition> {
        if n == 0 {
            return Err(Error::OutOfRange("need at least one segment".into()));
        }
        Partition::new((0..=n).map(|k| a + (b - a) * k as f64 / n as f64).collect())
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Number of segments.
    pub fn n(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.nodes[0], self.nodes[self.n()])
    }

    pub fn is_uniform(&self) -> bool {
        let (a, b) = self.domain();
        let step = (b - a) / self.n() as f64;
        self.nodes
            .iter()
            .enumerate()
            .all(|(k, &t)| (t - (a + step * k as f64)).abs() <= 1e-12 * (b - a))
    }

    /// Index `k` with `t ∈ [tₖ, tₖ₊₁)`, the last segment at `b`.
    pub fn segment(&self, t: f64) -> usize {
        self.nodes[1..self.n()].partition_point(|&x| x <= t)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    partition: Partition,
    values: Vec<Element>,
}

impl Polyline {
    pub fn eval(&self, t: f64) -> Element {
        let k = self.partition.segment(t);
        let (t0, t1) = (self.partition.nodes[k], self.partition.nodes[k + 1]);
        let s = ((t - t0) / (t1 - t0)).clamp(0.0, 1.0);
        if s == 0.0 {
            return self.values[k].clone();
        }
        if s == 1.0 {
            return self.values[k + 1].clone();
        }
        self.values[k]
            .scale(1.0 - s)
            .add(&self.values[k + 1].scale(s))
            .expect("values share a model")
    }

    pub fn sample(&self, grid: usize) -> Result<GridFunction> {
        let (a, b) = self.partition.domain();
        GridFunction::from_fn(a, b, grid, |t| self.eval(t))
    }
}

fn check_values(p: &Partition, values: &[Element]) -> Result<()> {
    if values.len() != p.nodes.len() {
        return Err(Error::InvalidGrid(format!("{} values for {} nodes", values.len(), p.nodes.len())));
    }
    if let Some(v) = values.iter().find(|v| !v.is_convex()) {
        return Err(Error::NonConvex(v.to_string()));
    }
    for v in &values[1..] {
        values[0].dist(v)?;
    }
    Ok(())
}

/// Interpolating polyline through convex node values.
pub fn polyline(p: &Partition, values: Vec<Element>) -> Result<Polyline> {
    check_values(p, &values)?;
    Ok(Polyline {
        partition: p.clone(),
        values,
    })
}

/// `(tₖ₊₁ − t)(t − tₖ)/(tₖ₊₁ − tₖ)² ∫₀^{tₖ₊₁−tₖ} ω`.
pub fn polyline_error(t: f64, tk: f64, tk1: f64, omega: &Modulus) -> f64 {
    let d = tk1 - tk;
    (tk1 - t) * (t - tk) / (d * d) * omega.i0(d)
}

/// `¼ ∫₀^{L/n} ω`.
pub fn polyline_uniform_error(n: usize, omega: &Modulus, len: f64) -> f64 {
    0.25 * omega.i0(len / n as f64)
}

/// Segment quotients `(f(tₖ₊₁) −_H f(tₖ)) / (tₖ₊₁ − tₖ)`; the last one also at `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolylineDerivative {
    partition: Partition,
    slopes: Vec<Element>,
}

impl PolylineDerivative {
    pub fn eval(&self, t: f64) -> Element {
        self.slopes[self.partition.segment(t)].clone()
    }

    pub fn slopes(&self) -> &[Element] {
        &self.slopes
    }
}

pub fn polyline_derivative(p: &Partition, values: Vec<Element>) -> Result<PolylineDerivative> {
    check_values(p, &values)?;
    let slopes = (0..p.n())
        .map(|k| {
            let d = p.nodes[k + 1] - p.nodes[k];
            values[k + 1].hukuhara_diff(&values[k]).map(|z| z.scale(1.0 / d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolylineDerivative {
        partition: p.clone(),
        slopes,
    })
}

/// `(tₖ₊₁ − tₖ)⁻¹ ∫_{tₖ}^{tₖ₊₁} ω(|s − t|) ds`.
pub fn derivative_error_bound(tk: f64, tk1: f64, t: f64, omega: &Modulus) -> Result<f64> {
    point_vs_mean_bound(t, tk, tk1, omega)
}

/// `n/L ∫₀^{L/n} ω`.
pub fn derivative_recovery_value(n: usize, omega: &Modulus, len: f64) -> f64 {
    n as f64 / len * omega.i0(len / n as f64)
}

/// `f = ∫_a^t g` and `g = g₀ − mean g₀` with `g₀ = ω(dist(·, even uniform nodes))`;
/// `f` vanishes at all uniform nodes.
pub fn derivative_extremal(
    n: usize,
    omega: &Modulus,
    a: f64,
    b: f64,
    grid: usize,
) -> Result<(GridFunction, GridFunction)> {
    let p = Partition::uniform(n, a, b)?;
    let even: Vec<f64> = p.nodes.iter().step_by(2).copied().collect();
    let prim = |d: f64| omega.i0(d);
    let mean = nearest_integral(&even, a, b, &prim) / (b - a);
    let dist = |t: f64| even.iter().map(|e| (t - e).abs()).fold(f64::INFINITY, f64::min);
    let f = GridFunction::from_real(a, b, grid, |t| nearest_integral(&even, a, t, &prim) - mean * (t - a))?;
    let g = GridFunction::from_real(a, b, grid, |t| omega.w(dist(t)) - mean)?;
    Ok((f, g))
}

/// `G(t) = ∫_a^t g`, where `g = ±½ω(2·dist(·, η))` with the sign alternating
/// across the points `η₁ < … < ηₙ`, positive on `[a, η₁]`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaSpline {
    a: f64,
    b: f64,
    eta: Vec<f64>,
    omega: Modulus,
}

impl OmegaSpline {
    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    fn regions(&self) -> Vec<f64> {
        let mut r = Vec::with_capacity(self.eta.len() + 2);
        r.push(self.a);
        r.extend_from_slice(&self.eta);
        r.push(self.b);
        r
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let i = self.eta.partition_point(|&e| e < t);
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let d = self.eta.iter().map(|e| (t - e).abs()).fold(f64::INFINITY, f64::min);
        sign * 0.5 * self.omega.w(2.0 * d)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let prim = |d: f64| 0.25 * self.omega.i0(2.0 * d);
        let r = self.regions();
        let mut acc = 0.0;
        for i in 0..r.len() - 1 {
            if r[i] >= t {
                break;
            }
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * nearest_integral(&self.eta, r[i], t.min(r[i + 1]), &prim);
        }
        acc
    }

    pub fn sample(&self, grid: usize) -> Result<GridFunction> {
        GridFunction::from_real(self.a, self.b, grid, |t| self.eval(t))
    }

    pub fn derivative_sample(&self, grid: usize) -> Result<GridFunction> {
        GridFunction::from_real(self.a, self.b, grid, |t| self.derivative(t))
    }

    /// `max |G(tᵢ)|` over the partition nodes.
    pub fn residual(&self, p: &Partition) -> f64 {
        p.nodes.iter().map(|&t| self.eval(t).abs()).fold(0.0, f64::max)
    }
}

/// ω-spline vanishing at the partition nodes: closed form for uniform partitions,
/// coordinate bisection on the η-points otherwise.
pub fn omega_spline(p: &Partition, omega: &Modulus) -> Result<OmegaSpline> {
    omega.require_concave()?;
    let (a, b) = p.domain();
    let t = &p.nodes;
    let n = p.n();
    let mut s = OmegaSpline {
        a,
        b,
        eta: (0..n).map(|i| 0.5 * (t[i] + t[i + 1])).collect(),
        omega: omega.clone(),
    };
    if p.is_uniform() {
        return Ok(s);
    }
    for _ in 0..MAX_SWEEPS {
        if s.residual(p) < SPLINE_RESIDUAL {
            return Ok(s);
        }
        for i in 0..n {
            let target = t[i + 1];
            let at = |x: f64, s: &mut OmegaSpline| {
                s.eta[i] = x;
                s.eval(target)
            };
            let (mut lo, mut hi) = (t[i], t[i + 1]);
            let flo = at(lo, &mut s);
            let fhi = at(hi, &mut s);
            if flo * fhi > 0.0 {
                s.eta[i] = if flo.abs() < fhi.abs() { lo } else { hi };
                continue;
            }
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let fm = at(mid, &mut s);
                if fm * flo > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            s.eta[i] = 0.5 * (lo + hi);
        }
    }
    Err(Error::SearchFailed(format!(
        "node residual {:.3e} after {MAX_SWEEPS} sweeps",
        s.residual(p)
    )))
}
