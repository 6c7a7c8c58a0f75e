//! Continuous piecewise linear real functions on nonuniform breakpoints.
//!
//! This is the exact representation behind Ψ-functions, hats and
//! rearrangements: all of them are piecewise linear when the weights are
//! piecewise constant.

use crate::error::{Error, Result};
use crate::modulus::Modulus;

#[derive(Clone, Debug, PartialEq)]
pub struct Pl {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Pl {
    /// Breakpoints must be strictly increasing.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Pl> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::InvalidGrid("need at least two matching breakpoints".into()));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid("breakpoints must be strictly increasing".into()));
        }
        Ok(Pl { xs, ys })
    }

    /// Builds from points, dropping points whose abscissa repeats the previous one
    /// to within `1e-14`.
    pub fn from_points(points: &[(f64, f64)]) -> Result<Pl> {
        let mut xs: Vec<f64> = Vec::with_capacity(points.len());
        let mut ys: Vec<f64> = Vec::with_capacity(points.len());
        for &(x, y) in points {
            match xs.last() {
                Some(&last) if x <= last + 1e-14 => {
                    *ys.last_mut().unwrap() = y;
                }
                _ => {
                    xs.push(x);
                    ys.push(y);
                }
            }
        }
        Pl::new(xs, ys)
    }

    pub fn zero(a: f64, b: f64) -> Pl {
        Pl {
            xs: vec![a, b],
            ys: vec![0.0, 0.0],
        }
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    fn segment(&self, t: f64) -> usize {
        let n = self.xs.len();
        match self.xs.binary_search_by(|x| x.total_cmp(&t)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.clamp(1, n - 1) - 1,
        }
    }

    /// Value at `t`; constant continuation outside the domain.
    pub fn eval(&self, t: f64) -> f64 {
        let (a, b) = self.domain();
        if t <= a {
            return self.ys[0];
        }
        if t >= b {
            return *self.ys.last().unwrap();
        }
        let i = self.segment(t);
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        self.ys[i] + (self.ys[i + 1] - self.ys[i]) * (t - x0) / (x1 - x0)
    }

    pub fn slope(&self, i: usize) -> f64 {
        (self.ys[i + 1] - self.ys[i]) / (self.xs[i + 1] - self.xs[i])
    }

    /// `∫_c^d` of the function, with constant continuation outside the domain.
    pub fn integral(&self, c: f64, d: f64) -> f64 {
        if d < c {
            return -self.integral(d, c);
        }
        let (a, b) = self.domain();
        let mut acc = 0.0;
        if c < a {
            acc += self.ys[0] * (d.min(a) - c);
        }
        if d > b {
            acc += self.ys.last().unwrap() * (d - c.max(b));
        }
        let (lo, hi) = (c.max(a), d.min(b));
        if lo >= hi {
            return acc;
        }
        for i in 0..self.xs.len() - 1 {
            let (x0, x1) = (self.xs[i], self.xs[i + 1]);
            if x1 <= lo || x0 >= hi {
                continue;
            }
            let (u, v) = (x0.max(lo), x1.min(hi));
            acc += 0.5 * (self.eval_in(i, u) + self.eval_in(i, v)) * (v - u);
        }
        acc
    }

    fn eval_in(&self, i: usize, t: f64) -> f64 {
        self.ys[i] + self.slope(i) * (t - self.xs[i])
    }

    /// `∫ |f|` over the domain, splitting segments at sign changes.
    pub fn integral_abs(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.xs.len() - 1 {
            let (y0, y1) = (self.ys[i], self.ys[i + 1]);
            let h = self.xs[i + 1] - self.xs[i];
            if y0 * y1 >= 0.0 {
                acc += 0.5 * (y0.abs() + y1.abs()) * h;
            } else {
                let z = h * y0.abs() / (y0.abs() + y1.abs());
                acc += 0.5 * (y0.abs() * z + y1.abs() * (h - z));
            }
        }
        acc
    }

    pub fn variation(&self) -> f64 {
        self.ys.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }

    pub fn max(&self) -> f64 {
        self.ys.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.ys.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn abs_max(&self) -> f64 {
        self.ys.iter().map(|y| y.abs()).fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Pl {
        Pl {
            xs: self.xs.clone(),
            ys: self.ys.iter().map(|&y| f(y)).collect(),
        }
    }

    /// Pointwise sum over the union of breakpoints; the domain is the hull.
    pub fn sum(parts: &[Pl]) -> Option<Pl> {
        let mut xs: Vec<f64> = parts.iter().flat_map(|p| p.xs.iter().copied()).collect();
        if xs.is_empty() {
            return None;
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-14);
        if xs.len() < 2 {
            return None;
        }
        let ys = xs.iter().map(|&x| parts.iter().map(|p| p.eval(x)).sum()).collect();
        Some(Pl { xs, ys })
    }

    /// Restriction to `[c, d]` inside the domain.
    pub fn restrict(&self, c: f64, d: f64) -> Result<Pl> {
        let mut pts = vec![(c, self.eval(c))];
        for (&x, &y) in self.xs.iter().zip(&self.ys) {
            if x > c && x < d {
                pts.push((x, y));
            }
        }
        pts.push((d, self.eval(d)));
        Pl::from_points(&pts)
    }

    /// `∫_{x_0}^{x_end} f ω'` computed exactly by parts:
    /// `f(x_end) ω(x_end) − f(x_0) ω(x_0) − Σ slope_j (F(x_{j+1}) − F(x_j))`,
    /// where `F` is the primitive of ω. The domain must lie in `[0, ∞)`.
    pub fn integral_against_derivative(&self, omega: &Modulus) -> f64 {
        let (a, b) = self.domain();
        let mut acc = self.eval(b) * omega.w(b) - self.eval(a) * omega.w(a);
        for i in 0..self.xs.len() - 1 {
            acc -= self.slope(i) * (omega.i0(self.xs[i + 1]) - omega.i0(self.xs[i]));
        }
        acc
    }

    /// `∫ f' ω` over the domain, exact.
    pub fn derivative_against(&self, omega: &Modulus) -> f64 {
        (0..self.xs.len() - 1)
            .map(|i| self.slope(i) * (omega.i0(self.xs[i + 1]) - omega.i0(self.xs[i])))
            .sum()
    }

    /// Samples a function at `n + 1` uniform points of `[a, b]`.
    pub fn sample(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Result<Pl> {
        let xs: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
        let ys = xs.iter().map(|&x| f(x)).collect();
        Pl::new(xs, ys)
    }
}
