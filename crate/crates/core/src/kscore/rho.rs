use crate::error::{Error, Result};
use crate::modulus::Modulus;

use super::weight::StepWeight;

/// Relative tolerance for the equal-mass condition.
pub const MASS_TOL: f64 = 1e-10;

/// The map ρ: `[a, c] → [c, b]` balancing the masses of ψ₁ on `[a, s]` and ψ₂
/// on `[ρ(s), b]`, continued by `ρ(s) = a′ + b′ − s` on `[a′, c]`.
///
/// With step weights ρ is piecewise affine; `nodes` holds its breakpoints on
/// `[a, a′]` from `(a, b)` to `(a′, b′)`, and `heights[k]` the constant values of
/// ψ₁ and ψ₂ on the k-th piece.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoMap {
    pub a: f64,
    pub a1: f64,
    pub b1: f64,
    pub b: f64,
    pub c: f64,
    pub nodes: Vec<(f64, f64)>,
    pub heights: Vec<(f64, f64)>,
}

fn levels(w: &StepWeight, from_left: bool) -> Vec<(f64, f64, f64)> {
    // (mass at start, mass at end, height) along the chosen direction
    let mut out = Vec::new();
    let mut m = 0.0;
    let pieces: Vec<_> = if from_left {
        w.pieces().to_vec()
    } else {
        w.pieces().iter().rev().copied().collect()
    };
    for (lo, hi, h) in pieces {
        let dm = h * (hi - lo);
        out.push((m, m + dm, h));
        m += dm;
    }
    out
}

impl RhoMap {
    pub fn solve(psi1: &StepWeight, psi2: &StepWeight) -> Result<RhoMap> {
        let (a, a1) = psi1.support();
        let (b1, b) = psi2.support();
        if !(a < a1 && a1 <= b1 && b1 < b) {
            return Err(Error::BadSupportOrder(a, a1, b1, b));
        }
        for w in [psi1, psi2] {
            if !w.is_positive_on_support() {
                return Err(Error::InvalidWeight("weight must be positive almost everywhere on its support".into()));
            }
        }
        let (m1, m2) = (psi1.mass(), psi2.mass());
        if (m1 - m2).abs() > MASS_TOL * m1.max(m2).max(1.0) {
            return Err(Error::MassMismatch(m1, m2));
        }
        let l1 = levels(psi1, true);
        let l2 = levels(psi2, false);
        let pos1 = |m: f64| -> (f64, usize) {
            let k = l1.iter().position(|p| m <= p.1).unwrap_or(l1.len() - 1);
            let (lo, _, _) = psi1.pieces()[k];
            (lo + (m - l1[k].0) / l1[k].2, k)
        };
        let pieces2: Vec<_> = psi2.pieces().iter().rev().copied().collect();
        let pos2 = |m: f64| -> (f64, usize) {
            let k = l2.iter().position(|p| m <= p.1).unwrap_or(l2.len() - 1);
            let (_, hi, _) = pieces2[k];
            (hi - (m - l2[k].0) / l2[k].2, k)
        };
        let total = m1.min(m2);
        let tiny = 1e-13 * total.max(1.0);
        let mut masses: Vec<f64> = l1
            .iter()
            .map(|p| p.1)
            .chain(l2.iter().map(|p| p.1))
            .filter(|&m| m < total - tiny)
            .collect();
        masses.push(0.0);
        masses.push(total);
        masses.sort_by(f64::total_cmp);
        masses.dedup_by(|x, y| (*x - *y).abs() <= tiny);
        let mut nodes = Vec::with_capacity(masses.len());
        let mut heights = Vec::with_capacity(masses.len());
        for (i, &m) in masses.iter().enumerate() {
            let (s, _) = pos1(m);
            let (r, _) = pos2(m);
            nodes.push((s, r));
            if i + 1 < masses.len() {
                let mid = 0.5 * (m + masses[i + 1]);
                heights.push((l1[pos1(mid).1].2, l2[pos2(mid).1].2));
            }
        }
        // pin the ends exactly
        nodes[0] = (a, b);
        *nodes.last_mut().unwrap() = (a1, b1);
        Ok(RhoMap {
            a,
            a1,
            b1,
            b,
            c: 0.5 * (a1 + b1),
            nodes,
            heights,
        })
    }

    pub fn rho(&self, s: f64) -> f64 {
        if s >= self.a1 {
            return self.a1 + self.b1 - s;
        }
        for (k, w) in self.nodes.windows(2).enumerate() {
            let ((s0, r0), (s1, _)) = (w[0], w[1]);
            if s <= s1 {
                let (h1, h2) = self.heights[k];
                return r0 - (h1 / h2) * (s.max(s0) - s0);
            }
        }
        self.b1
    }

    pub fn rho_inv(&self, t: f64) -> f64 {
        if t <= self.b1 {
            return self.a1 + self.b1 - t;
        }
        for (k, w) in self.nodes.windows(2).enumerate() {
            let ((s0, r0), (_, r1)) = (w[0], w[1]);
            if t >= r1 {
                let (h1, h2) = self.heights[k];
                return s0 + (h2 / h1) * (r0 - t.min(r0));
            }
        }
        self.a
    }

    /// `∫_a^{a′} ψ₁(s) ω(ρ(s) − s) ds`, exact.
    pub fn bound(&self, omega: &Modulus) -> f64 {
        let mut acc = 0.0;
        for (k, w) in self.nodes.windows(2).enumerate() {
            let ((s0, r0), (s1, r1)) = (w[0], w[1]);
            let (h1, h2) = self.heights[k];
            // ρ(s) − s has slope −(h1/h2) − 1 on this piece
            let slope = h1 / h2 + 1.0;
            acc += h1 / slope * (omega.i0(r0 - s0) - omega.i0(r1 - s1));
        }
        acc
    }

    /// `∫_{b′}^b ψ₂(t) ω(t − ρ⁻¹(t)) dt`, exact and computed independently of [`RhoMap::bound`].
    pub fn dual_bound(&self, omega: &Modulus) -> f64 {
        let mut acc = 0.0;
        for (k, w) in self.nodes.windows(2).enumerate() {
            let ((_, r0), (_, r1)) = (w[0], w[1]);
            let (h1, h2) = self.heights[k];
            let m = |t: f64| t - self.rho_inv(t);
            let slope = 1.0 + h2 / h1;
            acc += h2 / slope * (omega.i0(m(r0)) - omega.i0(m(r1)));
        }
        acc
    }

    /// The extremal profile: `−∫_t^c ω′(ρ(s) − s) ds` on `[a, c]` and
    /// `∫_c^t ω′(s − ρ⁻¹(s)) ds` on `[c, b]`, constant outside `[a, b]`.
    pub fn extremal(&self, omega: &Modulus, t: f64) -> f64 {
        let t = t.clamp(self.a, self.b);
        let gap = self.b1 - self.a1;
        if t >= self.a1 && t <= self.b1 {
            let u = (2.0 * t - self.a1 - self.b1).abs();
            return 0.5 * omega.w(u).copysign(t - self.c);
        }
        let base = 0.5 * omega.w(gap);
        if t < self.a1 {
            let mut g = -base;
            for (k, w) in self.nodes.windows(2).enumerate().rev() {
                let ((s0, _), (s1, r1)) = (w[0], w[1]);
                let (h1, h2) = self.heights[k];
                let slope = h1 / h2 + 1.0;
                let lo = t.max(s0);
                g -= (omega.w(self.rho(lo) - lo) - omega.w(r1 - s1)) / slope;
                if t >= s0 {
                    return g;
                }
            }
            g
        } else {
            let mut g = base;
            for (k, w) in self.nodes.windows(2).enumerate().rev() {
                let ((_, r0), (s1, r1)) = (w[0], w[1]);
                let (h1, h2) = self.heights[k];
                let slope = 1.0 + h2 / h1;
                let hi = t.min(r0);
                g += (omega.w(hi - self.rho_inv(hi)) - omega.w(r1 - s1)) / slope;
                if t <= r0 {
                    return g;
                }
            }
            g
        }
    }
}
