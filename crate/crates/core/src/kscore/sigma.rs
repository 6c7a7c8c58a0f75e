use crate::error::{Error, Result};
use crate::pl::Pl;

use super::rearrange::rearrange;

/// Tolerance for the pointwise, integral and variation identities of a decomposition.
pub const DECOMP_TOL: f64 = 1e-9;

/// One hat of a Σ-representation: `sign · profile` on `support`, zero elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct Hat {
    pub support: (f64, f64),
    pub sign: f64,
    /// `|φ|` on the support, vanishing at both ends.
    pub profile: Pl,
}

impl Hat {
    pub fn eval(&self, t: f64) -> f64 {
        if t <= self.support.0 || t >= self.support.1 {
            0.0
        } else {
            self.sign * self.profile.eval(t)
        }
    }

    pub fn len(&self) -> f64 {
        self.support.1 - self.support.0
    }

    pub fn height(&self) -> f64 {
        self.profile.max()
    }

    /// Whether the profile has a flat piece strictly below its maximum.
    pub fn has_inner_plateau(&self) -> bool {
        let top = self.height();
        let p = &self.profile;
        (0..p.len() - 1).any(|i| p.slope(i) == 0.0 && p.ys()[i] < top)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HatDecomposition {
    /// Hats ordered by the left end of their support.
    pub hats: Vec<Hat>,
    pub source: Pl,
}

impl HatDecomposition {
    pub fn eval(&self, t: f64) -> f64 {
        self.hats.iter().map(|h| h.eval(t)).sum()
    }

    /// Whether supports follow each other as `α₁ < β₁ ≤ α₂ < β₂ ≤ …` with alternating signs.
    pub fn is_chain(&self) -> bool {
        self.hats.windows(2).all(|w| {
            w[0].support.1 <= w[1].support.0 + 1e-12 && w[0].sign != w[1].sign
        })
    }

    /// Whether support lengths increase and then decrease.
    pub fn lengths_unimodal(&self) -> bool {
        let lens: Vec<f64> = self.hats.iter().map(Hat::len).collect();
        let tol = 1e-12;
        let mut i = 0;
        while i + 1 < lens.len() && lens[i + 1] >= lens[i] - tol {
            i += 1;
        }
        while i + 1 < lens.len() && lens[i + 1] <= lens[i] + tol {
            i += 1;
        }
        i + 1 >= lens.len()
    }

    /// `R(Ψ, ·) = Σ r(|φₖ|, ·)` on `[0, b − a]`.
    pub fn rearrangement(&self) -> Result<Pl> {
        let (a, b) = self.source.domain();
        let mut parts = self
            .hats
            .iter()
            .map(|h| rearrange(&h.profile))
            .collect::<Result<Vec<_>>>()?;
        parts.push(Pl::zero(0.0, b - a));
        Ok(Pl::sum(&parts).expect("nonempty"))
    }

    /// Checks properties 1–4 of a Σ-representation.
    pub fn verify(&self) -> Result<()> {
        let scale = self.source.abs_max().max(1.0);
        let tol = DECOMP_TOL * scale;
        let mut xs: Vec<f64> = self.source.xs().to_vec();
        for h in &self.hats {
            xs.extend_from_slice(h.profile.xs());
        }
        for &x in &xs {
            let s: f64 = self.hats.iter().map(|h| h.eval(x).abs()).sum();
            if (s - self.source.eval(x).abs()).abs() > tol {
                return Err(Error::CannotCertify(format!("Σ|φₖ| differs from |Ψ| at {x}")));
            }
        }
        let int: f64 = self.hats.iter().map(|h| h.profile.integral_abs()).sum();
        let var: f64 = self.hats.iter().map(|h| h.profile.variation()).sum();
        let (a, b) = self.source.domain();
        if (int - self.source.integral_abs()).abs() > tol * (b - a).max(1.0) {
            return Err(Error::CannotCertify("Σ∫|φₖ| differs from ∫|Ψ|".into()));
        }
        if (var - self.source.variation()).abs() > 10.0 * tol {
            return Err(Error::CannotCertify("ΣVar φₖ differs from Var Ψ".into()));
        }
        let mono: Vec<Vec<(f64, f64)>> = self
            .hats
            .iter()
            .map(|h| {
                let p = &h.profile;
                (0..p.len() - 1)
                    .filter(|&i| p.slope(i) != 0.0)
                    .map(|i| (p.xs()[i], p.xs()[i + 1]))
                    .collect()
            })
            .collect();
        for i in 0..mono.len() {
            for j in i + 1..mono.len() {
                for &(u, v) in &mono[i] {
                    for &(x, y) in &mono[j] {
                        if v.min(y) - u.max(x) > 1e-12 * (b - a) {
                            return Err(Error::CannotCertify(
                                "monotonicity intervals of two hats overlap".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Splits a sign-constant hump `u ≥ 0` (zero at both ends) into hats: the
/// running-minimum envelope from the global maximum, then recursively the
/// parts of `u` standing above it.
fn peel(u: Pl, sign: f64, tol: f64, out: &mut Vec<Hat>) -> Result<()> {
    let mut stack = vec![u];
    while let Some(u) = stack.pop() {
        let (xs, ys) = (u.xs(), u.ys());
        let n = xs.len();
        let peak = (0..n).fold(0, |best, i| if ys[i] > ys[best] { i } else { best });
        // walk outward from the peak, keeping the running minimum
        let walk = |order: &mut dyn Iterator<Item = usize>| -> Vec<(f64, f64)> {
            let mut pts = vec![(xs[peak], ys[peak])];
            let mut m = ys[peak];
            let mut prev = peak;
            for i in order {
                let y = ys[i];
                if y < m {
                    if ys[prev] > m {
                        let x = xs[prev] + (xs[i] - xs[prev]) * (ys[prev] - m) / (ys[prev] - y);
                        pts.push((x, m));
                    }
                    m = y;
                    pts.push((xs[i], y));
                } else {
                    pts.push((xs[i], m));
                }
                prev = i;
            }
            pts
        };
        let mut left = walk(&mut (0..peak).rev());
        let right = walk(&mut (peak + 1..n));
        left.reverse();
        left.extend_from_slice(&right[1..]);
        let env = Pl::from_points(&left)?;
        let support = (xs[0], xs[n - 1]);
        out.push(Hat {
            support,
            sign,
            profile: env.clone(),
        });
        // components where u stands above the envelope
        let mut run: Vec<(f64, f64)> = Vec::new();
        let mut last_zero = support.0;
        for (&x, &e) in env.xs().iter().zip(env.ys()) {
            let r = u.eval(x) - e;
            let r = if r > tol { r } else { 0.0 };
            if r == 0.0 {
                if !run.is_empty() {
                    run.push((x, 0.0));
                    stack.push(Pl::from_points(&run)?);
                    run.clear();
                }
                last_zero = x;
            } else {
                if run.is_empty() {
                    run.push((last_zero, 0.0));
                }
                run.push((x, r));
            }
        }
        if !run.is_empty() {
            return Err(Error::CannotCertify("hump does not return to its envelope".into()));
        }
    }
    Ok(())
}

/// Σ-representation of a piecewise linear `Ψ` with `Ψ(a) = Ψ(b) = 0`.
pub fn sigma_decompose(psi: &Pl) -> Result<HatDecomposition> {
    let scale = psi.abs_max();
    let (a, b) = psi.domain();
    let (ya, yb) = (psi.eval(a), psi.eval(b));
    if ya.abs() > DECOMP_TOL * scale.max(1.0) || yb.abs() > DECOMP_TOL * scale.max(1.0) {
        return Err(Error::NonzeroBoundary(ya, yb));
    }
    let tol = 1e-13 * scale.max(1e-300);
    // insert zero crossings and snap near-zero values
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(psi.len() * 2);
    let (xs, ys) = (psi.xs(), psi.ys());
    let snap = |y: f64| if y.abs() <= tol { 0.0 } else { y };
    for i in 0..xs.len() {
        let y = snap(ys[i]);
        if i > 0 {
            let yp = snap(ys[i - 1]);
            if yp * y < 0.0 {
                let x = xs[i - 1] + (xs[i] - xs[i - 1]) * yp / (yp - y);
                pts.push((x, 0.0));
            }
        }
        pts.push((xs[i], y));
    }
    pts[0].1 = 0.0;
    pts.last_mut().unwrap().1 = 0.0;
    let mut hats = Vec::new();
    let mut run: Vec<(f64, f64)> = Vec::new();
    let mut sign = 0.0;
    for &(x, y) in &pts {
        if y == 0.0 {
            if !run.is_empty() {
                run.push((x, 0.0));
                peel(Pl::from_points(&run)?, sign, tol, &mut hats)?;
                run.clear();
            }
        } else {
            if run.is_empty() {
                let start = pts
                    .iter()
                    .rev()
                    .find(|p| p.0 < x && p.1 == 0.0)
                    .map_or(a, |p| p.0);
                run.push((start, 0.0));
                sign = y.signum();
            }
            run.push((x, y.abs()));
        }
    }
    hats.sort_by(|p, q| p.support.0.total_cmp(&q.support.0).then(q.len().total_cmp(&p.len())));
    let d = HatDecomposition {
        hats,
        source: psi.clone(),
    };
    d.verify()?;
    Ok(d)
}
