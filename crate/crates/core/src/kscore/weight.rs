use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gridfn::GridFunction;
use crate::lspace::Element;
use crate::pl::Pl;

/// Nonnegative piecewise constant weight on `[a, b]`; zero off its pieces.
#[derive(Clone, Debug, PartialEq)]
pub struct StepWeight {
    a: f64,
    b: f64,
    /// Sorted, non-overlapping `(lo, hi, height)`.
    pieces: Vec<(f64, f64, f64)>,
}

impl StepWeight {
    pub fn new(a: f64, b: f64, mut pieces: Vec<(f64, f64, f64)>) -> Result<StepWeight> {
        if !(a < b) {
            return Err(Error::BadRange(a, b));
        }
        pieces.retain(|p| p.1 > p.0 && p.2 != 0.0);
        pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
        for &(lo, hi, w) in &pieces {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidWeight(format!("height {w} on [{lo}, {hi}] must be positive")));
            }
            if lo < a - 1e-12 || hi > b + 1e-12 {
                return Err(Error::InvalidWeight(format!("piece [{lo}, {hi}] leaves [{a}, {b}]")));
            }
        }
        if pieces.windows(2).any(|w| w[1].0 < w[0].1 - 1e-12) {
            return Err(Error::InvalidWeight("pieces overlap".into()));
        }
        if pieces.is_empty() {
            return Err(Error::InvalidWeight("weight has no mass".into()));
        }
        Ok(StepWeight { a, b, pieces })
    }

    /// `height · 1_{[lo, hi]}` on the domain `[lo, hi]`.
    pub fn indicator(lo: f64, hi: f64, height: f64) -> Result<StepWeight> {
        StepWeight::new(lo, hi, vec![(lo, hi, height)])
    }

    /// The same weight regarded on a larger domain.
    pub fn on_domain(&self, a: f64, b: f64) -> Result<StepWeight> {
        StepWeight::new(a, b, self.pieces.clone())
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn pieces(&self) -> &[(f64, f64, f64)] {
        &self.pieces
    }

    /// Hull of the pieces.
    pub fn support(&self) -> (f64, f64) {
        (self.pieces[0].0, self.pieces.last().unwrap().1)
    }

    pub fn mass(&self) -> f64 {
        self.pieces.iter().map(|&(lo, hi, w)| w * (hi - lo)).sum()
    }

    /// Whether the pieces tile the support without gaps.
    pub fn is_positive_on_support(&self) -> bool {
        self.pieces.windows(2).all(|w| (w[1].0 - w[0].1).abs() <= 1e-12)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.pieces
            .iter()
            .find(|&&(lo, hi, _)| t >= lo && t < hi)
            .map_or(0.0, |p| p.2)
    }

    /// `∫_a^x ψ`.
    pub fn primitive(&self, x: f64) -> f64 {
        self.pieces
            .iter()
            .map(|&(lo, hi, w)| w * (x.min(hi) - lo).max(0.0))
            .sum()
    }

    /// `∫ ψ f` for a function on a domain containing the support.
    pub fn apply(&self, f: &GridFunction) -> Result<Element> {
        let mut acc: Option<Element> = None;
        for &(lo, hi, w) in &self.pieces {
            let part = f.integrate(lo, hi)?.scale(w);
            acc = Some(match acc {
                None => part,
                Some(s) => s.add(&part)?,
            });
        }
        Ok(acc.expect("nonempty weight"))
    }

    /// `Ψ(t) = ∫_a^t (ψ₁ − ψ₂)` as an exact piecewise linear function on the common domain.
    pub fn difference_primitive(psi1: &StepWeight, psi2: &StepWeight) -> Result<Pl> {
        let (a, b) = psi1.domain();
        if psi2.domain() != (a, b) {
            return Err(Error::InvalidWeight("weights live on different domains".into()));
        }
        let mut xs = vec![a, b];
        for w in [psi1, psi2] {
            for &(lo, hi, _) in &w.pieces {
                xs.push(lo);
                xs.push(hi);
            }
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|x, y| (*x - *y).abs() <= 1e-14);
        let pts: Vec<(f64, f64)> = xs.iter().map(|&x| (x, psi1.primitive(x) - psi2.primitive(x))).collect();
        Pl::from_points(&pts)
    }
}

impl FromStr for StepWeight {
    type Err = Error;

    /// `a,b; u1,v1,w1; u2,v2,w2; ...`
    fn from_str(s: &str) -> Result<StepWeight> {
        let mut groups = s.split(';').map(|g| {
            g.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad number '{}' in weight", x.trim())))
                })
                .collect::<Result<Vec<f64>>>()
        });
        let dom = groups
            .next()
            .ok_or_else(|| Error::Parse("empty weight".into()))??;
        if dom.len() != 2 {
            return Err(Error::Parse("weight must start with 'a,b'".into()));
        }
        let mut pieces = Vec::new();
        for g in groups {
            let g = g?;
            if g.len() != 3 {
                return Err(Error::Parse("weight pieces are 'lo,hi,height'".into()));
            }
            pieces.push((g[0], g[1], g[2]));
        }
        StepWeight::new(dom[0], dom[1], pieces)
    }
}

impl fmt::Display for StepWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)?;
        for (lo, hi, w) in &self.pieces {
            write!(f, "; {lo},{hi},{w}")?;
        }
        Ok(())
    }
}
