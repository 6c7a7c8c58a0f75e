//! Moduli of continuity with closed-form primitives.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const SUBADDITIVE_SLACK: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `K t^α`, `0 < α ≤ 1`.
    Power { k: f64, alpha: f64 },
    /// Piecewise linear through `(0,0)` with nonincreasing slopes.
    PiecewiseLinearConcave(Vec<(f64, f64)>),
    /// `min(K t, C)`.
    MinLinearConstant { k: f64, c: f64 },
    /// Piecewise linear through `(0,0)`, nondecreasing and subadditive but
    /// not necessarily concave.
    PiecewiseLinear(Vec<(f64, f64)>),
}

/// A validated modulus of continuity ω.
///
/// Piecewise linear families continue as a constant past their last breakpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct Modulus {
    family: Family,
    concave: bool,
}

impl Modulus {
    pub fn power(k: f64, alpha: f64) -> Result<Modulus> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidModulus(format!("K = {k} must be positive")));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidModulus(format!("alpha = {alpha} must lie in (0, 1]")));
        }
        Ok(Modulus {
            family: Family::Power { k, alpha },
            concave: true,
        })
    }

    /// ω(t) = t.
    pub fn linear() -> Modulus {
        Modulus::power(1.0, 1.0).unwrap()
    }

    pub fn min_linear(k: f64, c: f64) -> Result<Modulus> {
        if !(k > 0.0 && k.is_finite() && c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidModulus(format!("min(K t, C) needs K, C > 0, got K={k}, C={c}")));
        }
        Ok(Modulus {
            family: Family::MinLinearConstant { k, c },
            concave: true,
        })
    }

    pub fn pl_concave(points: Vec<(f64, f64)>) -> Result<Modulus> {
        check_breakpoints(&points)?;
        let slopes = slopes(&points);
        if slopes.windows(2).any(|w| w[1] > w[0] + 1e-12) {
            return Err(Error::InvalidModulus("slopes must be nonincreasing".into()));
        }
        Ok(Modulus {
            family: Family::PiecewiseLinearConcave(points),
            concave: true,
        })
    }

    /// General piecewise linear modulus; subadditivity is checked on a grid.
    pub fn piecewise_linear(points: Vec<(f64, f64)>) -> Result<Modulus> {
        check_breakpoints(&points)?;
        let s = slopes(&points);
        let concave = s.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        let last = points.last().unwrap().0;
        let mut probes: Vec<f64> = points.iter().map(|p| p.0).collect();
        probes.extend((1..=64).map(|i| last * i as f64 / 32.0));
        let m = Modulus {
            family: Family::PiecewiseLinear(points),
            concave,
        };
        if let Some((s, t)) = subadditivity_witness(|x| m.w(x), &probes) {
            return Err(Error::NotSubadditive { s, t });
        }
        Ok(m)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn is_concave(&self) -> bool {
        self.concave
    }

    pub fn require_concave(&self) -> Result<()> {
        if self.concave {
            Ok(())
        } else {
            Err(Error::NonConcave)
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeArgument(t));
        }
        Ok(self.w(t))
    }

    /// ω(t) for `t ≥ 0`; negative arguments are treated as 0.
    pub fn w(&self, t: f64) -> f64 {
        let t = t.max(0.0);
        match &self.family {
            Family::Power { k, alpha } => {
                if *alpha == 1.0 {
                    k * t
                } else {
                    k * t.powf(*alpha)
                }
            }
            Family::MinLinearConstant { k, c } => (k * t).min(*c),
            Family::PiecewiseLinearConcave(p) | Family::PiecewiseLinear(p) => pl_eval(p, t),
        }
    }

    /// Right derivative of ω at `t`.
    pub fn derivative_ae(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeArgument(t));
        }
        Ok(match &self.family {
            Family::Power { k, alpha } => {
                if *alpha == 1.0 {
                    *k
                } else if t == 0.0 {
                    return Err(Error::Unbounded(t));
                } else {
                    k * alpha * t.powf(alpha - 1.0)
                }
            }
            Family::MinLinearConstant { k, c } => {
                if k * t < *c {
                    *k
                } else {
                    0.0
                }
            }
            Family::PiecewiseLinearConcave(p) | Family::PiecewiseLinear(p) => {
                match p.windows(2).position(|w| t < w[1].0) {
                    Some(i) => (p[i + 1].1 - p[i].1) / (p[i + 1].0 - p[i].0),
                    None => 0.0,
                }
            }
        })
    }

    /// `∫_0^t ω`.
    pub fn antiderivative(&self, t: f64) -> f64 {
        let t = t.max(0.0);
        match &self.family {
            Family::Power { k, alpha } => {
                if *alpha == 1.0 {
                    0.5 * k * t * t
                } else {
                    k * t.powf(alpha + 1.0) / (alpha + 1.0)
                }
            }
            Family::MinLinearConstant { k, c } => {
                let knee = c / k;
                if t <= knee {
                    0.5 * k * t * t
                } else {
                    0.5 * c * knee + c * (t - knee)
                }
            }
            Family::PiecewiseLinearConcave(p) | Family::PiecewiseLinear(p) => {
                let mut acc = 0.0;
                for w in p.windows(2) {
                    let ((x0, y0), (x1, y1)) = (w[0], w[1]);
                    if t <= x0 {
                        return acc;
                    }
                    let x = t.min(x1);
                    let yx = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
                    acc += 0.5 * (y0 + yx) * (x - x0);
                    if t <= x1 {
                        return acc;
                    }
                }
                let (xl, yl) = *p.last().unwrap();
                acc + yl * (t - xl)
            }
        }
    }

    /// `I(α, β) = ∫_α^β ω`.
    pub fn primitive_i(&self, alpha: f64, beta: f64) -> Result<f64> {
        if alpha < 0.0 {
            return Err(Error::NegativeArgument(alpha));
        }
        if alpha > beta {
            return Err(Error::BadRange(alpha, beta));
        }
        Ok(self.antiderivative(beta) - self.antiderivative(alpha))
    }

    /// Shorthand for `I(0, t)`.
    pub fn i0(&self, t: f64) -> f64 {
        self.antiderivative(t)
    }
}

fn check_breakpoints(points: &[(f64, f64)]) -> Result<()> {
    if points.len() < 2 {
        return Err(Error::InvalidModulus("need at least two breakpoints".into()));
    }
    if points[0] != (0.0, 0.0) {
        return Err(Error::InvalidModulus("first breakpoint must be (0, 0)".into()));
    }
    for w in points.windows(2) {
        if !(w[1].0 > w[0].0) || !w[1].0.is_finite() {
            return Err(Error::InvalidModulus("breakpoint abscissae must increase".into()));
        }
        if !(w[1].1 >= w[0].1) || !w[1].1.is_finite() {
            return Err(Error::InvalidModulus("modulus must be nondecreasing".into()));
        }
    }
    if points.iter().all(|p| p.1 == 0.0) {
        return Err(Error::InvalidModulus("modulus is identically zero".into()));
    }
    Ok(())
}

fn slopes(points: &[(f64, f64)]) -> Vec<f64> {
    points
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
        .collect()
}

fn pl_eval(p: &[(f64, f64)], t: f64) -> f64 {
    for w in p.windows(2) {
        if t <= w[1].0 {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            return y0 + (y1 - y0) * (t - x0) / (x1 - x0);
        }
    }
    p.last().unwrap().1
}

/// Searches `probes × probes` for a pair with `f(s+t) > f(s) + f(t)`.
pub fn subadditivity_witness(f: impl Fn(f64) -> f64, probes: &[f64]) -> Option<(f64, f64)> {
    for (i, &s) in probes.iter().enumerate() {
        for &t in &probes[i..] {
            if f(s + t) > f(s) + f(t) + SUBADDITIVE_SLACK {
                return Some((s, t));
            }
        }
    }
    None
}

fn parse_kv(body: &str) -> Result<Vec<(String, f64)>> {
    body.split(',')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{kv}'")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number '{v}'")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn lookup(kv: &[(String, f64)], key: &str) -> Result<f64> {
    kv.iter()
        .find(|(k, _)| k.eq_ignore_ascii_case(key))
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::Parse(format!("missing parameter '{key}'")))
}

fn parse_points(body: &str) -> Result<Vec<(f64, f64)>> {
    body.split(';')
        .map(|pair| {
            let (x, y) = pair
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected x,y, got '{pair}'")))?;
            let x = x.trim().parse().map_err(|_| Error::Parse(format!("bad number '{x}'")))?;
            let y = y.trim().parse().map_err(|_| Error::Parse(format!("bad number '{y}'")))?;
            Ok((x, y))
        })
        .collect()
}

impl FromStr for Modulus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Modulus> {
        let (tag, body) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected family:params, got '{s}'")))?;
        match tag.trim() {
            "power" => {
                let kv = parse_kv(body)?;
                Modulus::power(lookup(&kv, "K")?, lookup(&kv, "alpha")?)
            }
            "minlin" => {
                let kv = parse_kv(body)?;
                Modulus::min_linear(lookup(&kv, "K")?, lookup(&kv, "C")?)
            }
            "plconcave" => Modulus::pl_concave(parse_points(body)?),
            "pl" => Modulus::piecewise_linear(parse_points(body)?),
            other => Err(Error::Parse(format!("unknown modulus family '{other}'"))),
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let points = |p: &[(f64, f64)]| {
            p.iter().map(|(x, y)| format!("{x},{y}")).collect::<Vec<_>>().join(";")
        };
        match &self.family {
            Family::Power { k, alpha } => write!(f, "power:K={k},alpha={alpha}"),
            Family::MinLinearConstant { k, c } => write!(f, "minlin:K={k},C={c}"),
            Family::PiecewiseLinearConcave(p) => write!(f, "plconcave:{}", points(p)),
            Family::PiecewiseLinear(p) => write!(f, "pl:{}", points(p)),
        }
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Modulus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
