//! Concrete L-space models.
//!
//! Five models are provided: the real line, Euclidean vectors, closed
//! intervals and finite unions of intervals (both with the Hausdorff metric
//! and Minkowski operations), and the max-space `([0,∞), max, |λ|·)`, which is
//! the standard example of a non-isotropic L-space.
//!
//! Intervals and interval unions are two representations of the same space of
//! compact subsets of the line, so they mix freely: a result is reported as an
//! [`Element::Interval`] only when every operand was one.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

/// Absolute tolerance for payload comparisons.
pub const EQ_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Real,
    Vector,
    Interval,
    IntervalUnion,
    MaxSpace,
}

impl Model {
    pub fn is_isotropic(self) -> bool {
        !matches!(self, Model::MaxSpace)
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Real => "real",
            Model::Vector => "vector",
            Model::Interval => "interval",
            Model::IntervalUnion => "interval_union",
            Model::MaxSpace => "max_space",
        }
    }

    pub fn parse(s: &str) -> Result<Model> {
        match s.trim() {
            "real" => Ok(Model::Real),
            "vector" => Ok(Model::Vector),
            "interval" => Ok(Model::Interval),
            "interval_union" | "union" => Ok(Model::IntervalUnion),
            "max_space" | "max" => Ok(Model::MaxSpace),
            other => Err(Error::Parse(format!("unknown model '{other}'"))),
        }
    }
}

/// A value in one of the concrete L-space models.
#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Real(f64),
    Vector(Vec<f64>),
    Interval(f64, f64),
    /// Sorted, pairwise disjoint components.
    IntervalUnion(Vec<(f64, f64)>),
    MaxSpace(f64),
}

/// Model tag, isotropy flag and zero element of a space.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceDescriptor {
    pub model: Model,
    pub isotropic: bool,
    pub zero: Element,
}

impl SpaceDescriptor {
    pub fn new(model: Model, dim: usize) -> Self {
        SpaceDescriptor {
            model,
            isotropic: model.is_isotropic(),
            zero: Element::zero(model, dim),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Real,
    Vector(usize),
    Set,
    Max,
}

impl Element {
    pub fn interval(lo: f64, hi: f64) -> Result<Element> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::InvalidElement(format!("interval [{lo}, {hi}]")));
        }
        Ok(Element::Interval(lo, hi))
    }

    pub fn singleton(p: f64) -> Element {
        Element::Interval(p, p)
    }

    /// Builds a union from arbitrary components, merging the overlapping ones.
    pub fn union(parts: Vec<(f64, f64)>) -> Result<Element> {
        if parts.is_empty() {
            return Err(Error::InvalidElement("empty interval union".into()));
        }
        for &(lo, hi) in &parts {
            if !(lo.is_finite() && hi.is_finite()) || lo > hi {
                return Err(Error::InvalidElement(format!("component [{lo}, {hi}]")));
            }
        }
        Ok(Element::IntervalUnion(normalize(parts)))
    }

    pub fn max_space(v: f64) -> Result<Element> {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::InvalidElement(format!("max-space payload {v} < 0")));
        }
        Ok(Element::MaxSpace(v))
    }

    /// The neutral element θ of a model.
    pub fn zero(model: Model, dim: usize) -> Element {
        match model {
            Model::Real => Element::Real(0.0),
            Model::Vector => Element::Vector(vec![0.0; dim]),
            Model::Interval => Element::Interval(0.0, 0.0),
            Model::IntervalUnion => Element::IntervalUnion(vec![(0.0, 0.0)]),
            Model::MaxSpace => Element::MaxSpace(0.0),
        }
    }

    pub fn zero_like(&self) -> Element {
        Element::zero(self.model(), self.dim())
    }

    pub fn model(&self) -> Model {
        match self {
            Element::Real(_) => Model::Real,
            Element::Vector(_) => Model::Vector,
            Element::Interval(..) => Model::Interval,
            Element::IntervalUnion(_) => Model::IntervalUnion,
            Element::MaxSpace(_) => Model::MaxSpace,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Element::Vector(v) => v.len(),
            _ => 1,
        }
    }

    pub fn descriptor(&self) -> SpaceDescriptor {
        SpaceDescriptor::new(self.model(), self.dim())
    }

    fn family(&self) -> Family {
        match self {
            Element::Real(_) => Family::Real,
            Element::Vector(v) => Family::Vector(v.len()),
            Element::Interval(..) | Element::IntervalUnion(_) => Family::Set,
            Element::MaxSpace(_) => Family::Max,
        }
    }

    fn check_family(&self, other: &Element) -> Result<()> {
        if self.family() == other.family() {
            Ok(())
        } else {
            Err(Error::ModelMismatch(self.model(), other.model()))
        }
    }

    /// Components of a set-valued element.
    pub fn parts(&self) -> Option<Vec<(f64, f64)>> {
        match self {
            Element::Interval(lo, hi) => Some(vec![(*lo, *hi)]),
            Element::IntervalUnion(p) => Some(p.clone()),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            Element::Real(v) => Some(*v),
            _ => None,
        }
    }

    fn set_result(&self, other: &Element, parts: Vec<(f64, f64)>) -> Element {
        let parts = normalize(parts);
        match (self, other) {
            (Element::Interval(..), Element::Interval(..)) if parts.len() == 1 => {
                Element::Interval(parts[0].0, parts[0].1)
            }
            _ => Element::IntervalUnion(parts),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_family(other)?;
        Ok(match (self, other) {
            (Element::Real(x), Element::Real(y)) => Element::Real(x + y),
            (Element::Vector(x), Element::Vector(y)) => {
                Element::Vector(x.iter().zip(y).map(|(a, b)| a + b).collect())
            }
            (Element::MaxSpace(x), Element::MaxSpace(y)) => Element::MaxSpace(x.max(*y)),
            (Element::Interval(a, b), Element::Interval(c, d)) => Element::Interval(a + c, b + d),
            _ => {
                let (p, q) = (self.parts().unwrap(), other.parts().unwrap());
                let mut sum = Vec::with_capacity(p.len() * q.len());
                for &(a, b) in &p {
                    for &(c, d) in &q {
                        sum.push((a + c, b + d));
                    }
                }
                self.set_result(other, sum)
            }
        })
    }

    pub fn scale(&self, lambda: f64) -> Element {
        match self {
            Element::Real(x) => Element::Real(lambda * x),
            Element::Vector(v) => Element::Vector(v.iter().map(|x| lambda * x).collect()),
            Element::MaxSpace(x) => Element::MaxSpace(lambda.abs() * x),
            Element::Interval(lo, hi) => {
                if lambda >= 0.0 {
                    Element::Interval(lambda * lo, lambda * hi)
                } else {
                    Element::Interval(lambda * hi, lambda * lo)
                }
            }
            Element::IntervalUnion(p) => Element::IntervalUnion(normalize(
                p.iter()
                    .map(|&(lo, hi)| {
                        if lambda >= 0.0 {
                            (lambda * lo, lambda * hi)
                        } else {
                            (lambda * hi, lambda * lo)
                        }
                    })
                    .collect(),
            )),
        }
    }

    pub fn dist(&self, other: &Element) -> Result<f64> {
        self.check_family(other)?;
        Ok(match (self, other) {
            (Element::Real(x), Element::Real(y)) => (x - y).abs(),
            (Element::MaxSpace(x), Element::MaxSpace(y)) => (x - y).abs(),
            (Element::Vector(x), Element::Vector(y)) => {
                x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
            }
            (Element::Interval(a, b), Element::Interval(c, d)) => (a - c).abs().max((b - d).abs()),
            _ => {
                let (p, q) = (self.parts().unwrap(), other.parts().unwrap());
                directed_hausdorff(&p, &q).max(directed_hausdorff(&q, &p))
            }
        })
    }

    /// `dist(x, θ)`.
    pub fn norm(&self) -> f64 {
        self.dist(&self.zero_like()).expect("same model")
    }

    pub fn is_convex(&self) -> bool {
        match self {
            Element::IntervalUnion(p) => p.len() == 1,
            Element::MaxSpace(v) => *v == 0.0,
            _ => true,
        }
    }

    pub fn is_invertible(&self) -> bool {
        match self {
            Element::Real(_) | Element::Vector(_) => true,
            Element::Interval(lo, hi) => hi - lo <= EQ_TOL,
            Element::IntervalUnion(p) => p.len() == 1 && p[0].1 - p[0].0 <= EQ_TOL,
            Element::MaxSpace(v) => *v == 0.0,
        }
    }

    /// The element `x'` with `x + x' = θ`.
    pub fn inverse(&self) -> Result<Element> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok(match self {
            Element::Interval(lo, hi) => {
                let m = 0.5 * (lo + hi);
                Element::Interval(-m, -m)
            }
            Element::IntervalUnion(p) => {
                let m = 0.5 * (p[0].0 + p[0].1);
                Element::IntervalUnion(vec![(-m, -m)])
            }
            Element::MaxSpace(_) => Element::MaxSpace(0.0),
            other => other.scale(-1.0),
        })
    }

    /// The convexifying operator: convex hull for sets, identity on convex models.
    pub fn convexify(&self) -> Element {
        match self {
            Element::IntervalUnion(p) => Element::Interval(p[0].0, p[p.len() - 1].1),
            // the only convex element of the max-space is θ
            Element::MaxSpace(_) => Element::MaxSpace(0.0),
            other => other.clone(),
        }
    }

    /// Hukuhara difference `self -_H other`: the `z` with `other + z = self`.
    pub fn hukuhara_diff(&self, other: &Element) -> Result<Element> {
        self.check_family(other)?;
        match (self, other) {
            (Element::MaxSpace(_), _) => Err(Error::NonIsotropic),
            (Element::Real(x), Element::Real(y)) => Ok(Element::Real(x - y)),
            (Element::Vector(x), Element::Vector(y)) => {
                Ok(Element::Vector(x.iter().zip(y).map(|(a, b)| a - b).collect()))
            }
            (Element::Interval(a, b), Element::Interval(c, d)) => {
                let (lo, hi) = (a - c, b - d);
                if hi - lo < -EQ_TOL {
                    return Err(Error::NoDifference(format!(
                        ": width {} < {}",
                        b - a,
                        d - c
                    )));
                }
                Ok(Element::Interval(lo, hi.max(lo)))
            }
            _ => {
                let (x, y) = (self.parts().unwrap(), other.parts().unwrap());
                let z = erosion(&x, &y).ok_or_else(|| Error::NoDifference(String::new()))?;
                let z = self.set_result(other, z);
                if !other.add(&z)?.approx_eq(self, 1e-9) {
                    return Err(Error::NoDifference(String::new()));
                }
                Ok(z)
            }
        }
    }

    /// Lifts a real number through a convex invertible element: `r₊·x + r₋·x'`.
    pub fn lift_real(r: f64, x: &Element) -> Result<Element> {
        if !x.is_convex() || !x.is_invertible() {
            return Err(Error::NotInvertible);
        }
        if r >= 0.0 {
            Ok(x.scale(r))
        } else {
            Ok(x.inverse()?.scale(-r))
        }
    }

    pub fn approx_eq(&self, other: &Element, tol: f64) -> bool {
        if self.family() != other.family() {
            return false;
        }
        match (self, other) {
            (Element::Real(x), Element::Real(y)) | (Element::MaxSpace(x), Element::MaxSpace(y)) => {
                (x - y).abs() <= tol
            }
            (Element::Vector(x), Element::Vector(y)) => {
                x.iter().zip(y).all(|(a, b)| (a - b).abs() <= tol)
            }
            _ => {
                let (p, q) = (self.parts().unwrap(), other.parts().unwrap());
                p.len() == q.len()
                    && p.iter()
                        .zip(&q)
                        .all(|(a, b)| (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol)
            }
        }
    }
}

/// Sorts components and merges the ones that intersect.
fn normalize(mut parts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    parts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(parts.len());
    for (lo, hi) in parts {
        match out.last_mut() {
            Some(last) if lo <= last.1 + EQ_TOL => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

fn dist_to_set(p: f64, set: &[(f64, f64)]) -> f64 {
    set.iter()
        .map(|&(lo, hi)| {
            if p < lo {
                lo - p
            } else if p > hi {
                p - hi
            } else {
                0.0
            }
        })
        .fold(f64::INFINITY, f64::min)
}

/// `sup_{p ∈ a} dist(p, b)`. The distance to `b` is piecewise linear, so its
/// maximum over a component sits at an endpoint or at a gap midpoint of `b`.
fn directed_hausdorff(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let mut best: f64 = 0.0;
    for &(lo, hi) in a {
        best = best.max(dist_to_set(lo, b)).max(dist_to_set(hi, b));
        for w in b.windows(2) {
            let mid = 0.5 * (w[0].1 + w[1].0);
            if mid > lo && mid < hi {
                best = best.max(dist_to_set(mid, b));
            }
        }
    }
    best
}

fn intersect(p: &[(f64, f64)], q: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < p.len() && j < q.len() {
        let lo = p[i].0.max(q[j].0);
        let hi = p[i].1.min(q[j].1);
        if lo <= hi + EQ_TOL {
            out.push((lo, hi.max(lo)));
        }
        if p[i].1 < q[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Minkowski difference `{z : z + y ⊆ x}`. When a Hukuhara difference
/// exists it coincides with this set.
fn erosion(x: &[(f64, f64)], y: &[(f64, f64)]) -> Option<Vec<(f64, f64)>> {
    let mut acc: Option<Vec<(f64, f64)>> = None;
    for &(l, h) in y {
        let shifted: Vec<(f64, f64)> = x
            .iter()
            .filter(|&&(p, r)| r - p >= h - l - EQ_TOL)
            .map(|&(p, r)| (p - l, (r - h).max(p - l)))
            .collect();
        acc = Some(match acc {
            None => shifted,
            Some(prev) => intersect(&prev, &shifted),
        });
        if acc.as_ref().is_some_and(|v| v.is_empty()) {
            return None;
        }
    }
    acc.filter(|v| !v.is_empty())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Real(v) => write!(f, "{v}"),
            Element::MaxSpace(v) => write!(f, "max({v})"),
            Element::Vector(v) => write!(f, "{v:?}"),
            Element::Interval(lo, hi) => write!(f, "[{lo}, {hi}]"),
            Element::IntervalUnion(p) => {
                let s: Vec<String> = p.iter().map(|(lo, hi)| format!("[{lo}, {hi}]")).collect();
                write!(f, "{{{}}}", s.join(" ∪ "))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    model: Model,
    payload: Value,
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let payload = match self {
            Element::Real(v) | Element::MaxSpace(v) => serde_json::json!([v]),
            Element::Vector(v) => serde_json::json!(v),
            Element::Interval(lo, hi) => serde_json::json!([lo, hi]),
            Element::IntervalUnion(p) => {
                Value::Array(p.iter().map(|(lo, hi)| serde_json::json!([lo, hi])).collect())
            }
        };
        Repr {
            model: self.model(),
            payload,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = Repr::deserialize(deserializer)?;
        let nums = |v: &Value| -> std::result::Result<Vec<f64>, D::Error> {
            serde_json::from_value::<Vec<f64>>(v.clone()).map_err(D::Error::custom)
        };
        let el = match repr.model {
            Model::Real | Model::MaxSpace => {
                let v = nums(&repr.payload)?;
                if v.len() != 1 {
                    return Err(D::Error::custom("scalar payload must have one entry"));
                }
                if repr.model == Model::Real {
                    Ok(Element::Real(v[0]))
                } else {
                    Element::max_space(v[0])
                }
            }
            Model::Vector => Ok(Element::Vector(nums(&repr.payload)?)),
            Model::Interval => {
                let v = nums(&repr.payload)?;
                if v.len() != 2 {
                    return Err(D::Error::custom("interval payload must be [lo, hi]"));
                }
                Element::interval(v[0], v[1])
            }
            Model::IntervalUnion => {
                let parts: Vec<(f64, f64)> =
                    serde_json::from_value(repr.payload).map_err(D::Error::custom)?;
                Element::union(parts)
            }
        };
        el.map_err(D::Error::custom)
    }
}
