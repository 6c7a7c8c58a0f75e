//! Functions `[a, b] → X` sampled on a uniform grid.
//!
//! Real, vector and interval values are interpolated linearly between nodes;
//! interval unions and max-space values use nearest-node step semantics.
//! Integrals are always exact integrals of the piecewise linear interpolant of
//! the convexified node values, so additivity and `P`-idempotence hold to
//! rounding.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lspace::{Element, Model};
use crate::modulus::Modulus;
use crate::pl::Pl;

pub const DEFAULT_GRID: usize = 4096;

/// Slack for membership defects.
pub const MEMBERSHIP_SLACK: f64 = 1e-9;

/// `ε(N) = ω(2(b−a)/N) + 1e−9`, the tolerance for every bound-vs-oracle comparison.
pub fn grid_tolerance(omega: &Modulus, a: f64, b: f64, n: usize) -> f64 {
    omega.w(2.0 * (b - a) / n as f64) + 1e-9
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interp {
    Linear,
    Step,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Real,
    Vector(usize),
    Interval,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipReport {
    pub member: bool,
    /// Largest `dist(f(t'), f(t'')) − ω(|t' − t''|)` over the checked pairs.
    pub defect: f64,
    pub witness: (f64, f64),
}

#[derive(Clone, Debug)]
pub struct GridFunction {
    a: f64,
    b: f64,
    values: Vec<Element>,
    interp: Interp,
    kind: Kind,
    comps: Vec<Vec<f64>>,
    prefix: Vec<Vec<f64>>,
}

impl PartialEq for GridFunction {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.values == other.values && self.interp == other.interp
    }
}

fn default_interp(model: Model) -> Interp {
    match model {
        Model::IntervalUnion | Model::MaxSpace => Interp::Step,
        _ => Interp::Linear,
    }
}

impl GridFunction {
    pub fn new(a: f64, b: f64, values: Vec<Element>) -> Result<GridFunction> {
        let interp = values.first().map(|v| default_interp(v.model())).unwrap_or(Interp::Linear);
        GridFunction::with_interp(a, b, values, interp)
    }

    pub fn with_interp(a: f64, b: f64, values: Vec<Element>, interp: Interp) -> Result<GridFunction> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::BadRange(a, b));
        }
        if values.len() < 3 {
            return Err(Error::InvalidGrid(format!("need N ≥ 2 intervals, got {}", values.len().saturating_sub(1))));
        }
        let first = &values[0];
        for v in &values[1..] {
            first.dist(v)?;
            if v.dim() != first.dim() {
                return Err(Error::InvalidGrid("values have different dimensions".into()));
            }
        }
        let kind = match first.model() {
            Model::Real => Kind::Real,
            Model::Vector => Kind::Vector(first.dim()),
            Model::Interval | Model::IntervalUnion => Kind::Interval,
            Model::MaxSpace => Kind::Zero,
        };
        let width = match kind {
            Kind::Real => 1,
            Kind::Vector(d) => d,
            Kind::Interval => 2,
            Kind::Zero => 0,
        };
        let mut comps = vec![Vec::with_capacity(values.len()); width];
        for v in &values {
            match v.convexify() {
                Element::Real(x) => comps[0].push(x),
                Element::Vector(x) => {
                    for (c, xi) in comps.iter_mut().zip(x) {
                        c.push(xi);
                    }
                }
                Element::Interval(lo, hi) => {
                    comps[0].push(lo);
                    comps[1].push(hi);
                }
                _ => {}
            }
        }
        let h = (b - a) / (values.len() - 1) as f64;
        let prefix = comps
            .iter()
            .map(|c| {
                let mut p = Vec::with_capacity(c.len());
                let mut acc = 0.0;
                p.push(0.0);
                for w in c.windows(2) {
                    acc += 0.5 * (w[0] + w[1]) * h;
                    p.push(acc);
                }
                p
            })
            .collect();
        Ok(GridFunction {
            a,
            b,
            values,
            interp,
            kind,
            comps,
            prefix,
        })
    }

    pub fn from_fn(a: f64, b: f64, n: usize, f: impl Fn(f64) -> Element) -> Result<GridFunction> {
        let h = (b - a) / n as f64;
        GridFunction::new(a, b, (0..=n).map(|i| f(node(a, b, h, n, i))).collect())
    }

    pub fn from_real(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<GridFunction> {
        GridFunction::from_fn(a, b, n, |t| Element::Real(f(t)))
    }

    pub fn from_real_values(a: f64, b: f64, values: Vec<f64>) -> Result<GridFunction> {
        GridFunction::new(a, b, values.into_iter().map(Element::Real).collect())
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Number of grid intervals `N`.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn step(&self) -> f64 {
        (self.b - self.a) / self.n() as f64
    }

    pub fn interp(&self) -> Interp {
        self.interp
    }

    pub fn model(&self) -> Model {
        self.values[0].model()
    }

    pub fn node(&self, i: usize) -> f64 {
        node(self.a, self.b, self.step(), self.n(), i)
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n()).map(|i| self.node(i)).collect()
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn real_values(&self) -> Option<Vec<f64>> {
        self.values.iter().map(|v| v.as_real()).collect()
    }

    pub fn to_pl(&self) -> Option<Pl> {
        Pl::new(self.nodes(), self.real_values()?).ok()
    }

    fn locate(&self, t: f64) -> (usize, f64) {
        let s = ((t - self.a) / self.step()).clamp(0.0, self.n() as f64);
        let i = (s.floor() as usize).min(self.n() - 1);
        (i, s - i as f64)
    }

    pub fn eval(&self, t: f64) -> Element {
        let (i, s) = self.locate(t);
        match self.interp {
            Interp::Step => self.values[if s < 0.5 { i } else { i + 1 }].clone(),
            Interp::Linear => {
                if s == 0.0 {
                    return self.values[i].clone();
                }
                self.values[i]
                    .scale(1.0 - s)
                    .add(&self.values[i + 1].scale(s))
                    .expect("values share a model")
            }
        }
    }

    /// Real value at `t`; panics if the function is not real-valued.
    pub fn eval_real(&self, t: f64) -> f64 {
        self.eval(t).as_real().expect("real-valued function")
    }

    fn primitive_comp(&self, c: usize, t: f64) -> f64 {
        let (i, s) = self.locate(t);
        let v = &self.comps[c];
        let vt = v[i] + (v[i + 1] - v[i]) * s;
        self.prefix[c][i] + 0.5 * (v[i] + vt) * s * self.step()
    }

    fn element_from(&self, payload: Vec<f64>) -> Element {
        match self.kind {
            Kind::Real => Element::Real(payload[0]),
            Kind::Vector(_) => Element::Vector(payload),
            Kind::Interval => Element::Interval(payload[0], payload[1].max(payload[0])),
            Kind::Zero => Element::MaxSpace(0.0),
        }
    }

    /// `∫_c^d f`, a convex element.
    pub fn integrate(&self, c: f64, d: f64) -> Result<Element> {
        if c > d {
            return Err(Error::BadRange(c, d));
        }
        let tol = 1e-12 * (self.b - self.a);
        if c < self.a - tol || d > self.b + tol {
            return Err(Error::OutsideDomain(c, d, self.a, self.b));
        }
        let payload = (0..self.comps.len())
            .map(|k| self.primitive_comp(k, d) - self.primitive_comp(k, c))
            .collect();
        Ok(self.element_from(payload))
    }

    pub fn integrate_all(&self) -> Element {
        self.integrate(self.a, self.b).expect("full domain")
    }

    /// Mean value `(1/(d−c)) ∫_c^d f`.
    pub fn mean(&self, c: f64, d: f64) -> Result<Element> {
        if !(d > c) {
            return Err(Error::Degenerate(c, d));
        }
        Ok(self.integrate(c, d)?.scale(1.0 / (d - c)))
    }

    /// Real `∫_c^d f` for real-valued functions.
    pub fn integrate_real(&self, c: f64, d: f64) -> Result<f64> {
        self.integrate(c, d)?
            .as_real()
            .ok_or_else(|| Error::InvalidElement("function is not real-valued".into()))
    }

    fn pair_spans(&self, strict: bool) -> Vec<usize> {
        let n = self.n();
        if strict {
            return (1..=n).collect();
        }
        let mut spans = Vec::new();
        let mut k = 1;
        while k <= n {
            spans.push(k);
            k *= 2;
        }
        if *spans.last().unwrap() != n {
            spans.push(n);
        }
        spans
    }

    fn scan_pairs(&self, strict: bool, mut visit: impl FnMut(usize, usize, f64)) {
        for k in self.pair_spans(strict) {
            for i in 0..=self.n() - k {
                let d = self.values[i].dist(&self.values[i + k]).expect("values share a model");
                visit(i, i + k, d);
            }
        }
    }

    /// Checks `dist(f(t'), f(t'')) ≤ ω(|t' − t''|)` over adjacent and dyadic
    /// node spans, or over all node pairs when `strict`.
    pub fn check_homega(&self, omega: &Modulus, strict: bool) -> MembershipReport {
        let h = self.step();
        let mut defect = f64::NEG_INFINITY;
        let mut witness = (self.a, self.a);
        self.scan_pairs(strict, |i, j, d| {
            let e = d - omega.w((j - i) as f64 * h);
            if e > defect {
                defect = e;
                witness = (self.node(i), self.node(j));
            }
        });
        MembershipReport {
            member: defect <= MEMBERSHIP_SLACK,
            defect,
            witness,
        }
    }

    /// `sup dist(f(t'), f(t'')) / ω(|t' − t''|)` over the same pairs as
    /// [`GridFunction::check_homega`].
    pub fn omega_seminorm(&self, omega: &Modulus, strict: bool) -> f64 {
        let h = self.step();
        let mut best: f64 = 0.0;
        self.scan_pairs(strict, |i, j, d| {
            let w = omega.w((j - i) as f64 * h);
            if w > 0.0 {
                best = best.max(d / w);
            }
        });
        best
    }

    /// `sup_t dist(f(t), θ)` over the nodes.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest nodewise distance to another function on the same grid.
    pub fn max_dist(&self, other: &GridFunction) -> Result<f64> {
        if self.n() != other.n() {
            return Err(Error::InvalidGrid("grids differ".into()));
        }
        let mut best: f64 = 0.0;
        for (x, y) in self.values.iter().zip(&other.values) {
            best = best.max(x.dist(y)?);
        }
        Ok(best)
    }

    /// `t ↦ f₊(t)·x + f₋(t)·x′` for a real function and a convex invertible unit element.
    pub fn lift(&self, x: &Element) -> Result<GridFunction> {
        if !x.is_convex() || !x.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let norm = x.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnitNorm(norm));
        }
        let reals = self
            .real_values()
            .ok_or_else(|| Error::InvalidElement("only real functions can be lifted".into()))?;
        let values = reals
            .into_iter()
            .map(|r| Element::lift_real(r, x))
            .collect::<Result<Vec<_>>>()?;
        GridFunction::with_interp(self.a, self.b, values, self.interp)
    }

    /// Grid-scale Hukuhara derivative: central quotients `(f(t+h) −_H f(t−h)) / 2h`
    /// inside, one-sided quotients at the two ends.
    pub fn hukuhara_derivative(&self) -> Result<GridFunction> {
        if !self.model().is_isotropic() {
            return Err(Error::NonIsotropic);
        }
        let n = self.n();
        let h = self.step();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let (lo, hi) = if i == 0 {
                (0, 1)
            } else if i == n {
                (n - 1, n)
            } else {
                (i - 1, i + 1)
            };
            let diff = self.values[hi].hukuhara_diff(&self.values[lo]).map_err(|e| match e {
                Error::NoDifference(_) => Error::NoDifference(format!(" at t = {}", self.node(i))),
                other => other,
            })?;
            out.push(diff.scale(1.0 / ((hi - lo) as f64 * h)));
        }
        GridFunction::with_interp(self.a, self.b, out, self.interp)
    }

    /// CSV with columns `t,v` (real) or `t,lo,hi` (interval).
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        match self.model() {
            Model::Real => {
                wr.write_record(["t", "v"])?;
                for (i, v) in self.values.iter().enumerate() {
                    wr.write_record([self.node(i).to_string(), v.as_real().unwrap().to_string()])?;
                }
            }
            Model::Interval => {
                wr.write_record(["t", "lo", "hi"])?;
                for (i, v) in self.values.iter().enumerate() {
                    if let Element::Interval(lo, hi) = v {
                        wr.write_record([self.node(i).to_string(), lo.to_string(), hi.to_string()])?;
                    }
                }
            }
            other => {
                return Err(Error::Io(format!(
                    "CSV export supports real and interval values, not {}",
                    other.name()
                )))
            }
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<GridFunction> {
        let mut rd = csv::Reader::from_reader(r);
        let headers = rd.headers()?.clone();
        let cols: Vec<&str> = headers.iter().map(|h| h.trim()).collect();
        let interval = match cols.as_slice() {
            ["t", "v"] => false,
            ["t", "lo", "hi"] => true,
            _ => return Err(Error::Parse(format!("unexpected CSV header {cols:?}"))),
        };
        let mut ts = Vec::new();
        let mut values = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let num = |k: usize| -> Result<f64> {
                rec.get(k)
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad CSV field in row {:?}", rec)))
            };
            ts.push(num(0)?);
            values.push(if interval {
                Element::interval(num(1)?, num(2)?)?
            } else {
                Element::Real(num(1)?)
            });
        }
        if ts.len() < 3 {
            return Err(Error::InvalidGrid("CSV has fewer than three rows".into()));
        }
        let (a, b) = (ts[0], *ts.last().unwrap());
        let h = (b - a) / (ts.len() - 1) as f64;
        for (i, &t) in ts.iter().enumerate() {
            if (t - (a + i as f64 * h)).abs() > 1e-12 * (1.0 + a.abs().max(b.abs())) {
                return Err(Error::InvalidGrid("nodes are not uniform".into()));
            }
        }
        GridFunction::new(a, b, values)
    }
}

fn node(a: f64, b: f64, h: f64, n: usize, i: usize) -> f64 {
    if i == n {
        b
    } else {
        a + i as f64 * h
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    a: f64,
    b: f64,
    interp: Interp,
    values: Vec<Element>,
}

impl Serialize for GridFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            a: self.a,
            b: self.b,
            interp: self.interp,
            values: self.values.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GridFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        GridFunction::with_interp(r.a, r.b, r.values, r.interp).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sqrt() -> Modulus {
        Modulus::power(1.0, 0.5).unwrap()
    }

    #[test]
    fn constant_is_member_with_adjacent_witness() {
        let f = GridFunction::from_real(0.0, 1.0, 64, |_| 3.0).unwrap();
        let r = f.check_homega(&Modulus::linear(), false);
        assert!(r.member);
        assert!((r.defect + 1.0 / 64.0).abs() < 1e-15);
        assert!((r.witness.1 - r.witness.0 - 1.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn membership_examples() {
        let id = GridFunction::from_real(0.0, 1.0, 256, |t| t).unwrap();
        assert!(id.check_homega(&sqrt(), false).member);
        assert!(id.check_homega(&sqrt(), true).member);
        let twice = GridFunction::from_real(0.0, 1.0, 256, |t| 2.0 * t).unwrap();
        let r = twice.check_homega(&Modulus::linear(), false);
        assert!(!r.member);
        assert!((r.defect - 1.0).abs() < 1e-12, "defect {}", r.defect);
    }

    #[test]
    fn integration_examples() {
        let f = GridFunction::from_fn(0.0, 2.0, 16, |_| Element::Interval(0.0, 1.0)).unwrap();
        assert!(f.integrate(0.0, 2.0).unwrap().approx_eq(&Element::Interval(0.0, 2.0), 1e-12));
        let u = Element::union(vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let g = GridFunction::from_fn(0.0, 1.0, 16, |_| u.clone()).unwrap();
        assert!(g.integrate_all().approx_eq(&Element::Interval(0.0, 1.0), 1e-12));
        let id = GridFunction::from_real(0.0, 1.0, 16, |t| t).unwrap();
        assert!((id.integrate_real(0.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((id.integrate_real(0.1, 0.35).unwrap() - (0.35f64.powi(2) - 0.01) / 2.0).abs() < 1e-15);
        assert!(matches!(id.integrate(0.5, 1.5), Err(Error::OutsideDomain(..))));
    }

    #[test]
    fn integral_is_additive_and_convex() {
        let f = GridFunction::from_fn(0.0, 1.0, 100, |t| {
            Element::union(vec![(t, t + 0.1), (1.0 + t * t, 2.0)]).unwrap()
        })
        .unwrap();
        let whole = f.integrate_all();
        assert_eq!(whole.convexify(), whole);
        let parts = f.integrate(0.0, 0.37).unwrap().add(&f.integrate(0.37, 1.0).unwrap()).unwrap();
        assert!(parts.approx_eq(&whole, 1e-10));
    }

    #[test]
    fn integral_is_nonexpansive() {
        let f = GridFunction::from_fn(0.0, 1.0, 200, |t| Element::Interval(t, t + 1.0)).unwrap();
        let g = GridFunction::from_fn(0.0, 1.0, 200, |t| Element::Interval(t * t, 2.0)).unwrap();
        let lhs = f.integrate_all().dist(&g.integrate_all()).unwrap();
        let dists: Vec<f64> = f.values().iter().zip(g.values()).map(|(x, y)| x.dist(y).unwrap()).collect();
        let rhs = GridFunction::from_real_values(0.0, 1.0, dists).unwrap().integrate_real(0.0, 1.0).unwrap();
        assert!(lhs <= rhs + 1e-4);
    }

    #[test]
    fn affine_change_of_variables() {
        let f = GridFunction::from_real(1.0, 3.0, 400, |t| (t * 2.0).sin()).unwrap();
        let direct = f.integrate_real(1.0, 3.0).unwrap();
        // s in [0,1], t = 1 + 2s, dt = 2 ds
        let g = GridFunction::from_real(0.0, 1.0, 400, |s| 2.0 * f.eval_real(1.0 + 2.0 * s)).unwrap();
        assert!((g.integrate_real(0.0, 1.0).unwrap() - direct).abs() < 1e-9);
    }

    #[test]
    fn lift_examples() {
        let one = Element::singleton(1.0);
        let f = GridFunction::from_real(0.0, 1.0, 64, |t| t - 0.5).unwrap();
        let fx = f.lift(&one).unwrap();
        assert!(fx.integrate_all().approx_eq(&Element::Interval(0.0, 0.0), 1e-14));
        assert_eq!(fx.eval(0.25), Element::Interval(-0.25, -0.25));
        assert!(matches!(f.lift(&Element::Interval(0.0, 1.0)), Err(Error::NotInvertible)));
        assert!(matches!(f.lift(&Element::singleton(2.0)), Err(Error::NotUnitNorm(_))));
    }

    #[test]
    fn lift_of_integral_matches_integral_of_lift() {
        let x = Element::singleton(-1.0);
        let f = GridFunction::from_real(0.0, 1.0, 128, |t| (6.0 * t).cos()).unwrap();
        let lifted = f.lift(&x).unwrap().integrate_all();
        let expected = Element::lift_real(f.integrate_real(0.0, 1.0).unwrap(), &x).unwrap();
        assert!(lifted.approx_eq(&expected, 1e-12));
    }

    #[test]
    fn hukuhara_derivative_examples() {
        let f = GridFunction::from_fn(0.0, 1.0, 100, |t| Element::Interval(0.0, t)).unwrap();
        let d = f.hukuhara_derivative().unwrap();
        for v in d.values() {
            assert!(v.approx_eq(&Element::Interval(0.0, 1.0), 1e-9));
        }
        let sq = GridFunction::from_real(0.0, 1.0, 200, |t| t * t)
            .unwrap()
            .lift(&Element::singleton(1.0))
            .unwrap();
        let dsq = sq.hukuhara_derivative().unwrap();
        for (i, v) in dsq.values().iter().enumerate() {
            let t = dsq.node(i);
            assert!(v.approx_eq(&Element::singleton(2.0 * t), 2.0 * dsq.step()));
        }
        let c = GridFunction::from_fn(0.0, 1.0, 10, |_| Element::Interval(1.0, 2.0)).unwrap();
        for v in c.hukuhara_derivative().unwrap().values() {
            assert!(v.approx_eq(&Element::Interval(0.0, 0.0), 1e-12));
        }
        let shrinking = GridFunction::from_fn(0.0, 1.0, 10, |t| Element::Interval(0.0, 1.0 - t)).unwrap();
        assert!(matches!(shrinking.hukuhara_derivative(), Err(Error::NoDifference(_))));
        let m = GridFunction::from_fn(0.0, 1.0, 10, Element::MaxSpace).unwrap();
        assert_eq!(m.hukuhara_derivative(), Err(Error::NonIsotropic));
    }

    #[test]
    fn csv_and_json_round_trip() {
        let f = GridFunction::from_fn(0.0, 1.0, 8, |t| Element::Interval(-t, t)).unwrap();
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("t,lo,hi\n"));
        assert_eq!(GridFunction::read_csv(buf.as_slice()).unwrap(), f);
        let g = GridFunction::from_real(0.0, 2.0, 4, |t| t * 3.0).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        assert_eq!(GridFunction::read_csv(buf.as_slice()).unwrap(), g);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<GridFunction>(&json).unwrap(), f);
    }

    #[test]
    fn tolerance_formula() {
        assert!((grid_tolerance(&Modulus::linear(), 0.0, 1.0, 4096) - (2.0 / 4096.0 + 1e-9)).abs() < 1e-18);
    }

    proptest! {
        #[test]
        fn lift_preserves_membership(ps in prop::collection::vec((0.0..1.0f64, -1.0..1.0f64), 1..4), sign in prop::sample::select(vec![-1.0, 1.0])) {
            let w = sqrt();
            let f = GridFunction::from_real(0.0, 1.0, 128, |t| {
                ps.iter().map(|&(p, v)| v + w.w((t - p).abs())).fold(f64::INFINITY, f64::min)
            }).unwrap();
            prop_assert!(f.check_homega(&w, false).member);
            let lifted = f.lift(&Element::singleton(sign)).unwrap();
            prop_assert!(lifted.check_homega(&w, false).member);
        }
    }
}
