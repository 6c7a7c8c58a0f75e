use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::gridfn::GridFunction;
use crate::lspace::Element;
use crate::modulus::Modulus;
use crate::recovery::Sample;

/// Half, shrunk so that centre and radius oscillations add up strictly below `ω`.
const HALF: f64 = 0.5 * (1.0 - 1e-12);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    /// `H^ω`: the function itself has modulus `ω`.
    Homega,
    /// `W¹H^ω`: the Hukuhara derivative has modulus `ω`.
    W1Homega,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleModel {
    Real,
    /// Real members lifted through a random convex invertible unit element.
    Lifted,
    /// Interval valued members with varying width.
    SetValued,
    /// Cycles through the three models above by sample index.
    Mixed,
}

#[derive(Clone, Debug)]
pub struct SampleSpec {
    pub class: Class,
    pub model: SampleModel,
    pub omega: Modulus,
    pub a: f64,
    pub b: f64,
    pub grid: usize,
    pub trials: usize,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(class: Class, omega: &Modulus, a: f64, b: f64, grid: usize, trials: usize, seed: u64) -> SampleSpec {
        SampleSpec {
            class,
            model: SampleModel::Mixed,
            omega: omega.clone(),
            a,
            b,
            grid,
            trials,
            seed,
        }
    }

    pub fn with_model(mut self, model: SampleModel) -> SampleSpec {
        self.model = model;
        self
    }

    fn model_at(&self, index: usize) -> SampleModel {
        match self.model {
            SampleModel::Mixed => [SampleModel::Real, SampleModel::Lifted, SampleModel::SetValued][index % 3],
            m => m,
        }
    }
}

/// Independent generator for sample `index`: same seed and index, same stream.
pub fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Nodes of a real `H^ω` member, from one of three generators.
fn real_values(rng: &mut ChaCha8Rng, omega: &Modulus, a: f64, b: f64, grid: usize) -> Vec<f64> {
    let len = b - a;
    let node = |i: usize| a + len * i as f64 / grid as f64;
    let scale = omega.w(len);
    let base = rng.gen_range(-0.5..0.5) * scale;
    match rng.gen_range(0..3) {
        0 => {
            // random walk with persistent slope, increments at most ω(step)
            let inc = omega.w(len / grid as f64);
            let mut s: f64 = rng.gen_range(-1.0..1.0);
            let mut v = vec![base; grid + 1];
            for i in 1..=grid {
                s = (s + rng.gen_range(-0.3..0.3)).clamp(-1.0, 1.0);
                v[i] = v[i - 1] + s * inc;
            }
            v
        }
        1 => {
            // McShane cone envelope of a few anchors
            let k = rng.gen_range(1..=5);
            let anchors: Vec<(f64, f64)> = (0..k)
                .map(|_| (rng.gen_range(a..=b), base + rng.gen_range(-0.5..0.5) * scale))
                .collect();
            let upper = rng.gen_bool(0.5);
            (0..=grid)
                .map(|i| {
                    let t = node(i);
                    let cones = anchors.iter().map(|&(s, y)| {
                        if upper {
                            y + omega.w((t - s).abs())
                        } else {
                            y - omega.w((t - s).abs())
                        }
                    });
                    if upper {
                        cones.fold(f64::INFINITY, f64::min)
                    } else {
                        cones.fold(f64::NEG_INFINITY, f64::max)
                    }
                })
                .collect()
        }
        _ => {
            // signed combination Σ cⱼ ω(|t − sⱼ|) with Σ|cⱼ| ≤ 1
            let k = rng.gen_range(1..=4);
            let mut terms: Vec<(f64, f64)> = (0..k)
                .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(a..=b)))
                .collect();
            let total: f64 = terms.iter().map(|(c, _)| c.abs()).sum();
            let budget = rng.gen_range(0.5..=1.0) / total.max(1e-12);
            for (c, _) in &mut terms {
                *c *= budget;
            }
            (0..=grid)
                .map(|i| base + terms.iter().map(|&(c, s)| c * omega.w((node(i) - s).abs())).sum::<f64>())
                .collect()
        }
    }
}

/// Scales deviations from the first node until the membership defect is non-positive.
fn repair(mut v: Vec<f64>, omega: &Modulus, a: f64, b: f64) -> Result<GridFunction> {
    let v0 = v[0];
    for x in &mut v {
        *x = v0 + (*x - v0) * (1.0 - 1e-12);
    }
    loop {
        let f = GridFunction::from_real_values(a, b, v.clone())?;
        let r = f.check_homega(omega, false);
        if r.defect <= 0.0 {
            return Ok(f);
        }
        let s = f.omega_seminorm(omega, false);
        let k = 1.0 / (s * (1.0 + 1e-12)).max(1.0 + 1e-12);
        for x in &mut v {
            *x = v0 + (*x - v0) * k;
        }
    }
}

fn real_member(rng: &mut ChaCha8Rng, omega: &Modulus, a: f64, b: f64, grid: usize) -> Result<GridFunction> {
    repair(real_values(rng, omega, a, b, grid), omega, a, b)
}

fn unit_lifter(rng: &mut ChaCha8Rng) -> Element {
    match rng.gen_range(0..3) {
        0 => Element::singleton(1.0),
        1 => Element::singleton(-1.0),
        _ => {
            let v: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-9);
            Element::Vector(v.iter().map(|x| x / n).collect())
        }
    }
}

/// `[c − w, c + w]` from halves of two members; `w ≥ 0`.
fn interval_member(rng: &mut ChaCha8Rng, omega: &Modulus, a: f64, b: f64, grid: usize) -> Result<GridFunction> {
    let c = real_member(rng, omega, a, b, grid)?.real_values().unwrap();
    let w = real_member(rng, omega, a, b, grid)?.real_values().unwrap();
    let m = w.iter().cloned().fold(f64::INFINITY, f64::min);
    let vals = c
        .iter()
        .zip(&w)
        .map(|(c, w)| {
            let r = HALF * (w - m);
            Element::interval(HALF * c - r, HALF * c + r)
        })
        .collect::<Result<Vec<_>>>()?;
    GridFunction::new(a, b, vals)
}

/// Cumulative trapezoid from `f(a) = start`.
fn cumulative(values: &[f64], step: f64, start: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = start;
    out.push(acc);
    for w in values.windows(2) {
        acc += 0.5 * step * (w[0] + w[1]);
        out.push(acc);
    }
    out
}

fn draw(spec: &SampleSpec, index: usize) -> Result<Sample> {
    let mut rng = rng_for(spec.seed, index);
    let (a, b, n, omega) = (spec.a, spec.b, spec.grid, &spec.omega);
    let step = (b - a) / n as f64;
    let model = spec.model_at(index);
    match (spec.class, model) {
        (Class::Homega, SampleModel::SetValued) => Ok(Sample {
            f: interval_member(&mut rng, omega, a, b, n)?,
            df: None,
        }),
        (Class::Homega, m) => {
            let f = real_member(&mut rng, omega, a, b, n)?;
            let f = if m == SampleModel::Lifted {
                f.lift(&unit_lifter(&mut rng))?
            } else {
                f
            };
            Ok(Sample { f, df: None })
        }
        (Class::W1Homega, SampleModel::SetValued) => {
            let c = real_member(&mut rng, omega, a, b, n)?.real_values().unwrap();
            let w = real_member(&mut rng, omega, a, b, n)?.real_values().unwrap();
            let m = w.iter().cloned().fold(f64::INFINITY, f64::min);
            // derivative [c/2 − r, c/2 + r] with r ≥ 0 makes widths grow
            let r: Vec<f64> = w.iter().map(|w| HALF * (w - m)).collect();
            let half: Vec<f64> = c.iter().map(|c| HALF * c).collect();
            let centre = cumulative(&half, step, rng.gen_range(-0.5..0.5) * omega.w(b - a));
            let radius = cumulative(&r, step, rng.gen_range(0.0..0.2) * omega.w(b - a));
            let f = centre
                .iter()
                .zip(&radius)
                .map(|(c, r)| Element::interval(c - r, c + r))
                .collect::<Result<Vec<_>>>()?;
            let df = half
                .iter()
                .zip(&r)
                .map(|(c, r)| Element::interval(c - r, c + r))
                .collect::<Result<Vec<_>>>()?;
            Ok(Sample {
                f: GridFunction::new(a, b, f)?,
                df: Some(GridFunction::new(a, b, df)?),
            })
        }
        (Class::W1Homega, m) => {
            let g = real_member(&mut rng, omega, a, b, n)?;
            let start = rng.gen_range(-0.5..0.5) * omega.w(b - a);
            let f = GridFunction::from_real_values(a, b, cumulative(&g.real_values().unwrap(), step, start))?;
            if m == SampleModel::Lifted {
                let x = unit_lifter(&mut rng);
                Ok(Sample {
                    f: f.lift(&x)?,
                    df: Some(g.lift(&x)?),
                })
            } else {
                Ok(Sample { f, df: Some(g) })
            }
        }
    }
}

/// The `index`-th sample of the stream.
pub fn sample_at(spec: &SampleSpec, index: usize) -> Result<Sample> {
    draw(spec, index)
}

/// `spec.trials` samples, generated in parallel, in index order.
pub fn sample_class(spec: &SampleSpec) -> Result<Vec<Sample>> {
    (0..spec.trials).into_par_iter().map(|i| draw(spec, i)).collect()
}
