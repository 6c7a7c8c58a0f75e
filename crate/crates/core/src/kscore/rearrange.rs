use crate::error::{Error, Result};
use crate::gridfn::GridFunction;
use crate::pl::Pl;

/// `mes{t : f(t) > y}` and `mes{t : f(t) ≥ y}` for a piecewise linear `f`.
fn level_measures(f: &Pl, y: f64) -> (f64, f64) {
    let (xs, ys) = (f.xs(), f.ys());
    let (mut gt, mut ge) = (0.0, 0.0);
    for i in 0..xs.len() - 1 {
        let (x0, x1, y0, y1) = (xs[i], xs[i + 1], ys[i], ys[i + 1]);
        let h = x1 - x0;
        if y0 == y1 {
            if y0 > y {
                gt += h;
            }
            if y0 >= y {
                ge += h;
            }
            continue;
        }
        let (lo, hi) = (y0.min(y1), y0.max(y1));
        let part = if y <= lo {
            h
        } else if y >= hi {
            0.0
        } else {
            h * (hi - y) / (hi - lo)
        };
        gt += part;
        ge += part;
    }
    (gt, ge)
}

/// Nonincreasing rearrangement `r(f, t) = inf{y : mes{f > y} ≤ t}` on
/// `[0, b − a]`, exact for piecewise linear `f ≥ 0`.
pub fn rearrange(f: &Pl) -> Result<Pl> {
    let min = f.min();
    if min < -1e-12 {
        return Err(Error::NegativeValues(min));
    }
    let (a, b) = f.domain();
    let len = b - a;
    let mut levels: Vec<f64> = f.ys().to_vec();
    levels.sort_by(|x, y| y.total_cmp(x));
    levels.dedup();
    let mut pts = Vec::with_capacity(2 * levels.len());
    for &v in &levels {
        let (gt, ge) = level_measures(f, v);
        pts.push((gt, v));
        pts.push((ge.min(len), v));
    }
    if pts.last().map(|p| p.0) != Some(len) {
        let v = pts.last().unwrap().1;
        pts.push((len, v));
    }
    if pts.len() == 2 && pts[0].0 == pts[1].0 {
        pts[1].0 = len;
    }
    Pl::from_points(&pts)
}

/// Hardy rearrangement of a nonnegative real grid function, on `[0, b − a]`
/// with the same number of grid intervals.
pub fn hardy_rearrangement(f: &GridFunction) -> Result<GridFunction> {
    let pl = f
        .to_pl()
        .ok_or_else(|| Error::InvalidElement("rearrangement needs a real function".into()))?;
    let r = rearrange(&pl)?;
    let (a, b) = f.domain();
    GridFunction::from_real(0.0, b - a, f.n(), |t| r.eval(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    // oracle: sort cell-sampled values, each carrying equal measure
    fn sorted_oracle(f: impl Fn(f64) -> f64, len: f64, m: usize, t: f64) -> f64 {
        let mut v: Vec<f64> = (0..m).map(|i| f((i as f64 + 0.5) * len / m as f64)).collect();
        v.sort_by(|x, y| y.total_cmp(x));
        v[((t / len * m as f64) as usize).min(m - 1)]
    }

    #[test]
    fn tent_rearranges_to_half_slope_line() {
        let f = GridFunction::from_real(0.0, 1.0, 64, |t| t.min(1.0 - t)).unwrap();
        let r = hardy_rearrangement(&f).unwrap();
        for (i, &v) in r.real_values().unwrap().iter().enumerate() {
            let t = r.node(i);
            assert!((v - (1.0 - t) / 2.0).abs() < 1e-12, "t={t}: {v}");
            if i < 64 {
                let o = sorted_oracle(|s| s.min(1.0 - s), 1.0, 100_000, t + 1e-7);
                assert!((v - o).abs() < 1e-4);
            }
        }
        assert!((r.integrate_real(0.0, 1.0).unwrap() - f.integrate_real(0.0, 1.0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn constants_and_monotone_functions_are_fixed() {
        let c = GridFunction::from_real(0.0, 2.0, 10, |_| 1.5).unwrap();
        assert_eq!(hardy_rearrangement(&c).unwrap().real_values().unwrap(), vec![1.5; 11]);
        let d = GridFunction::from_real(0.0, 1.0, 32, |t| (1.0 - t).powi(2)).unwrap();
        let r = hardy_rearrangement(&d).unwrap();
        assert!(r.max_dist(&d).unwrap() < 1e-12);
    }

    #[test]
    fn negative_values_are_rejected() {
        let f = GridFunction::from_real(0.0, 1.0, 8, |t| t - 0.5).unwrap();
        assert!(matches!(hardy_rearrangement(&f), Err(Error::NegativeValues(_))));
    }

    #[test]
    fn plateaus_are_kept() {
        let f = Pl::new(vec![0.0, 1.0, 2.0, 3.0, 4.0], vec![0.0, 1.0, 1.0, 0.5, 0.0]).unwrap();
        let r = rearrange(&f).unwrap();
        assert!((r.eval(0.0) - 1.0).abs() < 1e-15);
        assert!((r.eval(1.0) - 1.0).abs() < 1e-15);
        assert!((r.integral(0.0, 4.0) - f.integral(0.0, 4.0)).abs() < 1e-14);
        assert!(r.eval(4.0).abs() < 1e-15);
    }
}
