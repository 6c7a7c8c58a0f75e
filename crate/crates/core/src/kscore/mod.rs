//! ρ-map, sharp two-weight bounds, their extremal functions, rearrangements
//! and the Σ-representation used by the general estimate.

mod rearrange;
mod rho;
mod sigma;
mod weight;

pub use rearrange::{hardy_rearrangement, rearrange};
pub use rho::{RhoMap, MASS_TOL};
pub use sigma::{sigma_decompose, Hat, HatDecomposition, DECOMP_TOL};
pub use weight::StepWeight;

use crate::error::{Error, Result};
use crate::gridfn::GridFunction;
use crate::modulus::Modulus;
use crate::pl::Pl;

pub fn solve_rho(psi1: &StepWeight, psi2: &StepWeight) -> Result<RhoMap> {
    RhoMap::solve(psi1, psi2)
}

/// `sup dist(∫ψ₁f, ∫ψ₂f)` over `H^ω` for weights with ordered supports, in the ψ₁ form.
pub fn ks_bound(psi1: &StepWeight, psi2: &StepWeight, omega: &Modulus) -> Result<f64> {
    Ok(solve_rho(psi1, psi2)?.bound(omega))
}

/// The same bound in the ψ₂ form.
pub fn ks_bound_dual(psi1: &StepWeight, psi2: &StepWeight, omega: &Modulus) -> Result<f64> {
    Ok(solve_rho(psi1, psi2)?.dual_bound(omega))
}

fn hull(psi1: &StepWeight, psi2: &StepWeight) -> (f64, f64) {
    let (a1, b1) = psi1.domain();
    let (a2, b2) = psi2.domain();
    (a1.min(a2), b1.max(b2))
}

/// Real extremal function for [`ks_bound`] sampled on `n` intervals of the hull of the two domains.
pub fn ks_extremal(psi1: &StepWeight, psi2: &StepWeight, omega: &Modulus, n: usize) -> Result<GridFunction> {
    omega.require_concave()?;
    let rho = solve_rho(psi1, psi2)?;
    let (a, b) = hull(psi1, psi2);
    GridFunction::from_real(a, b, n, |t| rho.extremal(omega, t))
}

/// `dist(∫ψ₁f, ∫ψ₂f)`.
pub fn functional(psi1: &StepWeight, psi2: &StepWeight, f: &GridFunction) -> Result<f64> {
    psi1.apply(f)?.dist(&psi2.apply(f)?)
}

fn check_masses(psi1: &StepWeight, psi2: &StepWeight) -> Result<()> {
    let (m1, m2) = (psi1.mass(), psi2.mass());
    if (m1 - m2).abs() > MASS_TOL * m1.max(m2).max(1.0) {
        return Err(Error::MassMismatch(m1, m2));
    }
    Ok(())
}

/// Σ-representation of `Ψ(t) = ∫_a^t (ψ₁ − ψ₂)`.
pub fn weight_decomposition(psi1: &StepWeight, psi2: &StepWeight) -> Result<HatDecomposition> {
    check_masses(psi1, psi2)?;
    sigma_decompose(&StepWeight::difference_primitive(psi1, psi2)?)
}

/// `∫₀^{b−a} R(Ψ, t) ω′(t) dt` for weights on a common domain `[a, b]`.
pub fn general_bound(psi1: &StepWeight, psi2: &StepWeight, omega: &Modulus) -> Result<f64> {
    omega.require_concave()?;
    let d = weight_decomposition(psi1, psi2)?;
    Ok(d.rearrangement()?.integral_against_derivative(omega))
}

/// `∫₀^{b−a} |R′(Ψ, t)| ω(t) dt`, the other side of the integration-by-parts identity.
pub fn general_bound_derivative_form(psi1: &StepWeight, psi2: &StepWeight, omega: &Modulus) -> Result<f64> {
    let d = weight_decomposition(psi1, psi2)?;
    Ok(-d.rearrangement()?.derivative_against(omega))
}

/// Korneichuk Σ-rearrangement of a real grid function vanishing at both ends.
pub fn sigma_rearrangement(psi: &GridFunction) -> Result<GridFunction> {
    let pl = psi
        .to_pl()
        .ok_or_else(|| Error::InvalidElement("Σ-rearrangement needs a real function".into()))?;
    let r = sigma_decompose(&pl)?.rearrangement()?;
    let (a, b) = psi.domain();
    GridFunction::from_real(0.0, b - a, psi.n(), |t| r.eval(t))
}

/// The two weights whose Ψ is a single hat: `(φ′)₊` and `(φ′)₋` of its profile.
pub fn hat_weights(hat: &Hat) -> Result<(StepWeight, StepWeight)> {
    let p = &hat.profile;
    let (mut up, mut down) = (Vec::new(), Vec::new());
    for i in 0..p.len() - 1 {
        let (lo, hi, s) = (p.xs()[i], p.xs()[i + 1], p.slope(i));
        if s > 0.0 {
            up.push((lo, hi, s));
        } else if s < 0.0 {
            down.push((lo, hi, -s));
        }
    }
    let (a, b) = hat.support;
    Ok((StepWeight::new(a, b, up)?, StepWeight::new(a, b, down)?))
}

fn glued_profile(decomp: &HatDecomposition, omega: &Modulus) -> Result<impl Fn(f64) -> f64> {
    if !decomp.is_chain() {
        return Err(Error::CannotCertify("hats are nested or signs do not alternate".into()));
    }
    if !decomp.lengths_unimodal() {
        return Err(Error::CannotCertify("support lengths are not unimodal".into()));
    }
    let mut pieces = Vec::with_capacity(decomp.hats.len());
    let mut level = 0.0;
    for hat in &decomp.hats {
        if hat.has_inner_plateau() {
            return Err(Error::CannotCertify(format!(
                "hat on [{}, {}] is flat below its top",
                hat.support.0, hat.support.1
            )));
        }
        let (w1, w2) = hat_weights(hat)?;
        let rho = RhoMap::solve(&w1, &w2).map_err(|e| Error::CannotCertify(e.to_string()))?;
        let (a, b) = hat.support;
        let shift = level - hat.sign * rho.extremal(omega, a);
        level = hat.sign * rho.extremal(omega, b) + shift;
        pieces.push((a, b, hat.sign, shift, rho));
    }
    let omega = omega.clone();
    Ok(move |t: f64| {
        let mut v = 0.0;
        for (a, b, sign, shift, rho) in &pieces {
            if t < *a {
                break;
            }
            v = sign * rho.extremal(&omega, t.min(*b)) + shift;
        }
        v
    })
}

/// Glues the single-hat extremal functions of a Σ-representation into a
/// candidate extremal for [`general_bound`] and certifies its membership.
pub fn glue_extremal(decomp: &HatDecomposition, omega: &Modulus, n: usize) -> Result<GridFunction> {
    omega.require_concave()?;
    let (a, b) = decomp.source.domain();
    let f = glued_profile(decomp, omega)?;
    let g = GridFunction::from_real(a, b, n, f)?;
    let report = g.check_homega(omega, false);
    if !report.member {
        return Err(Error::CannotCertify(format!(
            "glued function leaves the class by {:.3e} at {:?}",
            report.defect, report.witness
        )));
    }
    Ok(g)
}

/// `R(Ψ, ·)` as an exact piecewise linear function.
pub fn sigma_rearrangement_pl(psi: &Pl) -> Result<Pl> {
    sigma_decompose(psi)?.rearrangement()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lspace::Element;

    fn ks_weights() -> (StepWeight, StepWeight) {
        (
            StepWeight::new(0.0, 1.0, vec![(0.0, 0.25, 1.0)]).unwrap(),
            StepWeight::new(0.0, 1.0, vec![(0.75, 1.0, 1.0)]).unwrap(),
        )
    }

    // oracle: midpoint quadrature of ∫ψ₁ ω(ρ(s) − s) with ρ found by bisection
    fn quad_bound(psi1: &StepWeight, psi2: &StepWeight, omega: &Modulus, m: usize) -> f64 {
        let (a, a1) = psi1.support();
        let (_, b) = psi2.support();
        let total = psi2.mass();
        let rho = |s: f64| {
            let target = psi1.primitive(s);
            let (mut lo, mut hi) = (a, b);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if total - psi2.primitive(mid) > target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        let h = (a1 - a) / m as f64;
        (0..m)
            .map(|i| {
                let s = a + (i as f64 + 0.5) * h;
                psi1.eval(s) * omega.w(rho(s) - s) * h
            })
            .sum()
    }

    #[test]
    fn rho_on_symmetric_indicators() {
        let (p1, p2) = ks_weights();
        let rho = solve_rho(&p1, &p2).unwrap();
        for s in [0.0, 0.1, 0.25, 0.4, 0.5] {
            assert!((rho.rho(s) - (1.0 - s)).abs() < 1e-15);
        }
        assert_eq!(rho.rho(0.0), 1.0);
        let p3 = StepWeight::new(0.0, 1.0, vec![(0.7, 1.0, 1.0)]).unwrap();
        assert!(matches!(solve_rho(&p1, &p3), Err(Error::MassMismatch(..))));
        assert!(matches!(solve_rho(&p2, &p1), Err(Error::BadSupportOrder(..))));
    }

    #[test]
    fn ks_bound_examples() {
        let (p1, p2) = ks_weights();
        let lin = Modulus::linear();
        assert!((ks_bound(&p1, &p2, &lin).unwrap() - 0.1875).abs() < 1e-15);
        assert!((quad_bound(&p1, &p2, &lin, 10_000) - 0.1875).abs() < 1e-9);
        let sq = Modulus::power(1.0, 0.5).unwrap();
        let want = (1.0 - 0.5f64.powf(1.5)) / 3.0;
        assert!((ks_bound(&p1, &p2, &sq).unwrap() - want).abs() < 1e-12);
        assert!((ks_bound_dual(&p1, &p2, &sq).unwrap() - want).abs() < 1e-12);
        assert!((quad_bound(&p1, &p2, &sq, 100_000) - want).abs() < 1e-7);
    }

    #[test]
    fn two_forms_agree_on_uneven_weights() {
        let p1: StepWeight = "0,3; 0,0.5,2; 0.5,1.2,0.5".parse().unwrap();
        let p2: StepWeight = "0,3; 1.5,2,0.9; 2,3,0.9".parse().unwrap();
        for omega in [Modulus::linear(), Modulus::power(2.0, 0.3).unwrap(), Modulus::min_linear(1.0, 0.4).unwrap()] {
            let b1 = ks_bound(&p1, &p2, &omega).unwrap();
            let b2 = ks_bound_dual(&p1, &p2, &omega).unwrap();
            assert!((b1 - b2).abs() < 1e-10, "{omega}: {b1} vs {b2}");
            let q = quad_bound(&p1, &p2, &omega, 200_000);
            assert!((b1 - q).abs() < 2e-5, "{omega}: {b1} vs {q}");
        }
    }

    #[test]
    fn ks_extremal_is_the_shifted_identity() {
        let (p1, p2) = ks_weights();
        let lin = Modulus::linear();
        let g = ks_extremal(&p1, &p2, &lin, 64).unwrap();
        for (i, v) in g.real_values().unwrap().iter().enumerate() {
            assert!((v - (g.node(i) - 0.5)).abs() < 1e-14);
        }
        assert!(g.check_homega(&lin, true).member);
        assert!((p1.apply(&g).unwrap().as_real().unwrap() + 0.09375).abs() < 1e-14);
        assert!((functional(&p1, &p2, &g).unwrap() - 0.1875).abs() < 1e-14);
        let x = Element::singleton(-1.0);
        let lifted = g.lift(&x).unwrap();
        assert!((functional(&p1, &p2, &lifted).unwrap() - 0.1875).abs() < 1e-12);
    }

    #[test]
    fn ks_extremal_flattens_where_modulus_is_flat() {
        let (p1, p2) = ks_weights();
        let w = Modulus::min_linear(1.0, 0.7).unwrap();
        let g = ks_extremal(&p1, &p2, &w, 400).unwrap();
        // oracle: numeric integration of the extremal formula with ω′ = 1 below 0.7
        let oracle = |t: f64| {
            let m = 20_000;
            let c = 0.5;
            let (lo, hi) = if t < c { (t, c) } else { (c, t) };
            let h = (hi - lo) / m as f64;
            let s: f64 = (0..m)
                .map(|i| {
                    let u = lo + (i as f64 + 0.5) * h;
                    let gap = if u < 0.25 { 1.0 - 2.0 * u } else if u > 0.75 { 2.0 * u - 1.0 } else { (2.0 * u - 1.0).abs() };
                    if gap < 0.7 { h } else { 0.0 }
                })
                .sum();
            if t < c { -s } else { s }
        };
        for i in (0..=400).step_by(25) {
            let t = g.node(i);
            assert!((g.eval_real(t) - oracle(t)).abs() < 1e-4, "t={t}");
        }
        assert_eq!(g.eval_real(0.5), 0.0);
        assert!(g.check_homega(&w, true).member);
        let b = ks_bound(&p1, &p2, &w).unwrap();
        assert!((functional(&p1, &p2, &g).unwrap() - b).abs() < 1e-9);
    }

    #[test]
    fn non_concave_modulus_has_no_extremal() {
        let (p1, p2) = ks_weights();
        let w = Modulus::piecewise_linear(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 1.2), (3.0, 2.0)]).unwrap();
        assert!(matches!(ks_extremal(&p1, &p2, &w, 16), Err(Error::NonConcave)));
        assert!(ks_bound(&p1, &p2, &w).is_ok());
    }

    #[test]
    fn general_bound_reduces_to_two_weight_and_ostrowski_values() {
        let (p1, p2) = ks_weights();
        let lin = Modulus::linear();
        assert!((general_bound(&p1, &p2, &lin).unwrap() - 0.1875).abs() < 1e-14);
        assert_eq!(general_bound(&p1, &p1, &lin).unwrap(), 0.0);
        let q1 = StepWeight::new(0.0, 1.0, vec![(0.0, 1.0, 1.0)]).unwrap();
        let q2 = StepWeight::new(0.0, 1.0, vec![(0.25, 0.75, 2.0)]).unwrap();
        assert!((general_bound(&q1, &q2, &lin).unwrap() - 0.125).abs() < 1e-14);
        let d = weight_decomposition(&q1, &q2).unwrap();
        let g = glue_extremal(&d, &lin, 512).unwrap();
        assert!((functional(&q1, &q2, &g).unwrap() - 0.125).abs() < 1e-12);
    }

    #[test]
    fn by_parts_identity_holds() {
        let q1: StepWeight = "0,2; 0,0.3,1; 0.3,1,0.5; 1.4,2,1".parse().unwrap();
        let q2: StepWeight = "0,2; 0.2,0.9,1; 0.9,1.8,0.8".parse().unwrap();
        let q2 = StepWeight::new(0.0, 2.0, q2.pieces().iter().map(|&(l, h, w)| (l, h, w * q1.mass() / q2.mass())).collect()).unwrap();
        for omega in [Modulus::linear(), Modulus::power(1.0, 0.5).unwrap()] {
            let x = general_bound(&q1, &q2, &omega).unwrap();
            let y = general_bound_derivative_form(&q1, &q2, &omega).unwrap();
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn gluing_rejects_long_short_long() {
        let psi = Pl::new(
            vec![0.0, 0.5, 1.0, 1.1, 1.2, 1.7, 2.2],
            vec![0.0, 0.5, 0.0, -0.1, 0.0, 0.5, 0.0],
        )
        .unwrap();
        let d = sigma_decompose(&psi).unwrap();
        assert!(d.is_chain());
        assert!(matches!(glue_extremal(&d, &Modulus::linear(), 64), Err(Error::CannotCertify(_))));
    }

    #[test]
    fn single_hat_glue_matches_ks_extremal() {
        let (p1, p2) = ks_weights();
        let w = Modulus::power(1.0, 0.5).unwrap();
        let d = weight_decomposition(&p1, &p2).unwrap();
        let g = glue_extremal(&d, &w, 256).unwrap();
        let k = ks_extremal(&p1, &p2, &w, 256).unwrap();
        let shift = g.eval_real(0.0) - k.eval_real(0.0);
        for i in 0..=256 {
            assert!((g.real_values().unwrap()[i] - k.real_values().unwrap()[i] - shift).abs() < 1e-12);
        }
    }

    #[test]
    fn sigma_rearrangement_of_single_hump() {
        let psi = GridFunction::from_real(0.0, 1.0, 32, |t| t.min(1.0 - t)).unwrap();
        let r = sigma_rearrangement(&psi).unwrap();
        let h = hardy_rearrangement(&psi).unwrap();
        assert!(r.max_dist(&h).unwrap() < 1e-14);
    }
}
