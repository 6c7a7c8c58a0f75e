//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Closed-form targets are recomputed here by midpoint quadrature, independently
//! of the library; the oracle side comes from one `verify --suite all --seed 7`
//! report, which is produced twice for the determinism criterion.

use std::process::{exit, Command};

use serde_json::Value;

use ksr::kscore::{general_bound, ks_bound, ks_extremal, StepWeight};
use ksr::landau::{delta_recovery_value, extremal_sup_norm, k_value, stechkin_value, StechkinTarget, Window};
use ksr::lspace::Element;
use ksr::modulus::Modulus;
use ksr::ostrowski::{point_vs_mean_bound, symmetrized_pair_bound, two_interval_bound, TwoIntervalConfig};
use ksr::recovery::{omega_spline, polyline_uniform_error, Partition, Problem};

/// Closed-form agreement.
const EXACT: f64 = 1e-12;
/// Quadrature oracle agreement.
const QUAD: f64 = 1e-9;
/// Rearrangement against ρ form.
const FORMS: f64 = 1e-7;
const GRID: usize = 4096;

fn quad(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let m = 200_000;
    let h = (b - a) / m as f64;
    (0..m).map(|i| f(a + (i as f64 + 0.5) * h)).sum::<f64>() * h
}

fn eps(omega: &Modulus) -> f64 {
    omega.w(2.0 / GRID as f64) + 1e-9
}

struct Report(Value);

impl Report {
    fn check(&self, suite: &str, name: &str, omega: &str) -> &Value {
        self.0["suites"]
            .as_array()
            .unwrap()
            .iter()
            .find(|s| s["suite"] == suite)
            .and_then(|s| {
                s["checks"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .find(|c| c["name"] == name && c["omega"] == omega)
            })
            .unwrap_or_else(|| panic!("missing check {suite}/{name} [{omega}]"))
    }

    fn pass(&self, suite: &str, name: &str, omega: &str) -> bool {
        self.check(suite, name, omega)["pass"].as_bool().unwrap()
    }

    fn suite_pass(&self, suite: &str) -> bool {
        self.0["suites"]
            .as_array()
            .unwrap()
            .iter()
            .find(|s| s["suite"] == suite)
            .map(|s| s["pass"].as_bool().unwrap())
            .unwrap_or(false)
    }

    fn brief(&self, suite: &str, name: &str, omega: &str) -> String {
        let c = self.check(suite, name, omega);
        format!(
            "{name}: sup {:.6}, extremal {}, margin {:.2e}",
            c["empirical"].as_f64().unwrap(),
            c["injected"].as_f64().map_or("-".into(), |v| format!("{v:.6}")),
            c["margin"].as_f64().unwrap()
        )
    }
}

const LIN: &str = "power:K=1,alpha=1";
const SQRT: &str = "power:K=1,alpha=0.5";

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol
}

fn main() {
    let lin = Modulus::linear();
    let sqrt = Modulus::power(1.0, 0.5).unwrap();
    let bin = env!("CARGO_BIN_EXE_ksr");
    let runs: Vec<_> = (0..2)
        .map(|_| {
            Command::new(bin)
                .args(["verify", "--suite", "all", "--seed", "7"])
                .output()
                .expect("run ksr verify")
        })
        .collect();
    let report = Report(serde_json::from_slice(&runs[0].stdout).expect("verify prints JSON"));
    let mut lines: Vec<(bool, String)> = Vec::new();

    // 1. KS functional
    {
        let psi1 = StepWeight::indicator(0.0, 0.25, 1.0).unwrap();
        let psi2 = StepWeight::indicator(0.75, 1.0, 1.0).unwrap();
        let target = (quad(0.0, 0.25, |t| t - 0.5) - quad(0.75, 1.0, |t| t - 0.5)).abs();
        let bound = ks_bound(&psi1, &psi2, &lin).unwrap();
        let g = ks_extremal(&psi1, &psi2, &lin, GRID).unwrap();
        let shape = g
            .nodes()
            .iter()
            .zip(g.real_values().unwrap())
            .map(|(t, v)| (v - (t - 0.5)).abs())
            .fold(0.0, f64::max);
        let ok = close(target, 0.1875, QUAD)
            && close(bound, target, QUAD)
            && shape <= EXACT
            && report.pass("ks", "ks_two_interval", LIN);
        lines.push((
            ok,
            format!(
                "KS bound {bound} vs quadrature {target:.12} (tol {QUAD:e}); extremal t-0.5 max dev {shape:.1e} (tol {EXACT:e}); {}",
                report.brief("ks", "ks_two_interval", LIN)
            ),
        ));
    }

    // 2. rearrangement form against ρ form
    {
        let ok = (1..=5).all(|i| report.pass("ks", &format!("rearrangement_form_{i}"), SQRT));
        let worst = (1..=5)
            .map(|i| {
                let c = report.check("ks", &format!("rearrangement_form_{i}"), SQRT);
                (c["empirical"].as_f64().unwrap() - c["target"].as_f64().unwrap()).abs()
            })
            .fold(0.0, f64::max);
        lines.push((ok, format!("5 step-weight configurations, worst |difference| {worst:.1e} (tol {FORMS:e})")));
    }

    // 3. general bound reduces to the two-segment bound
    {
        let cfg = TwoIntervalConfig::new((0.0, 1.0), (0.25, 0.75)).unwrap();
        let (p1, p2) = cfg.weights().unwrap();
        let tent = |t: f64| -(t - 0.5f64).abs();
        let target = (quad(0.0, 1.0, tent) - 2.0 * quad(0.25, 0.75, tent)).abs();
        let g = general_bound(&p1, &p2, &lin).unwrap();
        let t = two_interval_bound(&cfg, &lin);
        let ok = close(target, 0.125, QUAD)
            && close(g, target, QUAD)
            && close(g, t, EXACT)
            && report.pass("general", "general_nested", LIN);
        lines.push((
            ok,
            format!(
                "general {g} = two-interval {t} vs quadrature {target:.12} (tol {QUAD:e}); {}",
                report.brief("general", "general_nested", LIN)
            ),
        ));
    }

    // 4. Ostrowski corollaries
    {
        let pm = point_vs_mean_bound(0.5, 0.0, 1.0, &lin).unwrap();
        let pm_q = quad(0.0, 1.0, |u| (u - 0.5).abs());
        let pair = symmetrized_pair_bound(0.0, 0.0, 1.0, &lin).unwrap();
        let pair_q = quad(0.0, 1.0, |u| u.min(1.0 - u));
        let root = point_vs_mean_bound(0.0, 0.0, 1.0, &sqrt).unwrap();
        let root_q = quad(0.0, 1.0, f64::sqrt);
        let ok = close(pm_q, 0.25, QUAD)
            && close(pm, pm_q, QUAD)
            && close(pair_q, 0.25, QUAD)
            && close(pair, pair_q, QUAD)
            && close(root_q, 2.0 / 3.0, 1e-6)
            && close(root, root_q, 1e-6)
            && report.pass("ostrowski", "point_vs_mean_t0.5", LIN)
            && report.pass("ostrowski", "symmetrized_pair_t0", LIN)
            && report.pass("ostrowski", "point_vs_mean_t0", SQRT);
        lines.push((
            ok,
            format!(
                "point-mean {pm}, pair {pair}, sqrt point {root:.12} vs quadrature (tol {QUAD:e}, 1e-6 for sqrt); {}; {}; {}",
                report.brief("ostrowski", "point_vs_mean_t0.5", LIN),
                report.brief("ostrowski", "symmetrized_pair_t0", LIN),
                report.brief("ostrowski", "point_vs_mean_t0", SQRT)
            ),
        ));
    }

    // 5. recovery values, each two-sided
    {
        let targets = [
            (Problem::Convexify { n: 2, h: 0.1 }, quad(0.15, 0.35, |u| u) / 0.2),
            (Problem::Integral { n: 2, h: 0.05 }, 4.0 * (1.0 - 4.0 * 0.05) * quad(0.0, 0.25, |u| u)),
            (Problem::Identity { n: 2 }, 0.25 * quad(0.0, 0.5, |u| u)),
            (Problem::Derivative { n: 4 }, 4.0 * quad(0.0, 0.25, |u| u)),
        ];
        let mut ok = true;
        let mut parts = Vec::new();
        for (p, q) in targets {
            let v = p.theoretical(&lin, 0.0, 1.0).unwrap();
            let name = format!("recover_{}", p.name());
            let c = report.check("recovery", &name, LIN);
            let lower = c["injected"].as_f64().unwrap();
            let upper = c["empirical"].as_f64().unwrap();
            let e = eps(&lin);
            ok &= close(v, q, QUAD) && upper <= v + e && lower >= v - e && c["pass"].as_bool().unwrap();
            parts.push(format!("{} {v} [{lower:.6}, {upper:.6}]", p.name()));
        }
        lines.push((ok, format!("{} (eps {:.3e})", parts.join(", "), eps(&lin))));
    }

    // 6. uniform ω-spline equality
    {
        let mut ok = true;
        let mut worst: f64 = 0.0;
        for (omega, tag) in [(&lin, LIN), (&sqrt, SQRT)] {
            for n in [1, 2, 4] {
                let q = 0.25 * quad(0.0, 1.0 / n as f64, |u| omega.w(u));
                let sup = omega_spline(&Partition::uniform(n, 0.0, 1.0).unwrap(), omega)
                    .unwrap()
                    .sample(GRID)
                    .unwrap()
                    .sup_norm();
                worst = worst.max((sup - q).abs());
                ok &= close(polyline_uniform_error(n, omega, 1.0), q, 1e-6)
                    && close(sup, q, eps(omega))
                    && report.pass("spline", &format!("spline_sup_n{n}"), tag);
            }
        }
        lines.push((ok, format!("n in {{1,2,4}}, omega in {{t, sqrt t}}: worst |sup G - I/4| {worst:.1e} (tol eps(N))")));
    }

    // 7. Landau and Stechkin values
    {
        let w = Window::new(0.5, 0.0, 0.0, 0.2, 0.2);
        let k = k_value(&w, &lin).unwrap();
        // K(0,0;h,h) = (2h)/(2h)² · 2 I(h) = h/2
        let k_q = 2.0 * quad(0.0, 0.2, |u| u) / 0.4;
        let st = stechkin_value(StechkinTarget::Derivative, &w, &lin).unwrap();
        let w3 = Window::clamped(0.5, 0.0, 0.3, 0.0, 1.0).unwrap();
        let norm = extremal_sup_norm(&w3, &lin);
        let norm_q = 0.3 * 0.3 - quad(0.0, 0.3, |u| u);
        let d = delta_recovery_value(0.5, 0.1, &lin, 0.0, 1.0).unwrap();
        let delta_q = 0.1 * 0.1 - quad(0.0, 0.1, |u| u);
        let ok = close(k, 0.1, EXACT)
            && close(k, k_q, QUAD)
            && close(st, 0.1, EXACT)
            && close(norm, 0.045, EXACT)
            && close(norm, norm_q, QUAD)
            && close(d.delta, 0.005, EXACT)
            && close(d.delta, delta_q, QUAD)
            && close(d.value, 0.1, EXACT)
            && report.suite_pass("landau")
            && report.pass("stechkin", "stechkin_derivative", LIN)
            && report.pass("delta", "delta_recovery", LIN)
            && report.pass("landau", "extremal_sup_norm_h0.3", LIN);
        lines.push((
            ok,
            format!(
                "K {k}, Stechkin {st}, extremal norm {norm}, delta {} value {} (tol {EXACT:e}); {}; {}",
                d.delta,
                d.value,
                report.brief("stechkin", "stechkin_derivative", LIN),
                report.brief("delta", "delta_recovery", LIN)
            ),
        ));
    }

    // 8. metric lemmas
    {
        let ok = report.suite_pass("metric");
        let worst = ["inverse_distance", "inverse_norm", "scaling"]
            .iter()
            .map(|n| report.check("metric", n, "none")["empirical"].as_f64().unwrap())
            .fold(0.0, f64::max);
        lines.push((ok, format!("10^3 random convex invertible elements, worst deviation {worst:.1e} (tol 1e-12)")));
    }

    // 9. non-isotropy witness
    {
        let (x, y, z) = (Element::max_space(1.0).unwrap(), Element::max_space(2.0).unwrap(), Element::max_space(3.0).unwrap());
        let before = x.dist(&y).unwrap();
        let after = x.add(&z).unwrap().dist(&y.add(&z).unwrap()).unwrap();
        let rejected = y.hukuhara_diff(&x).is_err();
        let ok = after < before && rejected && report.suite_pass("isotropy");
        lines.push((
            ok,
            format!("max space: dist(1,2) = {before}, dist(1+3,2+3) = {after}; Hukuhara difference rejected: {rejected}"),
        ));
    }

    // 10. determinism
    {
        let same = runs[0].stdout == runs[1].stdout;
        let codes = (runs[0].status.code(), runs[1].status.code());
        let ok = same && codes == (Some(0), Some(0)) && !runs[0].stdout.is_empty();
        lines.push((
            ok,
            format!("two runs of verify --suite all --seed 7: identical {same}, exit codes {codes:?}, {} bytes", runs[0].stdout.len()),
        ));
    }

    let mut failed = 0;
    for (i, (ok, detail)) in lines.iter().enumerate() {
        println!("criterion {}: {} | {detail}", i + 1, if *ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        exit(1);
    }
}
