use std::process::{Command, Output};

use serde_json::Value;

fn ksr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ksr")).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn ostrowski_bound() {
    let o = ksr(&["bound", "ostrowski", "--ab", "0,1", "--cd", "0.25,0.75", "--omega", "power:K=1,alpha=1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["case"], "Nested");
    assert_eq!(v["bound"].as_f64().unwrap(), 0.125);
}

#[test]
fn recover_integral_report() {
    let o = ksr(&[
        "recover", "integral", "--n", "2", "--h", "0.05", "--omega", "power:K=1,alpha=1", "--ab", "0,1", "--trials",
        "60", "--grid", "1024",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["theoretical"].as_f64().unwrap() - 0.1).abs() < 1e-15);
    for key in ["empirical_upper", "lower_bound", "gap"] {
        assert!(v[key].is_number(), "{key}");
    }
    assert!(v["empirical_upper"].as_f64().unwrap() <= 0.1 + 2.0 / 1024.0);
}

#[test]
fn extremal_csv_round_trip() {
    let o = ksr(&["extremal", "ks", "--psi1", "0,1;0,0.25,1", "--psi2", "0,1;0.75,1,1", "--grid", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let f = ksr::GridFunction::read_csv(&o.stdout[..]).unwrap();
    assert_eq!(f.n(), 8);
    for (t, v) in f.nodes().iter().zip(f.real_values().unwrap()) {
        assert!((v - (t - 0.5)).abs() < 1e-12);
    }
}

#[test]
fn exit_codes_and_diagnostics() {
    let o = ksr(&["bound", "ostrowski", "--ab", "0;1", "--cd", "0,1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ksr(&["recover", "integral", "--n", "2", "--h", "0.4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("knots"));
    let o = ksr(&["stechkin", "--target", "divided-diff", "--h", "0.2", "--gamma", "0.1", "--omega", "pl:0,0;1,1;2,1.2;3,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ω not concave: sharpness unavailable, bound still valid"));
}

#[test]
fn sweep_tables() {
    let o = ksr(&["sweep", "identity", "--values", "1,2,4", "--trials", "20", "--grid", "512"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert!((rows[0][1] / rows[1][1] - 4.0).abs() < 1e-12);
    assert!((rows[1][1] / rows[2][1] - 4.0).abs() < 1e-12);
    let o = ksr(&["sweep", "integral", "--h", "0.01", "--values", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "param,theoretical,empirical,gap\n");
}

#[test]
fn verify_small_is_deterministic_under_thread_counts() {
    let args = ["verify", "--suite", "ks,recovery", "--trials", "20", "--grid", "512", "--seed", "3"];
    let one = Command::new(env!("CARGO_BIN_EXE_ksr")).env("KSR_THREADS", "1").args(args).output().unwrap();
    let three = Command::new(env!("CARGO_BIN_EXE_ksr")).env("KSR_THREADS", "3").args(args).output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(json(&one)["pass"], true);
    let bad = Command::new(env!("CARGO_BIN_EXE_ksr")).env("KSR_THREADS", "lots").args(args).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
