//! End-to-end runs of the `qlab` binary.

use std::process::Command;

use serde_json::Value;

fn qlab(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qlab")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = if stdout.trim().is_empty() { Value::Null } else { serde_json::from_str(&stdout).expect("stdout is JSON") };
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn constant_terms(v: &Value) -> Vec<String> {
    v["coeffs"].as_array().unwrap().iter().map(|c| c["poly"]["0"].as_str().unwrap_or("0").to_string()).collect()
}

#[test]
fn expand_f() {
    let (code, v, _) = qlab(&["expand", "f", "--order", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["series"], "f");
    assert_eq!(constant_terms(&v), ["1", "1", "-2", "3", "-3", "3", "-5", "7", "-6", "6", "-10"]);
}

#[test]
fn expand_utilde() {
    let (code, v, _) = qlab(&["expand", "utilde", "--k", "1", "--order", "2"]);
    assert_eq!(code, 0);
    let q2 = &v["coeffs"][2]["poly"];
    assert_eq!((q2["-1"].as_str(), q2["0"].as_str(), q2["1"].as_str()), (Some("1"), Some("1"), Some("1")));
}

#[test]
fn expand_jbracket_keeps_its_pole() {
    let (code, v, _) = qlab(&["expand", "jbracket", "--order", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["pole_exp"], 1);
}

#[test]
fn root_values() {
    let (code, v, _) = qlab(&["root", "g3", "--m", "1", "--z", "3", "--exact"]);
    assert_eq!(code, 0);
    assert_eq!(v["exact"]["rational"], "-3/7");

    let (code, v, _) = qlab(&["root", "f", "--m", "1", "--exact"]);
    assert_eq!(code, 0);
    assert_eq!(v["exact"]["rational"], "4/3");

    let (code, v, _) = qlab(&["root", "f", "--m", "5", "--exact"]);
    assert_eq!(code, 0);
    assert_eq!(v["exact"]["conductor"], 5);
    let re: f64 = v["value"]["re"].as_str().unwrap().parse().unwrap();
    assert!((re + 0.157_378_651_666_526).abs() < 1e-12);
}

#[test]
fn root_singular_point_is_an_error() {
    let (code, v, err) = qlab(&["root", "g3", "--m", "4", "--z", "zeta(24)"]);
    assert_eq!(code, 2);
    assert!(v.is_null());
    assert!(err.starts_with("qlab:"));
}

#[test]
fn radial_f_at_cube_root() {
    let (code, v, _) = qlab(&["radial", "f", "--zeta", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["reference"]["within_bound"], true);
    assert_eq!(v["diverging"], false);
}

#[test]
fn radial_divergence_exits_one() {
    let (code, v, _) = qlab(&["radial", "u", "--zeta", "3", "--z", "-2"]);
    assert_eq!(code, 1);
    assert_eq!(v["diverging"], true);
}

#[test]
fn enumerate_tables() {
    let (code, v, _) = qlab(&["enumerate", "partitions", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], "3");
    let cranks: Vec<_> = v["partitions"].as_array().unwrap().iter().map(|p| p["crank"].as_str().unwrap()).collect();
    assert_eq!(cranks, ["3", "0", "-3"]);

    let (code, v, _) = qlab(&["enumerate", "crank", "--n", "4"]);
    assert_eq!(code, 0);
    let keys: Vec<_> = v["crank_sum"].as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys.len(), 5);

    let (code, v, _) = qlab(&["enumerate", "unimodal", "--k", "1", "--weight", "3"]);
    assert_eq!(code, 0);
    let total: u64 = v["table"]["counts"].as_array().unwrap().iter().map(|c| c["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 10);
}

#[test]
fn verify_exit_codes() {
    let (code, v, _) = qlab(&["verify", "--suite", "EQ16", "--order", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v[0]["passed"], true);

    let (code, v, _) = qlab(&["verify", "--suite", "THM1", "--order", "6"]);
    assert_eq!(code, 1);
    assert_eq!(v[0]["discrepancy"]["location"], "q^0");

    let (code, v, _) = qlab(&["verify", "--suite", "EQ16", "--order", "6", "--inject", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v[0]["discrepancy"]["location"], v[0]["injected"]);

    for bad in [&["verify", "--suite", "NOPE"][..], &["verify", "--suite", "THM1", "--order", "2"], &["verify", "--filter", "a b"]] {
        assert_eq!(qlab(bad).0, 2, "{bad:?}");
    }
}

#[test]
fn verify_list_and_filter() {
    let (code, v, _) = qlab(&["verify", "--list"]);
    assert_eq!(code, 0);
    assert!(v.as_array().unwrap().iter().any(|s| s["id"] == "ZETA5"));

    let (code, v, _) = qlab(&["verify", "--filter", "eq16", "--order", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().unwrap().len(), 1);
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(qlab(&["expand", "unknown"]).0, 2);
    assert_eq!(qlab(&["root", "g3", "--m", "3", "--z", "2+"]).0, 2);
    assert_eq!(qlab(&["eval", "f", "--q", "2"]).0, 2);
}
