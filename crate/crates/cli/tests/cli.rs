use std::process::{Command, Output};

use serde_json::Value;

fn extmcg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extmcg"))
        .args(args)
        .env_remove("EXTMCG_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, bool) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = extmcg(&full);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (v, out.status.success())
}

#[test]
fn relator_linking_signature() {
    let (v, ok) = json(&[
        "linking",
        "--genus",
        "1",
        "--lambda",
        "std",
        "--word",
        "(m1 l1)^6 0^-1",
        "--omit-unlink",
    ]);
    assert!(ok);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["signature"], -7);
    assert_eq!(v["result"]["n0_lambda"], -7);
    assert_eq!(v["result"]["exponent_sum"], 11);
    assert_eq!(v["result"]["matrix"].as_array().unwrap().len(), 13);
}

#[test]
fn single_twist_matrix_is_row_major() {
    let (v, ok) = json(&["linking", "--genus", "2", "--word", "[1,1;1,2]"]);
    assert!(ok);
    assert_eq!(
        v["result"]["matrix"],
        serde_json::json!([[2, 1, 2], [1, 0, 0], [2, 0, 0]])
    );
    assert_eq!(v["result"]["labels"], serde_json::json!(["a1", "u1", "u2"]));
}

#[test]
fn meridian_twist_is_plusplus() {
    let (v, ok) = json(&["member", "--genus", "1", "--lambda", "std", "--f", "m1", "--n", "0"]);
    assert!(ok);
    assert_eq!(v["result"]["membership"], "plusplus");
    let (v, _) = json(&["member", "--f", "l1", "--n", "0"]);
    assert_eq!(v["result"]["membership"], "full");
    let (v, _) = json(&["member", "--matrix", "1,0;-1,1", "--n", "-3"]);
    assert_eq!(v["result"]["membership"], "plusplus");
}

#[test]
fn walker_suite_passes() {
    let out = extmcg(&["verify", "walker", "--genus", "3", "--trials", "500", "--seed", "7"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("pass"));
}

#[test]
fn seed_comes_from_the_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_extmcg"))
        .args(["--format", "json", "verify", "maslov", "--trials", "3"])
        .env("EXTMCG_SEED", "99")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&with_env.stdout).unwrap();
    assert_eq!(v["result"]["seed"], 99);
    let (v, _) = json(&["verify", "maslov", "--trials", "3"]);
    assert_eq!(v["result"]["seed"], 0);
}

#[test]
fn identical_runs_are_byte_identical() {
    let jobs: [&[&str]; 4] = [
        &[
            "--format",
            "json",
            "verify",
            "closure-mod4",
            "--genus",
            "2",
            "--trials",
            "40",
            "--seed",
            "3",
        ],
        &[
            "--format",
            "json",
            "linking",
            "--genus",
            "2",
            "--lambda",
            "m1 l2",
            "--word",
            "m1 [1,1;0,1]^-1 l2",
        ],
        &["--format", "json", "cyclo", "--p", "11"],
        &[
            "--format",
            "json",
            "nlambda",
            "--genus",
            "2",
            "--f",
            "m1 l2 [1,1;1,0]",
            "--g",
            "l1",
            "--g",
            "m2^-1",
        ],
    ];
    for job in jobs {
        let a = extmcg(job);
        let b = extmcg(job);
        assert!(a.status.success(), "{job:?}");
        assert_eq!(a.stdout, b.stdout, "{job:?}");
    }
}

#[test]
fn nlambda_values() {
    // n_λ(D(m)) = 0 and n_λ(D(ℓ)) = 1 for λ = ⟨m⟩
    let (v, _) = json(&["nlambda", "--f", "m1"]);
    assert_eq!(v["result"]["n_lambda"], 0);
    assert_eq!(v["result"]["phi_tau"][0]["phi"], -1);
    assert_eq!(v["result"]["phi_tau"][0]["tau"], 1);
    let (v, _) = json(&["nlambda", "--f", "l1"]);
    assert_eq!(v["result"]["n_lambda"], 1);
}

#[test]
fn compose_braid_words() {
    let (v, ok) = json(&["compose", "m1 l1 m1", "l1 m1 l1 @ 1", "(m1 l1 m1)^-1"]);
    assert!(ok);
    assert_eq!(v["result"]["factors"][0]["n"], 1);
    assert_eq!(v["result"]["factors"][0]["matrix"], v["result"]["factors"][1]["matrix"]);
    assert_eq!(v["result"]["product"]["n"], 1);
    assert_eq!(v["result"]["product"]["matrix"], v["result"]["factors"][0]["matrix"]);
}

#[test]
fn maslov_of_three_lines() {
    let (v, ok) = json(&["maslov", "std", "l1", "[1;1]"]);
    assert!(ok);
    let mu = v["result"]["maslov"].as_i64().unwrap();
    let (w, _) = json(&["maslov", "l1", "std", "[1;1]"]);
    assert_eq!(w["result"]["maslov"].as_i64().unwrap(), -mu);
    assert_eq!(mu.abs(), 1);
}

#[test]
fn cyclo_table() {
    let (v, ok) = json(&["cyclo", "--p", "5"]);
    assert!(ok);
    assert_eq!(v["result"]["colors"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["kappa_squared_mod_h"], serde_json::json!([4, 0]));
    let out = extmcg(&["cyclo", "--p", "5", "--c", "2"]);
    assert!(!out.status.success());
}

#[test]
fn parse_errors_are_structured() {
    let (v, ok) = json(&["linking", "--word", "m1 (l1"]);
    assert!(!ok);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["argument"], "--word");
    assert_eq!(v["error"]["position"], 6);
    let (v, ok) = json(&["linking", "--word", "[2;0]"]);
    assert!(!ok);
    assert_eq!(v["error"]["position"], 0);
    let (_, ok) = json(&["--permissive", "linking", "--word", "[2;0]"]);
    assert!(ok);
    let (v, ok) = json(&["member", "--lambda", "m1 l1", "--f", "m1", "--n", "0"]);
    assert!(!ok);
    assert_eq!(v["error"]["argument"], "--lambda");
}

#[test]
fn unknown_suite_is_rejected() {
    let out = extmcg(&["verify", "nonsense"]);
    assert!(!out.status.success());
}

#[test]
fn printed_word_parses_back() {
    let (v, _) = json(&["linking", "--genus", "2", "--word", "(m1 [1,-1;0,2]^-1)^2 0"]);
    let printed = v["result"]["word"].as_str().unwrap().to_string();
    assert_eq!(printed, "m1 [1,-1;0,2]^-1 m1 [1,-1;0,2]^-1 0");
    let (w, _) = json(&["linking", "--genus", "2", "--word", &printed]);
    assert_eq!(w, v);
}
