use jtheta::cli::{run, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE};
use serde_json::Value;
use std::sync::Mutex;

// the cache directory comes from the environment, shared by all tests here
static ENV: Mutex<()> = Mutex::new(());

fn jt(args: &[&str]) -> (i32, String, String) {
    let _g = ENV.lock().unwrap_or_else(|e| e.into_inner());
    let dir = std::env::temp_dir().join("jtheta-cli-tests");
    std::env::set_var("THETA_CACHE_DIR", &dir);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["jtheta"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn theta_ball() {
    let (code, out, _) = jt(&["theta", "--kind", "3", "--mult", "1", "--tau", "i", "--prec", "256"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert!(v["re"].as_str().unwrap().starts_with("1.08643481121330801457531612151"));
    assert_eq!(v["im"], "0");
    assert_eq!(v["prec"], 256);
    let (code, out, _) = jt(&["theta", "--kind", "3", "--mult", "2", "--tau", "i"]);
    assert_eq!(code, EXIT_OK);
    // theta3(2i) = 1.00373...
    assert!(json(&out)["re"].as_str().unwrap().starts_with("1.0037"));
}

#[test]
fn usage_errors() {
    assert_eq!(jt(&["theta", "--kind", "3", "--tau", "0+0i"]).0, EXIT_USAGE);
    assert_eq!(jt(&["theta", "--kind", "7", "--tau", "i"]).0, EXIT_USAGE);
    assert_eq!(jt(&["theta", "--tau", "i+"]).0, EXIT_USAGE);
    assert_eq!(jt(&["modpoly", "Q", "--n", "8"]).0, EXIT_USAGE);
    assert_eq!(jt(&["modpoly", "R", "--n", "3"]).0, EXIT_USAGE);
    assert_eq!(jt(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(jt(&["certify", "--m", "2", "--n", "4", "--alphas", "1,1"]).0, EXIT_USAGE);
    assert_eq!(jt(&["conditions", "--theorem", "9.9", "--m", "12", "--n", "20", "--beta", "2"]).0, EXIT_USAGE);
    assert_eq!(jt(&["conditions", "--theorem", "even-even", "--m", "12", "--n", "9", "--beta", "2"]).0, EXIT_USAGE);
    assert_eq!(jt(&["indep", "--multipliers", "1,1", "--order", "4"]).0, EXIT_USAGE);
    assert_eq!(jt(&["verify", "cm-theta2", "--tau", "i"]).0, EXIT_USAGE);
    assert_eq!(jt(&["--help"]).0, EXIT_OK);
}

#[test]
fn modpoly_files() {
    let (code, out, _) = jt(&["modpoly", "P", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["meta"]["kind"], "P");
    let max_x = v["terms"].as_array().unwrap().iter().map(|t| t["e"][0].as_u64().unwrap()).max();
    assert_eq!(max_x, Some(4));
    let (code, out, _) = jt(&["modpoly", "Q", "--n", "6"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    let top = v["terms"].as_array().unwrap().iter().find(|t| t["e"][0] == 0 && t["e"][1] == 8).cloned();
    let c = v["meta"]["c_n"].as_str().unwrap().parse::<i64>().unwrap();
    assert_eq!(top.unwrap()["c"].as_str().unwrap().parse::<i64>().unwrap(), c * c);
    let path = std::env::temp_dir().join("jtheta-cli-p5.json");
    let (code, out, _) = jt(&["modpoly", "P", "--n", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert!(jtheta::polyfile::load(&path).is_ok());
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = jt(&["verify", "suite", "--prec", "256", "--tol", "1e-40"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["all_pass"], true);
    assert_eq!(jt(&["verify", "octic", "--tau", "i/2"]).0, EXIT_OK);
    assert_eq!(jt(&["verify", "suite", "--prec", "64", "--tol", "1e-60"]).0, EXIT_INCONCLUSIVE);
    assert_eq!(jt(&["verify", "no-such-item"]).0, EXIT_USAGE);
}

#[test]
fn certify_exit_codes() {
    let (code, out, _) = jt(&["certify", "--m", "2", "--n", "4", "--alphas", "1,1,1", "--tau", "i"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["verdict"], "CertifiedNonzero");
    assert_eq!(v["trace"][0]["status"], "holds");
    // a nonzero certificate when a residual was expected
    assert_eq!(
        jt(&["certify", "--m", "2", "--n", "4", "--alphas", "1,1,1", "--expect", "below"]).0,
        EXIT_FAIL
    );
    let tight = jt(&["certify", "--m", "2", "--n", "4", "--alphas", "1,1,1", "--schedule", "256,128"]);
    assert_eq!(tight.0, EXIT_USAGE);
}

#[test]
fn conditions_and_resultants() {
    let (code, out, _) = jt(&["conditions", "--theorem", "even-even", "--m", "12", "--n", "20", "--beta", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["applies"], true);
    assert_eq!(jt(&["conditions", "--theorem", "coprime-even-even", "--m", "12", "--n", "20", "--beta", "1+i"]).0, EXIT_OK);
    assert_eq!(jt(&["conditions", "--theorem", "coprime-even-even", "--m", "12", "--n", "20", "--beta", "i"]).0, EXIT_FAIL);

    let (code, out, _) = jt(&["resultant", "--m", "6", "--n", "10", "--alphas", "1,1,2", "--eta-only"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["all_nonzero"], true);
    assert_ne!(v["w_eta"], "0");
    let (code, out, _) = jt(&["resultant", "--m", "6", "--n", "10", "--alphas", "1,1,sqrt(5)", "--eta-only"]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(json(&out)["section"], "0");
    assert_eq!(jt(&["resultant", "--m", "6", "--n", "10", "--alphas", "1,1,1", "--eta-only"]).0, EXIT_FAIL);

    let (code, out, _) = jt(&["resultant", "--m", "5", "--n", "3", "--alphas", "1,1,1"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["resultant"], "R");
    assert!(v["poly"]["degree"].as_u64().unwrap() > 0);
}

#[test]
fn indep_verdicts() {
    let (code, out, _) = jt(&["indep", "--multipliers", "1/2,1/3", "--order", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["scaled"], serde_json::json!([3, 2]));
    assert_eq!(jt(&["indep", "--multipliers", "1,2,3", "--order", "2"]).0, EXIT_INCONCLUSIVE);
}
