use std::process::{Command, Output};

use serde_json::Value;

fn plumbkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plumbkit"))
        .args(args)
        .env_remove("PLUMBKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = plumbkit(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn expand_and_eval() {
    assert_eq!(stdout(&["expand", "9/2"]).trim(), "5,2");
    assert_eq!(stdout(&["expand", "55/21"]).trim(), "3,3,3,3");
    assert_eq!(stdout(&["eval", "5,2"]).trim(), "9/2");
    assert_eq!(stdout(&["eval", "-3,-3,-3,-3"]).trim(), "55/21");
}

#[test]
fn dual_of_plumbing() {
    assert_eq!(stdout(&["dual", "-5,-2"]).trim(), "2,2,2,3");
    let out = stdout(&["dual", "2,2,2,3", "--convention", "dual"]);
    assert_eq!(out.trim(), "-5,-2");
    let out = stdout(&["dual", "-3,-2,-3;-4", "--adjusted"]);
    assert_eq!(out, "2,4,2;2,2,2\nadjusted: 1,2,1;1,0,1\n");
}

#[test]
fn gram_matrix() {
    assert_eq!(stdout(&["gram", "-5,-2"]), "-5,1\n1,-2\n");
}

#[test]
fn usage_errors_exit_2() {
    let out = plumbkit(&["expand", "9/x"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("column 3"), "{err}");
    assert!(err.contains("  9/x\n    ^"), "{err}");

    let out = plumbkit(&["dual", "-3,-1"]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(plumbkit(&["expand", "6/4"]).status.code(), Some(2));
    assert_eq!(plumbkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(plumbkit(&["allconfig", "--case", "99"]).status.code(), Some(2));
}

#[test]
fn strict_check() {
    let out = plumbkit(&["check", "-4;-4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("(n)"));
    assert_eq!(plumbkit(&["check", "-4;-4", "--strict"]).status.code(), Some(1));
    assert_eq!(plumbkit(&["check", "-3,-5", "--strict"]).status.code(), Some(0));
    let v = json(&["check", "2,4,2", "--side", "dual"]);
    assert_eq!(v["result"]["passed"], Value::Bool(true));
}

#[test]
fn allconfig_case_1() {
    let v = json(&["allconfig", "--case", "1"]);
    assert_eq!(v["result"]["total"], 386);
    assert_eq!(v["result"]["matches"], Value::Bool(true));
    assert_eq!(v["result"]["neither"], 0);
}

#[test]
fn allconfig_custom_batch() {
    let v = json(&["allconfig", "--bad", "2,4,2", "--bad-pos", "2", "--left", "3|2,3", "--right", "2,2"]);
    // (2 listed + bare) x (1 listed + bare)
    assert_eq!(v["result"]["configurations"].as_array().unwrap().len(), 6);
    let total: u64 = v["result"]["configurations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["total"].as_u64().unwrap())
        .sum();
    assert_eq!(v["result"]["total"].as_u64().unwrap(), total);
}

#[test]
fn verify_appendix() {
    let out = stdout(&["verify", "--appendix"]);
    assert!(out.trim_end().ends_with("13/13 cases match"), "{out}");
}

#[test]
fn json_round_trip() {
    for args in [
        vec!["--json", "fillings", "55/21"],
        vec!["--json", "xk", "9/8", "--k", "8"],
        vec!["--json", "embed", "2,2,2", "--show"],
        vec!["--json", "complement", "2,2,2", "--class", "1"],
        vec!["--json", "verify", "--criterion", "10"],
    ] {
        let text = stdout(&args);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap(), text.trim_end(), "{args:?}");
        // byte-stable for fixed inputs
        assert_eq!(stdout(&args), text);
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let one = stdout(&["--json", "--threads", "1", "allconfig", "--case", "3"]);
    let four = stdout(&["--json", "--threads", "4", "allconfig", "--case", "3"]);
    assert_eq!(one, four);
    let env = Command::new(env!("CARGO_BIN_EXE_plumbkit"))
        .args(["--json", "allconfig", "--case", "3"])
        .env("PLUMBKIT_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), one);
}

#[test]
fn fillings_report() {
    let out = stdout(&["fillings", "55/21"]);
    assert!(out.starts_with("count: 3\nn(L): 3\nreduced: true\npi1: 1\n"), "{out}");
    let v = json(&["fillings", "8/3"]);
    assert_eq!(v["result"]["pi1"], "Z/2");
    assert_eq!(v["result"]["count"], 2);
    // L(9,2) contains a forbidden configuration
    assert_eq!(plumbkit(&["fillings", "9/2"]).status.code(), Some(2));
}

#[test]
fn xk_connected_sum() {
    let v = json(&["xk", "9/8", "--k", "8"]);
    assert_eq!(v["result"]["satisfies"], Value::Bool(false));
    assert_eq!(v["result"]["n_k"], 1);
    let a = json(&["xk", "4/1,9/2", "--k", "1"]);
    let b = json(&["xk", "4/1#9/2", "--k", "1"]);
    assert_eq!(a["result"], b["result"]);
}

#[test]
fn embed_accepts_plumbing_input() {
    let a = json(&["embed", "2,2,2,3"]);
    let b = json(&["embed", "-5,-2", "--convention", "plumbing"]);
    assert_eq!(a["result"], b["result"]);
}

#[test]
fn mine_small() {
    let out = stdout(&["mine", "--k", "1", "--max-weight", "5", "--max-vertices", "2"]);
    assert!(!out.trim().is_empty());
}
