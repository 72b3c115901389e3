use std::path::PathBuf;
use std::process::{Command, Output};

use ein_core::json::subalgebra_to_json;
use ein_core::lie_algebra::u_plus;
use ein_core::Signature;
use einctl::CliError;
use serde_json::{json, Value};

fn einctl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_einctl")).args(args).env_remove("EINCTL_SEED").output().expect("spawn einctl")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("einctl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn flow_moves_e3_towards_e0() {
    let o = einctl(&["flow", "--p", "1", "--q", "2", "--point", "[0,0,0,1,0]", "--s", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["point"], "[1:0:0:1:0]");
}

#[test]
fn holonomy_diagonal_and_reparam() {
    let o = einctl(&["holonomy", "--p", "1", "--q", "2", "--s", "1", "--t", "1"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["reparam"], "1/2");
    let m = &v["matrix"];
    let diag: Vec<&str> = (0..5).map(|i| m[i][i].as_str().unwrap()).collect();
    assert_eq!(diag, ["2/1", "2/1", "1/1", "1/2", "1/2"]);
    assert_eq!(m[0][3], "1/1");
    assert_eq!(m[1][4], "-1/1");
}

#[test]
fn pole_exits_with_domain_code() {
    let o = einctl(&["holonomy", "--p", "1", "--q", "2", "--s", "2", "--t", "-1/2"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("pole"));
}

#[test]
fn non_null_point_exits_with_domain_code() {
    let o = einctl(&["flow", "--p", "1", "--q", "2", "--point", "[1,0,0,0,1]", "--s", "1"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn input_errors_exit_with_code_one() {
    let garbled = fixture("garbled.json", r#"{"p":1,"q":2,"basis":[[["0/1","1/0"#);
    let o = einctl(&["degree", "--basis", garbled.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());

    let zero_den = fixture("zero_den.json", r#"{"p":1,"q":2,"basis":[[["1/0"]]]}"#);
    assert_eq!(code(&einctl(&["degree", "--basis", zero_den.to_str().unwrap()])), 1);

    assert_eq!(code(&einctl(&["flow", "--p", "0", "--q", "2", "--point", "[1,0,0,0]", "--s", "1"])), 1);
    assert_eq!(code(&einctl(&["flow", "--p", "1", "--q", "2", "--point", "[1,x,0,0,0]", "--s", "1"])), 1);
    assert_eq!(code(&einctl(&["verify", "--suites", "nonsense"])), 1);
    assert_eq!(code(&einctl(&["frobnicate"])), 1);
    assert_eq!(code(&einctl(&["--help"])), 0);
}

#[test]
fn failed_checks_map_to_code_three() {
    assert_eq!(CliError::ChecksFailed(1).exit_code(), 3);
    assert_eq!(CliError::Core(ein_core::Error::Internal("x".into())).exit_code(), 3);
}

#[test]
fn degree_of_abelian_nilradical_is_one() {
    let sig = Signature::new(1, 2).unwrap();
    let body = serde_json::to_string(&subalgebra_to_json(&u_plus(sig))).unwrap();
    let path = fixture("uplus.json", &body);
    let o = einctl(&["degree", "--basis", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o), json!({"degree": 1}));

    // T = E_{0,3} - E_{1,4}, written out by hand
    let mut t = vec![vec!["0"; 5]; 5];
    t[0][3] = "1";
    t[1][4] = "-1";
    let path = fixture("t.json", &json!({"p": 1, "q": 2, "basis": [t]}).to_string());
    let o = einctl(&["degree", "--basis", path.to_str().unwrap()]);
    assert_eq!(stdout_json(&o), json!({"degree": 1}));
}

#[test]
fn non_algebra_matrix_is_rejected() {
    let mut m = vec![vec!["0"; 5]; 5];
    m[0][0] = "1";
    let path = fixture("bad_elem.json", &json!({"p": 1, "q": 2, "basis": [m]}).to_string());
    let o = einctl(&["degree", "--basis", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in o(p+1,q+1)"));
}

#[test]
fn verify_subset_lists_unselected_suites_as_skipped() {
    let o = einctl(&["verify", "--suites", "holonomy", "--signatures", "1,2", "--trials", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = stdout_json(&o);
    assert_eq!(v["seed"], 42);
    for rec in v["checks"].as_array().unwrap() {
        let holo = rec["suite"] == "holonomy";
        assert_eq!(rec["status"] == "pass", holo, "{rec}");
        if !holo {
            assert_eq!(rec["witness"], "suite not selected");
        }
    }
}

#[test]
fn verify_is_reproducible_and_seed_comes_from_env() {
    let args = ["verify", "--suites", "forms,liealg", "--signatures", "1,2", "--trials", "3"];
    let a = einctl(&args);
    let b = einctl(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let c = Command::new(env!("CARGO_BIN_EXE_einctl")).args(args).env("EINCTL_SEED", "7").output().unwrap();
    assert_eq!(stdout_json(&c)["seed"], 7);
}

#[test]
fn pretty_prints_aligned_rows() {
    let o = einctl(&["--pretty", "holonomy", "--p", "1", "--q", "2", "--s", "1", "--t", "1"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("[2  0  0    1    0]"), "{text}");
    assert!(!text.contains("/1"));
}
