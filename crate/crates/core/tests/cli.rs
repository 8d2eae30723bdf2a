//! Golden certificates, exit codes and determinism of the `naw` binary.
//! Set NAW_BLESS=1 to rewrite the golden files.

use std::path::PathBuf;
use std::process::Command;

use naw_core::cert::{Certificate, Status};
use serde_json::Value;

fn naw(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_naw")).args(args).env_remove("NAW_MAX_ORDER").output().expect("run naw");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8 certificate"))
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

const GOLDEN: &[(&str, &[&str], i32)] = &[
    ("egroup_3_1", &["egroup", "--d", "3", "--j", "1", "--verify"], 0),
    ("egroup_1_0", &["egroup", "--d", "1", "--j", "0"], 0),
    ("egroup_2_1", &["egroup", "--d", "2", "--j", "1", "--verify"], 0),
    ("heisenberg_1_4", &["heisenberg", "--n", "1", "--d", "4", "--decompose"], 0),
    ("heisenberg_2_2", &["heisenberg", "--n", "2", "--d", "2", "--decompose"], 0),
    ("heisenberg_1_1", &["heisenberg", "--n", "1", "--d", "1"], 0),
    ("action_cp_e20_e20", &["action", "CP(E(2,0),E(2,0))"], 0),
    ("action_e30", &["action", "E(3,0)"], 0),
    ("action_a5", &["action", "A(5)"], 0),
    ("bundle_1_1_2", &["bundle", "--n", "1", "--m", "1", "--d", "2"], 0),
    ("bundle_2_1_2", &["bundle", "--n", "2", "--m", "1", "--d", "2"], 0),
    ("bundle_1_1_2_linear", &["bundle", "--n", "1", "--m", "1", "--d", "2", "--delta-mode", "linear"], 0),
    ("manifold_11", &["manifold", "--I", "(1,1)", "--r", "1"], 0),
    ("manifold_11_21", &["manifold", "--I", "(1,1);(2,1)", "--r", "2"], 0),
    ("manifold_empty", &["manifold", "--I", ""], 2),
    ("ghys_2_0", &["ghys", "--d", "2", "--j", "0"], 0),
    ("waring_2_8", &["waring", "--k", "2", "--modulus", "8"], 0),
    ("special_elementary", &["special", "DP(A(2),A(2),A(2))", "--p", "2"], 0),
    ("parse_error", &["action", "CP(E(2,0)"], 2),
];

#[test]
fn golden_certificates_and_exit_codes() {
    let bless = std::env::var_os("NAW_BLESS").is_some();
    for &(name, args, code) in GOLDEN {
        let (got_code, out) = naw(args);
        assert_eq!(got_code, code, "{name}: exit code");
        let path = golden_path(name);
        if bless {
            std::fs::write(&path, &out).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(out, want, "{name}: certificate differs from golden file");
    }
}

#[test]
fn exit_code_matches_check_statuses() {
    for &(name, args, _) in GOLDEN {
        let (code, out) = naw(args);
        let v: Value = serde_json::from_str(&out).unwrap();
        let statuses: Vec<&str> =
            v["checks"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
        let expected = if v.get("error").is_some() || !statuses.contains(&"pass") {
            2
        } else if statuses.contains(&"fail") {
            1
        } else {
            0
        };
        assert_eq!(code, expected, "{name}");
        assert_eq!(v["schema"], 1);
    }
}

#[test]
fn exit_code_contract_on_synthetic_certificates() {
    let mut c = Certificate::new("t", (), 0);
    assert_eq!(c.exit_code(), 2);
    c.push("a", Status::Inconclusive, ());
    assert_eq!(c.exit_code(), 2);
    c.check("b", true, ());
    assert_eq!(c.exit_code(), 0);
    c.check("c", false, ());
    assert_eq!(c.exit_code(), 1);
    c.fail_with("boom");
    assert_eq!(c.exit_code(), 2);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["ghys", "--d", "3", "--j", "1", "--numeric-samples", "20", "--seed", "9"][..],
        &["bundle", "--n", "3", "--m", "2", "--d", "3", "--delta-mode", "linear"],
        &["action", "CP(CP(E(3,0),E(3,1)),A(3))"],
    ] {
        let (c1, a) = naw(args);
        let (c2, b) = naw(args);
        assert_eq!((c1, &a), (c2, &b), "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_stdout_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let args = ["waring", "--k", "3", "--modulus", "27"];
    let (_, stdout) = naw(&args);
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let (code, printed) = naw(&with_out);
    assert_eq!(code, 0);
    assert!(printed.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);

    let path2 = dir.path().join("ghys.json");
    let (code, _) = naw(&["ghys", "--d", "2", "--j", "1", "--emit-cert", path2.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path2).unwrap()).unwrap();
    assert_eq!(v["command"], "ghys");
}

#[test]
fn seed_is_recorded_and_changes_sampling() {
    let (_, a) = naw(&["ghys", "--d", "2", "--j", "0", "--numeric-samples", "10", "--seed", "1"]);
    let (_, b) = naw(&["ghys", "--d", "2", "--j", "0", "--numeric-samples", "10", "--seed", "2"]);
    let (va, vb): (Value, Value) = (serde_json::from_str(&a).unwrap(), serde_json::from_str(&b).unwrap());
    assert_eq!(va["seed"], 1);
    assert_eq!(vb["seed"], 2);
    assert_ne!(va["artifacts"]["numeric"], vb["artifacts"]["numeric"]);
}

#[test]
fn action_routes() {
    let route = |expr: &str| {
        let (code, out) = naw(&["action", expr]);
        let v: Value = serde_json::from_str(&out).unwrap();
        (code, v["artifacts"]["route"].as_str().map(str::to_string))
    };
    assert_eq!(route("H(1,3)"), (0, Some("heisenberg".into())));
    assert_eq!(route("CP(E(2,0),E(2,1))"), (0, Some("chain".into())));
    assert_eq!(route("CP(E(2,0),A(4))"), (0, Some("chain".into())));
    assert_eq!(route("DP(E(2,0),A(2))"), (0, Some("search".into())));
}

#[test]
fn bundle_rejects_large_n_and_reports_ranks() {
    let (code, out) = naw(&["bundle", "--n", "5", "--m", "1", "--d", "2"]);
    assert_eq!(code, 2);
    assert!(out.contains("exceeds"), "{out}");
    let (code, out) = naw(&["bundle", "--n", "2", "--m", "1", "--d", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["artifacts"]["ranks"]["reduced"], 20);
}
