use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = ipcurv_cli::run(
        std::iter::once("ipcurv").chain(args.iter().copied()),
        &mut out,
    );
    (code, String::from_utf8(out).unwrap())
}

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("output is not JSON ({e}):\n{s}"))
}

/// Compares against `tests/golden/<name>.json`; `IPCURV_BLESS=1` rewrites it.
fn golden(name: &str, args: &[&str], expected_code: i32) {
    let (code, out) = run(args);
    assert_eq!(code, expected_code, "{name}: {out}");
    let path = Path::new("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("IPCURV_BLESS").is_some() {
        fs::write(&path, &out).unwrap();
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out, want, "{name} differs from {}", path.display());
}

const REDUCED: &str = "tests/fixtures/reduced.json";
const FULL: &str = "tests/fixtures/full.json";

#[test]
fn golden_build_example_stdout() {
    let (code, out) = run(&[
        "build-example",
        "--delta1",
        "+1",
        "--delta2",
        "+1",
        "--reduced",
        "--dense",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, fs::read_to_string(REDUCED).unwrap());
}

#[test]
fn golden_check_symmetries() {
    golden("check_symmetries", &["check-symmetries", REDUCED], 0);
}

#[test]
fn golden_ip_check_reduced() {
    golden(
        "ip_check_reduced",
        &[
            "ip-check",
            REDUCED,
            "--plane-type",
            "spacelike",
            "--complex-lines",
            "--samples",
            "200",
            "--seed",
            "42",
        ],
        0,
    );
}

#[test]
fn golden_ip_check_full_timelike_strict() {
    golden(
        "ip_check_full_timelike",
        &[
            "ip-check",
            FULL,
            "--plane-type",
            "timelike",
            "--complex-lines",
            "--strict-square-class",
            "--samples",
            "50",
        ],
        0,
    );
}

#[test]
fn golden_ip_check_generic_planes_fail() {
    golden(
        "ip_check_generic_planes",
        &["ip-check", REDUCED, "--samples", "20"],
        1,
    );
}

#[test]
fn golden_rank_profile() {
    golden(
        "rank_profile",
        &["rank-profile", FULL, "--complex-lines", "--samples", "50"],
        0,
    );
}

#[test]
fn golden_jr_spectrum() {
    golden(
        "jr_spectrum",
        &["jr-spectrum", REDUCED, "--samples", "100"],
        0,
    );
}

#[test]
fn golden_verify_lemma() {
    golden(
        "verify_lemma",
        &["verify-lemma", FULL, "--samples", "50"],
        0,
    );
}

#[test]
fn golden_verify_theorem5() {
    golden(
        "verify_theorem5",
        &["verify-theorem5", FULL, "--samples", "20"],
        0,
    );
}

#[test]
fn golden_almost_complex_check() {
    golden(
        "almost_complex_check",
        &["almost-complex-check", REDUCED],
        0,
    );
}

#[test]
fn reports_echo_config_and_version() {
    let (code, out) = run(&[
        "ip-check",
        REDUCED,
        "--complex-lines",
        "--samples",
        "5",
        "--seed",
        "9",
    ]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["command"], "ip-check");
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["config"]["samples"], 5);
    assert_eq!(v["config"]["bound"], 7);
    assert_eq!(v["config"]["plane_type"], "spacelike");
    assert_eq!(v["config"]["strict_square_class"], false);
}

#[test]
fn seeds_change_samples_but_not_outcome() {
    let (_, a) = run(&["rank-profile", REDUCED, "--samples", "5", "--seed", "1"]);
    let (_, b) = run(&["rank-profile", REDUCED, "--samples", "5", "--seed", "2"]);
    assert_ne!(a, b);
    assert_eq!(parse(&a)["report"]["rank"], parse(&b)["report"]["rank"]);
}

#[test]
fn build_example_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let o = out.to_str().unwrap();
    let (code, report) = run(&[
        "build-example",
        "--delta1",
        "0",
        "--delta2",
        "-1",
        "--lambda1",
        "1/2",
        "--lambda2",
        "-5",
        "-o",
        o,
    ]);
    assert_eq!(code, 0, "{report}");
    let v = parse(&report);
    assert_eq!(v["report"]["dim"], 32);
    assert_eq!(v["report"]["deltas"], serde_json::json!([0, -1]));
    assert_eq!(v["config"]["lambda1"], "1/2");
    let sidecar = parse(&fs::read_to_string(dir.path().join("t.triple.json")).unwrap());
    assert_eq!(sidecar["lambda2"], "-5");
    let (code, out) = run(&["verify-theorem5", o, "--samples", "3"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(parse(&out)["report"]["lambda1"], "1/2");
}

#[test]
fn rejects_both_deltas_zero() {
    let (code, out) = run(&["build-example", "--delta1", "0", "--delta2", "0"]);
    assert_eq!(code, 2);
    assert!(parse(&out)["error"]["code"].is_string());
}

#[test]
fn reduced_needs_positive_deltas() {
    let (code, _) = run(&[
        "build-example",
        "--delta1",
        "-1",
        "--delta2",
        "+1",
        "--reduced",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn corrupted_dense_tensor_fails_with_witness() {
    let mut v = parse(&fs::read_to_string(REDUCED).unwrap());
    v["dense"][0][1][0][1] = Value::String("1000001/3".into());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let (code, out) = run(&["check-symmetries", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    let report = &parse(&out)["report"];
    assert_eq!(report["passed"], false);
    assert!(report["violation"]["indices"].is_array(), "{report}");
}

#[test]
fn mixed_complex_lines_are_rejected() {
    let (code, out) = run(&["ip-check", FULL, "--plane-type", "mixed", "--complex-lines"]);
    assert_eq!(code, 2);
    assert_eq!(parse(&out)["error"]["code"], "no_mixed_complex_lines");
}

#[test]
fn sampler_exhaustion_has_its_own_code() {
    let (code, out) = run(&[
        "ip-check",
        REDUCED,
        "--plane-type",
        "timelike",
        "--max-attempts",
        "50",
    ]);
    assert_eq!(code, 2);
    assert_eq!(parse(&out)["error"]["code"], "sampler_exhausted");
}

#[test]
fn malformed_tensor_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\n  \"space\": [1,\n}").unwrap();
    let (code, out) = run(&["check-symmetries", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let v = parse(&out);
    assert_eq!(v["error"]["code"], "parse");
    assert!(
        v["error"]["message"].as_str().unwrap().contains("line 3"),
        "{v}"
    );
}

#[test]
fn non_admissible_term_is_located() {
    let mut v = parse(&fs::read_to_string(REDUCED).unwrap());
    v["terms"][1]["phi"][0][0] = Value::String("2".into());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let (code, out) = run(&["check-symmetries", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let message = parse(&out)["error"]["message"]
        .as_str()
        .unwrap()
        .to_string();
    assert!(message.contains("$.terms[1].phi"), "{message}");
}

#[test]
fn missing_input_is_an_error() {
    let (code, out) = run(&["check-symmetries", "tests/fixtures/none.json"]);
    assert_eq!(code, 2);
    assert!(parse(&out)["error"]["message"]
        .as_str()
        .unwrap()
        .contains("none.json"));
}

#[test]
fn missing_sidecar_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    fs::copy(REDUCED, &path).unwrap();
    let (code, out) = run(&["jr-spectrum", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(parse(&out)["error"]["message"]
        .as_str()
        .unwrap()
        .contains("t.triple.json"));
}

#[test]
fn triple_on_another_space_is_rejected() {
    let (code, out) = run(&[
        "jr-spectrum",
        REDUCED,
        "--triple",
        "tests/fixtures/full.triple.json",
    ]);
    assert_eq!(code, 2);
    assert_eq!(parse(&out)["error"]["code"], "space_mismatch");
}

#[test]
fn usage_errors_exit_two() {
    let (code, out) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(parse(&out)["error"]["code"], "usage");
    let (code, _) = run(&["ip-check", REDUCED, "--plane-type", "lightlike"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["build-example", "--delta1", "2", "--delta2", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("ip-check"));
    let (code, out) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn binary_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ipcurv"))
        .args([
            "jr-spectrum",
            "-",
            "--triple",
            "tests/fixtures/reduced.triple.json",
            "--samples",
            "3",
        ])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(&fs::read(REDUCED).unwrap())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let v = parse(&String::from_utf8(output.stdout).unwrap());
    assert_eq!(v["config"]["input"], "<stdin>");
    assert_eq!(v["report"]["constant"], true);
}

#[test]
fn binary_exit_codes() {
    let status = Command::new(env!("CARGO_BIN_EXE_ipcurv"))
        .args(["ip-check", REDUCED, "--samples", "20"])
        .stdout(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    let status = Command::new(env!("CARGO_BIN_EXE_ipcurv"))
        .arg("nope")
        .stdout(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}
