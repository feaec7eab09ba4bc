//! End-to-end tests of the `pstforge` binary: every subcommand, the exit
//! code contract, and the file formats, all through real process spawns.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pstforge"));
    // Tests control the mode explicitly; a stray environment setting in the
    // harness must not leak in.
    cmd.env_remove("PSTFORGE_MODE");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should spawn")
}

fn stdout_json(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "command failed: stdout={} stderr={}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout should be JSON")
}

fn write_file(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_uniform_two_matches_the_documented_output() {
    let v = stdout_json(&run(&["spectrum", "gen", "--family", "uniform", "--n", "2"]));
    assert_eq!(v["points"], serde_json::json!(["-1", "0", "1"]));
    assert_eq!(v["time"], "pi");
    assert_eq!(v["mode"], "exact");
}

#[test]
fn gen_gapped_five_one_drops_the_middle_pair_of_levels() {
    let v = stdout_json(&run(&["spectrum", "gen", "--family", "gapped", "--n", "5", "--l", "1"]));
    assert_eq!(v["points"], serde_json::json!(["-5/2", "-3/2", "3/2", "5/2"]));
}

#[test]
fn gen_rejects_family_parameter_mixups() {
    let out = run(&["spectrum", "gen", "--family", "uniform", "--n", "3", "--k", "4"]);
    assert_eq!(out.status.code(), Some(2), "parameter misuse is an inadmissible request");
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "BadParameters");
}

#[test]
fn check_rejects_even_spacing_with_exit_two_and_the_offending_index() {
    let dir = TempDir::new().unwrap();
    let bad = write_file(&dir, "bad.json", r#"{"mode":"exact","points":["0","1","3"]}"#);
    let out = run(&["spectrum", "check", "--in", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["index"], 1);
    assert!(
        err["message"].as_str().unwrap().contains("even spacing multiple at index 1"),
        "message should name the obstruction: {err}"
    );
}

#[test]
fn check_reports_time_and_multiples_for_admissible_points() {
    let dir = TempDir::new().unwrap();
    let ok = write_file(&dir, "ok.json", r#"{"mode":"exact","points":["0","1","4"]}"#);
    let v = stdout_json(&run(&["spectrum", "check", "--in", path_str(&ok)]));
    assert_eq!(v["admissible"], true);
    assert_eq!(v["time"], "pi");
    assert_eq!(v["multiples"], serde_json::json!([1, 3]));
}

#[test]
fn build_produces_the_binomial_chain_with_embedded_spectral_data() {
    let dir = TempDir::new().unwrap();
    let spectrum = dir.path().join("u2.json");
    let out = run(&[
        "spectrum", "gen", "--family", "uniform", "--n", "2", "--out", path_str(&spectrum),
    ]);
    assert!(out.status.success());

    let chain_path = dir.path().join("u2chain.json");
    let out = run(&[
        "chain", "build", "--spectrum", path_str(&spectrum),
        "--algorithm", "both", "--out", path_str(&chain_path),
    ]);
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("persymmetry residual"), "build should log the residual");
    assert!(stderr.contains("cross-check discrepancy"), "both should report agreement");

    let v: Value = serde_json::from_str(&std::fs::read_to_string(&chain_path).unwrap()).unwrap();
    assert_eq!(v["b"], serde_json::json!(["0", "0", "0"]));
    assert_eq!(v["u"], serde_json::json!(["1/2", "1/2"]));
    let j0 = v["j"][0].as_f64().unwrap();
    assert!((j0 - 0.5f64.sqrt()).abs() < 1e-15, "J_1 should be sqrt(1/2), got {j0}");
    assert_eq!(v["spectral_data"]["weights"], serde_json::json!(["1/4", "1/2", "1/4"]));
}

#[test]
fn build_then_verify_exits_zero_across_families_and_modes() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (vec!["--family", "uniform", "--n", "0"], "exact"),
        (vec!["--family", "uniform", "--n", "6"], "float"),
        (vec!["--family", "hyperbolic", "--n", "4", "--k", "4"], "exact"),
        (vec!["--family", "gapped", "--n", "7", "--l", "2"], "float"),
    ];
    for (i, (family_args, mode)) in cases.iter().enumerate() {
        let spectrum = dir.path().join(format!("s{i}.json"));
        let chain = dir.path().join(format!("c{i}.json"));
        let mut args = vec!["spectrum", "gen"];
        args.extend(family_args.iter().copied());
        args.extend(["--mode", mode, "--out", path_str(&spectrum)].iter().copied());
        assert!(run(&args).status.success());
        let out = run(&[
            "chain", "build", "--spectrum", path_str(&spectrum),
            "--mode", mode, "--out", path_str(&chain),
        ]);
        assert!(out.status.success(), "build {i} failed: {}", String::from_utf8_lossy(&out.stderr));
        let out = run(&["chain", "verify", "--in", path_str(&chain)]);
        assert!(
            out.status.success(),
            "verify {i} failed: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        let report: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["pass"], true);
        assert!(report["fidelity"].as_f64().unwrap() >= 1.0 - 1e-10);
    }
}

#[test]
fn verify_writes_a_fidelity_curve_csv() {
    let dir = TempDir::new().unwrap();
    let spectrum = dir.path().join("s.json");
    let chain = dir.path().join("c.json");
    let curve = dir.path().join("curve.csv");
    assert!(run(&["spectrum", "gen", "--family", "uniform", "--n", "3", "--out", path_str(&spectrum)]).status.success());
    assert!(run(&["chain", "build", "--spectrum", path_str(&spectrum), "--out", path_str(&chain)]).status.success());
    let out = run(&[
        "chain", "verify", "--in", path_str(&chain),
        "--curve", path_str(&curve), "--samples", "16",
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&curve).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,re,im,abs"));
    assert_eq!(lines.count(), 16, "one row per sample");
}

#[test]
fn perturbed_coupling_fails_verification_with_exit_four() {
    let dir = TempDir::new().unwrap();
    let spectrum = dir.path().join("s.json");
    let chain = dir.path().join("c.json");
    assert!(run(&[
        "spectrum", "gen", "--family", "uniform", "--n", "4",
        "--mode", "float", "--out", path_str(&spectrum),
    ]).status.success());
    assert!(run(&[
        "chain", "build", "--spectrum", path_str(&spectrum),
        "--mode", "float", "--out", path_str(&chain),
    ]).status.success());

    // A one-percent kick to J_2 (so 2% to U_2) breaks the spectrum.
    let mut v: Value =
        serde_json::from_str(&std::fs::read_to_string(&chain).unwrap()).unwrap();
    let u1 = v["u"][1].as_f64().unwrap();
    v["u"][1] = serde_json::json!(u1 * 1.0201);
    // The stored spectral data no longer describes the couplings; strip it
    // so the verifier measures the chain on its own.
    v.as_object_mut().unwrap().remove("spectral_data");
    std::fs::write(&chain, serde_json::to_string(&v).unwrap()).unwrap();

    let out = run(&["chain", "verify", "--in", path_str(&chain)]);
    assert_eq!(out.status.code(), Some(4), "perturbed chain must fail verification");
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], false);
    assert!(report["fidelity"].as_f64().unwrap() < 1.0 - 1e-8);
}

#[test]
fn single_site_chain_verifies_trivially() {
    let dir = TempDir::new().unwrap();
    let spectrum = dir.path().join("s.json");
    let chain = dir.path().join("c.json");
    assert!(run(&["spectrum", "gen", "--family", "uniform", "--n", "0", "--out", path_str(&spectrum)]).status.success());
    assert!(run(&["chain", "build", "--spectrum", path_str(&spectrum), "--out", path_str(&chain)]).status.success());
    let out = run(&["chain", "verify", "--in", path_str(&chain)]);
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["fidelity"].as_f64().unwrap(), 1.0);
}

#[test]
fn surgery_on_uniform_three_yields_the_three_halves_coupling() {
    let dir = TempDir::new().unwrap();
    let spectrum = dir.path().join("s.json");
    let chain = dir.path().join("c.json");
    let plan = write_file(&dir, "plan.json", r#"{"kind":"remove_middle_pair"}"#);
    let derived = dir.path().join("d.json");
    assert!(run(&["spectrum", "gen", "--family", "uniform", "--n", "3", "--out", path_str(&spectrum)]).status.success());
    assert!(run(&["chain", "build", "--spectrum", path_str(&spectrum), "--out", path_str(&chain)]).status.success());
    let out = run(&[
        "chain", "surgery", "--in", path_str(&chain),
        "--plan", path_str(&plan), "--out", path_str(&derived),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&derived).unwrap()).unwrap();
    assert_eq!(v["u"], serde_json::json!(["9/4"]));
    assert_eq!(v["j"][0].as_f64().unwrap(), 1.5);
    assert_eq!(v["time"], "pi", "surgery inherits the parent transfer time");
}

#[test]
fn surgery_on_uniform_five_lands_on_the_gapped_family_spectrum() {
    let dir = TempDir::new().unwrap();
    let spectrum = dir.path().join("s.json");
    let chain = dir.path().join("c.json");
    let plan = write_file(&dir, "plan.json", r#"{"kind":"remove_middle_pair"}"#);
    let derived = dir.path().join("d.json");
    assert!(run(&["spectrum", "gen", "--family", "uniform", "--n", "5", "--out", path_str(&spectrum)]).status.success());
    assert!(run(&["chain", "build", "--spectrum", path_str(&spectrum), "--out", path_str(&chain)]).status.success());
    assert!(run(&[
        "chain", "surgery", "--in", path_str(&chain),
        "--plan", path_str(&plan), "--out", path_str(&derived),
    ]).status.success());

    let direct = stdout_json(&run(&["spectrum", "gen", "--family", "gapped", "--n", "5", "--l", "1"]));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&derived).unwrap()).unwrap();
    assert_eq!(v["spectral_data"]["points"], direct["points"]);
}

#[test]
fn interior_single_removal_is_refused_with_exit_five() {
    let dir = TempDir::new().unwrap();
    let spectrum = dir.path().join("s.json");
    let chain = dir.path().join("c.json");
    let plan = write_file(&dir, "plan.json", r#"{"kind":"remove_single","j":2}"#);
    assert!(run(&["spectrum", "gen", "--family", "uniform", "--n", "4", "--out", path_str(&spectrum)]).status.success());
    assert!(run(&["chain", "build", "--spectrum", path_str(&spectrum), "--out", path_str(&chain)]).status.success());
    let out = run(&["chain", "surgery", "--in", path_str(&chain), "--plan", path_str(&plan)]);
    assert_eq!(out.status.code(), Some(5));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "InteriorSingleRemoval");
    assert_eq!(err["index"], 2);
}

#[test]
fn surgery_without_spectral_data_is_a_malformed_input() {
    let dir = TempDir::new().unwrap();
    let chain = write_file(
        &dir,
        "bare.json",
        r#"{"mode":"float","n":1,"b":[0.0,0.0],"u":[0.25],"time":"pi"}"#,
    );
    let plan = write_file(&dir, "plan.json", r#"{"kind":"remove_edge_low"}"#);
    let out = run(&["chain", "surgery", "--in", path_str(&chain), "--plan", path_str(&plan)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mode_env_variable_sets_the_default_and_the_flag_wins() {
    let from_env = bin()
        .env("PSTFORGE_MODE", "float")
        .args(["spectrum", "gen", "--family", "uniform", "--n", "2"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&from_env.stdout).unwrap();
    assert_eq!(v["mode"], "float");
    assert!(v["points"][0].is_number(), "float mode encodes points as numbers");

    let flag_wins = bin()
        .env("PSTFORGE_MODE", "float")
        .args(["spectrum", "gen", "--family", "uniform", "--n", "2", "--mode", "exact"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&flag_wins.stdout).unwrap();
    assert_eq!(v["mode"], "exact");

    let junk = bin()
        .env("PSTFORGE_MODE", "symbolic")
        .args(["spectrum", "gen", "--family", "uniform", "--n", "2"])
        .output()
        .unwrap();
    assert_eq!(junk.status.code(), Some(1), "unknown env mode is a usage error");
}

#[test]
fn exact_build_from_a_float_spectrum_file_is_refused() {
    let dir = TempDir::new().unwrap();
    let spectrum = dir.path().join("s.json");
    assert!(run(&[
        "spectrum", "gen", "--family", "uniform", "--n", "3",
        "--mode", "float", "--out", path_str(&spectrum),
    ]).status.success());
    let out = run(&["chain", "build", "--spectrum", path_str(&spectrum), "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(1), "float data cannot be promoted to exact");
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["message"].as_str().unwrap().contains("--mode float"));
}

#[test]
fn missing_input_file_exits_one_with_io_error_json() {
    let out = run(&["spectrum", "check", "--in", "/nonexistent/nowhere.json"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "io");
}

#[test]
fn written_files_are_rereadable_bit_identically() {
    // Exact-mode round trip: generate to a file, rebuild the same chain
    // from it twice, and the two outputs must be byte-identical.
    let dir = TempDir::new().unwrap();
    let spectrum = dir.path().join("s.json");
    let c1 = dir.path().join("c1.json");
    let c2 = dir.path().join("c2.json");
    assert!(run(&["spectrum", "gen", "--family", "hyperbolic", "--n", "3", "--k", "6", "--out", path_str(&spectrum)]).status.success());
    assert!(run(&["chain", "build", "--spectrum", path_str(&spectrum), "--out", path_str(&c1)]).status.success());
    assert!(run(&["chain", "build", "--spectrum", path_str(&spectrum), "--out", path_str(&c2)]).status.success());
    assert_eq!(
        std::fs::read(&c1).unwrap(),
        std::fs::read(&c2).unwrap(),
        "exact-mode output is deterministic"
    );
    // And the chain file itself parses back through verify.
    assert!(run(&["chain", "verify", "--in", path_str(&c1)]).status.success());
}

#[test]
fn csv_export_lists_fields_and_couplings() {
    let dir = TempDir::new().unwrap();
    let spectrum = dir.path().join("s.json");
    let chain = dir.path().join("c.json");
    let csv = dir.path().join("c.csv");
    assert!(run(&["spectrum", "gen", "--family", "uniform", "--n", "2", "--out", path_str(&spectrum)]).status.success());
    assert!(run(&[
        "chain", "build", "--spectrum", path_str(&spectrum),
        "--out", path_str(&chain), "--csv", path_str(&csv),
    ]).status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,index,value"));
    assert_eq!(text.matches("\nB,").count() + usize::from(text.starts_with("B,")), 3);
    assert_eq!(text.matches("\nJ,").count(), 2);
}
