//! End-to-end tests of the `whitham-mi` binary: output contract (metadata
//! echo, headers, full-precision floats, byte-identical reruns), the
//! documented error lines with nonzero exits, and the headline numbers of
//! each subcommand.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_whitham-mi"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 stdout")
}

/// Expect a nonzero exit whose single stderr line starts with `prefix`.
fn run_err(args: &[&str], prefix: &str) {
    let out = run(args);
    assert!(!out.status.success(), "expected failure for {args:?}");
    let stderr = String::from_utf8(out.stderr).expect("utf-8 stderr");
    let line = stderr.trim_end();
    assert!(
        line.starts_with(prefix) && !line.contains('\n'),
        "stderr for {args:?} should be one line starting with {prefix:?}, got {stderr:?}"
    );
}

/// Metadata value echoed as `# key = value`.
fn meta(csv: &str, key: &str) -> String {
    let tag = format!("# {key} = ");
    csv.lines()
        .find_map(|l| l.strip_prefix(&tag))
        .unwrap_or_else(|| panic!("metadata line {tag:?} missing"))
        .to_string()
}

/// Data rows: everything after the (non-`#`) header line, split on commas.
fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn floats(rows: &[Vec<String>], col: usize) -> Vec<f64> {
    rows.iter()
        .map(|r| r[col].parse::<f64>().expect("float column"))
        .collect()
}

#[test]
fn critical_finds_the_whitham_root_deterministically() {
    let csv = run_ok(&["critical", "--symbol", "whitham"]);
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 1);
    let root: f64 = rows[0][0].parse().unwrap();
    assert!((1.145..1.147).contains(&root), "root {root}");
    let residual: f64 = rows[0][3].parse().unwrap();
    assert!(residual.abs() < 1e-10);
    assert_eq!(meta(&csv, "transversal"), "true");

    let rerun = run_ok(&["critical", "--symbol", "whitham"]);
    assert_eq!(csv, rerun, "reruns must be byte-identical");
}

#[test]
fn critical_reports_missing_bracket_for_stable_symbols() {
    run_err(&["critical", "--symbol", "ilw:0.5"], "error: bracket:");
    run_err(
        &["critical", "--symbol", "whitham", "--interval", "2,50"],
        "error: bracket:",
    );
}

#[test]
fn index_classifies_the_three_reference_cases() {
    let unstable = run_ok(&["index", "--symbol", "whitham", "--kappa", "2"]);
    assert_eq!(data_rows(&unstable)[0][3], "modulationally-unstable");
    let gamma: f64 = data_rows(&unstable)[0][1].parse().unwrap();
    assert!(gamma < 0.0);

    let threshold = run_ok(&["index", "--symbol", "fkdv:1", "--kappa", "1"]);
    assert_eq!(data_rows(&threshold)[0][3], "inconclusive");

    let stable = run_ok(&["index", "--symbol", "ilw:1", "--kappa", "3"]);
    assert_eq!(data_rows(&stable)[0][3], "spectrally-stable");
}

#[test]
fn bad_inputs_fail_with_usage_lines() {
    run_err(&["index", "--symbol", "nosuch", "--kappa", "1"], "error: usage:");
    run_err(&["index", "--symbol", "whitham"], "error: usage:");
    run_err(
        &["index", "--symbol", "whitham", "--kappa", "1", "--kappa-range", "1,2,3"],
        "error: usage:",
    );
    run_err(
        &["scan", "--symbol", "whitham", "--kappa-range", "1,2"],
        "error: usage:",
    );
    run_err(
        &["scan", "--symbol", "whitham", "--kappa-range", "2,1,5"],
        "error: usage:",
    );
    run_err(
        &["bloch", "--symbol", "whitham", "--kappa", "1", "--tau-range", "x,y,z"],
        "error: usage:",
    );
    run_err(
        &["critical", "--symbol", "whitham", "--interval", "abc"],
        "error: usage:",
    );
}

#[test]
fn scan_shows_one_sign_change_then_stays_negative() {
    let csv = run_ok(&["scan", "--symbol", "whitham", "--kappa-range", "0.05,1.5,30"]);
    let gamma = floats(&data_rows(&csv), 1);
    let changes = gamma.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    assert_eq!(changes, 1, "gammas {gamma:?}");

    let tail = run_ok(&["scan", "--symbol", "whitham", "--kappa-range", "1.2,6,20"]);
    assert!(floats(&data_rows(&tail), 1).iter().all(|&g| g < 0.0));
}

#[test]
fn wave_solves_flat_and_small_amplitude_states() {
    let flat = run_ok(&["wave", "--symbol", "whitham", "--kappa", "1"]);
    let c: f64 = meta(&flat, "c").parse().unwrap();
    let alpha_1 = (1.0f64.tanh() / 1.0).sqrt();
    assert!((c - alpha_1).abs() < 1e-12, "flat wave speed {c}");
    assert!(floats(&data_rows(&flat), 1).iter().all(|&w| w.abs() < 1e-14));

    let small = run_ok(&["wave", "--symbol", "whitham", "--kappa", "1", "--a", "0.02"]);
    let residual: f64 = meta(&small, "residual_norm").parse().unwrap();
    assert!(residual <= 1e-12, "residual {residual}");
    let rows = data_rows(&small);
    assert_eq!(rows.len(), 65, "coefficients 0..=64");
    let first: f64 = rows[1][1].parse().unwrap();
    assert!((first - 0.02).abs() < 1e-13, "fundamental pinned to a");
}

#[test]
fn wave_profile_samples_one_period() {
    let csv = run_ok(&["wave", "--symbol", "whitham", "--kappa", "1", "--a", "0.02", "--profile"]);
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 512);
    assert_eq!(meta(&csv, "samples"), "512");
    let w = floats(&rows, 1);
    // Crest at z = 0 for a positive-amplitude cosine wave.
    assert!(w[0] > w[256], "crest/trough ordering");
}

#[test]
fn bloch_spectrum_of_flat_state_is_purely_imaginary() {
    let csv = run_ok(&[
        "bloch", "--symbol", "whitham", "--kappa", "1", "--modes", "16",
        "--tau-range", "0,0.25,6",
    ]);
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 6 * 33, "6 slices x 33 eigenvalues");
    assert!(floats(&rows, 1).iter().all(|&re| re.abs() <= 1e-10));
}

#[test]
fn bloch_growth_separates_unstable_from_stable_wavenumbers() {
    let unstable = run_ok(&[
        "bloch", "--symbol", "whitham", "--kappa", "2", "--a", "0.02", "--modes", "32",
        "--tau-range", "0.0125,0.1,8", "--growth",
    ]);
    let overall: f64 = meta(&unstable, "overall_max_growth").parse().unwrap();
    assert!(overall > 1e-8, "unstable wave must grow, got {overall}");
    assert!(floats(&data_rows(&unstable), 1).iter().any(|&g| g > 1e-8));

    let stable = run_ok(&[
        "bloch", "--symbol", "whitham", "--kappa", "0.5", "--a", "0.02", "--modes", "48",
        "--tau-range", "0,0.5,11", "--growth",
    ]);
    assert!(floats(&data_rows(&stable), 1).iter().all(|&g| g <= 1e-6));
}

#[test]
fn pencil_classification_switches_once_across_the_critical_wavenumber() {
    let csv = run_ok(&[
        "pencil", "--symbol", "whitham", "--kappa-range", "1.096,1.196,11",
        "--tau", "0.01", "--a", "0.02",
    ]);
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 11);
    let classes: Vec<&str> = rows.iter().map(|r| r[6].as_str()).collect();
    assert_eq!(classes[0], "spectrally-stable");
    assert_eq!(classes[10], "modulationally-unstable");
    let switches = classes.windows(2).filter(|w| w[0] != w[1]).count();
    assert_eq!(switches, 1, "classes {classes:?}");
}

#[test]
fn json_format_carries_config_columns_and_rows() {
    let text = run_ok(&["index", "--symbol", "whitham", "--kappa", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    assert_eq!(v["config"]["command"], "index");
    assert_eq!(v["config"]["symbol"], "whitham");
    let columns = v["columns"].as_array().expect("columns array");
    assert_eq!(columns.len(), 4);
    let rows = v["rows"].as_array().expect("rows array");
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].as_array().unwrap().len(), columns.len());
    assert_eq!(rows[0][3], "modulationally-unstable");
}

#[test]
fn out_file_matches_stdout_bytes() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("critical.csv");
    let stdout = run_ok(&["critical", "--symbol", "whitham"]);
    let out = run(&["critical", "--symbol", "whitham", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "--out must silence stdout");
    let written = std::fs::read_to_string(&path).expect("out file written");
    assert_eq!(stdout, written);
}
