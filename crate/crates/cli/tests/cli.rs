//! End-to-end checks of the command-line surface: flag validation, config
//! merging, CSV shape, and the documented exit codes (0 success, 2 usage).

use std::path::PathBuf;
use std::process::{Command, Output};

fn spinlock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinlock"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Parses the header+row output of `eval` into (column, field) pairs.
fn eval_fields(out: &Output) -> Vec<(String, String)> {
    let text = stdout(out);
    let mut lines = text.lines();
    let header = lines.next().expect("header line");
    let row = lines.next().expect("data row");
    header
        .split(',')
        .map(str::to_string)
        .zip(row.split(',').map(str::to_string))
        .collect()
}

fn field(out: &Output, name: &str) -> f64 {
    let fields = eval_fields(out);
    let (_, v) = fields
        .iter()
        .find(|(k, _)| k == name)
        .unwrap_or_else(|| panic!("column {name} missing"));
    v.parse().unwrap_or_else(|_| panic!("bad value '{v}' in {name}"))
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("spinlock-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn help_exits_zero_and_lists_every_flag() {
    let out = spinlock(&["--help"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("eval"));
    assert!(text.contains("sweep"));

    let out = spinlock(&["eval", "--help"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for flag in [
        "--scheme",
        "--a",
        "--phi",
        "--phi-deg",
        "--tbar",
        "--beta",
        "--periods",
        "--observables",
        "--theta",
        "--seed",
        "--opt-population",
        "--opt-generations",
        "--opt-sigma0",
        "--opt-decay",
        "--config",
    ] {
        assert!(text.contains(flag), "eval --help is missing {flag}");
    }

    let out = spinlock(&["sweep", "--help"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for flag in ["--spec", "--preset", "--out", "--threads", "--seed", "--config"] {
        assert!(text.contains(flag), "sweep --help is missing {flag}");
    }
}

#[test]
fn stationary_point_evaluates_to_zeros() {
    let out = spinlock(&[
        "eval",
        "--scheme",
        "A",
        "--a",
        "2",
        "--tbar",
        "1",
        "--beta",
        "4",
        "--periods",
        "100",
        "--observables",
        "concurrence_closed,discord_exact",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(field(&out, "concurrence_closed").abs() < 1e-12);
    assert!(field(&out, "discord_exact").abs() < 1e-12);
}

#[test]
fn magnetization_matches_the_locking_formula() {
    let out = spinlock(&[
        "eval",
        "--scheme",
        "A",
        "--a",
        "3",
        "--tbar",
        "1",
        "--beta",
        "2",
        "--periods",
        "1",
        "--observables",
        "magnetization",
    ]);
    assert!(out.status.success());
    let expect = 1.0f64.tanh() * 1.5f64.cos();
    assert!((field(&out, "magnetization") - expect).abs() < 1e-10);
}

#[test]
fn quarter_angle_concurrence_is_positive_after_eight_periods() {
    let out = spinlock(&[
        "eval",
        "--scheme",
        "B",
        "--phi",
        "0.7853981633974483",
        "--tbar",
        "0.1",
        "--beta",
        "3",
        "--periods",
        "8",
        "--observables",
        "concurrence_closed",
    ]);
    assert!(out.status.success());
    assert!(field(&out, "concurrence_closed") > 0.0);
}

#[test]
fn conflicting_scheme_flags_exit_two() {
    let out = spinlock(&[
        "eval", "--scheme", "B", "--a", "2", "--tbar", "1", "--beta", "1", "--periods", "1",
        "--observables", "magnetization",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--a"));

    let out = spinlock(&[
        "eval", "--scheme", "A", "--a", "2", "--phi", "1.0", "--tbar", "1", "--beta", "1",
        "--periods", "1", "--observables", "magnetization",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = spinlock(&[
        "eval", "--scheme", "A", "--tbar", "1", "--beta", "1", "--periods", "1",
        "--observables", "magnetization",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--a"));
}

#[test]
fn discord_requires_scheme_a() {
    let out = spinlock(&[
        "eval", "--scheme", "B", "--phi", "0.5", "--tbar", "1", "--beta", "1", "--periods", "1",
        "--observables", "discord_exact",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("scheme A"));
}

#[test]
fn unknown_observable_is_diagnosed() {
    let out = spinlock(&[
        "eval", "--scheme", "A", "--a", "2", "--tbar", "1", "--beta", "1", "--periods", "1",
        "--observables", "entanglement_of_formation",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("unknown observable"));
    assert!(err.contains("concurrence_closed"));
}

#[test]
fn degrees_flag_matches_radians_flag() {
    let common = [
        "--tbar", "0.1", "--beta", "3", "--periods", "8", "--observables", "concurrence_closed",
    ];
    let mut rad = vec!["eval", "--scheme", "B", "--phi", "0.7853981633974483"];
    rad.extend_from_slice(&common);
    let mut deg = vec!["eval", "--scheme", "B", "--phi-deg", "45"];
    deg.extend_from_slice(&common);
    let out_rad = spinlock(&rad);
    let out_deg = spinlock(&deg);
    assert!(out_rad.status.success() && out_deg.status.success());
    let v_rad = field(&out_rad, "concurrence_closed");
    let v_deg = field(&out_deg, "concurrence_closed");
    assert!((v_rad - v_deg).abs() < 1e-12);

    let mut both = vec!["eval", "--scheme", "B", "--phi", "0.5", "--phi-deg", "45"];
    both.extend_from_slice(&common);
    assert_eq!(spinlock(&both).status.code(), Some(2));
}

#[test]
fn config_file_fills_defaults_and_flags_override() {
    let path = tmp_path("eval.conf");
    std::fs::write(
        &path,
        "# defaults for the stationary point\nscheme = A\na = 2\ntbar = 1\nbeta = 4\nperiods = 100\nobservables = concurrence_closed\n",
    )
    .unwrap();
    let out = spinlock(&["eval", "--config", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(field(&out, "concurrence_closed").abs() < 1e-12);

    // Override beta on the command line: still zero concurrence at a = 2,
    // but the echoed beta column must show the override.
    let out = spinlock(&[
        "eval",
        "--config",
        path.to_str().unwrap(),
        "--beta",
        "2",
    ]);
    assert!(out.status.success());
    assert!((field(&out, "beta") - 2.0).abs() < 1e-12);
    std::fs::remove_file(&path).ok();
}

#[test]
fn unknown_config_keys_are_rejected_with_the_valid_list() {
    let path = tmp_path("bad.conf");
    std::fs::write(&path, "scheme = A\nbogus_knob = 7\n").unwrap();
    let out = spinlock(&["eval", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("bogus_knob"));
    assert!(err.contains("valid keys"));
    assert!(err.contains("observables"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn sweep_runs_a_spec_file_and_reports_errors_per_point() {
    let spec_path = tmp_path("sweep.spec");
    let out_path = tmp_path("sweep.csv");
    std::fs::write(
        &spec_path,
        "scheme = B\nphi = 1.0\nperiods = 3\ntbar = 0.4\n\
         observables = concurrence_oracle,concurrence_closed\n\
         axis.beta = 1,5\n",
    )
    .unwrap();
    let out = spinlock(&[
        "sweep",
        "--spec",
        spec_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    // Per-point closed-form failures land in the error column; exit stays 0.
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("2 rows"));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data[0], "beta,concurrence_oracle,concurrence_closed,error");
    assert_eq!(data.len(), 3);
    for row in &data[1..] {
        assert!(row.contains("closed-form"), "row: {row}");
    }
    std::fs::remove_file(&spec_path).ok();
    std::fs::remove_file(&out_path).ok();
}

#[test]
fn sweep_spec_parse_failures_exit_two() {
    let spec_path = tmp_path("broken.spec");
    std::fs::write(&spec_path, "axis.beta = 1,2\n").unwrap(); // no scheme
    let out_path = tmp_path("broken.csv");
    let out = spinlock(&[
        "sweep",
        "--spec",
        spec_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("scheme"));
    std::fs::remove_file(&spec_path).ok();
}

#[test]
fn sweep_needs_exactly_one_definition_source() {
    let out = spinlock(&["sweep", "--out", "/tmp/unused.csv"]);
    assert_eq!(out.status.code(), Some(2));
    let out = spinlock(&[
        "sweep", "--preset", "fig3", "--spec", "/tmp/nope.spec", "--out", "/tmp/unused.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = spinlock(&["sweep", "--preset", "not-a-preset", "--out", "/tmp/unused.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("fig5b"));
}

#[test]
fn thread_count_does_not_change_the_bytes() {
    let out1 = tmp_path("threads1.csv");
    let out4 = tmp_path("threads4.csv");
    for (path, threads) in [(&out1, "1"), (&out4, "4")] {
        let out = spinlock(&[
            "sweep",
            "--preset",
            "fig5a",
            "--out",
            path.to_str().unwrap(),
            "--threads",
            threads,
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out4).unwrap();
    assert_eq!(a, b);
    std::fs::remove_file(&out1).ok();
    std::fs::remove_file(&out4).ok();
}

#[test]
fn linspace_and_range_axis_syntax() {
    let spec_path = tmp_path("axes.spec");
    let out_path = tmp_path("axes.csv");
    std::fs::write(
        &spec_path,
        "scheme = A\na = 3\ntbar = 0.5\n\
         observables = concurrence_closed\n\
         axis.beta = linspace:0:7:8\naxis.periods = range:1:5:2\n",
    )
    .unwrap();
    let out = spinlock(&[
        "sweep",
        "--spec",
        spec_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let rows = text.lines().filter(|l| !l.starts_with('#')).count() - 1;
    assert_eq!(rows, 8 * 3); // periods 1, 3, 5
    assert!(text.contains("\n7.00000000000000e0,5,"));
    std::fs::remove_file(&spec_path).ok();
    std::fs::remove_file(&out_path).ok();
}
