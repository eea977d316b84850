//! End-to-end tests of the `fluxlink` binary: output formats, config
//! handling, determinism, and the exit-code contract (0 success, 2 bad
//! config/input, 3 inadmissible amplitude, 4 verification failure, 5 I/O).

use std::path::Path;
use std::process::{Command, Output};

fn fluxlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fluxlink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, extra: &str) -> std::path::PathBuf {
    let path = dir.join("test.cfg");
    let base = "material = Sn\nb_prime_gauss = 294\nsteps_per_quarter = 8\ncycles = 1\n";
    std::fs::write(&path, format!("{base}{extra}")).unwrap();
    path
}

fn stdout_str(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn simulate_streams_csv_to_stdout_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "");
    let config = config.to_str().unwrap();
    let first = fluxlink(&["simulate", "--config", config]);
    assert!(first.status.success());
    let text = stdout_str(&first);
    assert!(text.starts_with("step,B_applied_T,state,n,probe_T,zero_crossing\n"));
    assert_eq!(text.lines().count(), 1 + 4 * 8 + 1); // header + samples
    let second = fluxlink(&["simulate", "--config", config]);
    assert_eq!(first.stdout, second.stdout); // byte-identical rerun
}

#[test]
fn simulate_writes_files_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "verify = true\n");
    let csv = dir.path().join("run.csv");
    let plot = dir.path().join("loop.csv");
    let output = fluxlink(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
        "--loop-out",
        plot.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stdout_str(&output));
    let summary = stdout_str(&output);
    let mut fields = std::collections::HashMap::new();
    for line in summary.lines() {
        let (key, value) = line.split_once('=').unwrap();
        fields.insert(key.to_string(), value.to_string());
    }
    assert_eq!(fields["samples"], "33");
    let pos: f64 = fields["remnant_pos_T"].parse().unwrap();
    let neg: f64 = fields["remnant_neg_T"].parse().unwrap();
    let delta: f64 = fields["delta_b_T"].parse().unwrap();
    assert!(pos > 0.0 && neg < 0.0);
    assert!((pos + neg - delta).abs() < 1e-18);

    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("step,B_applied_T,state,n,probe_T,zero_crossing\n"));
    assert_eq!(csv_text.lines().count(), 34);
    let plot_text = std::fs::read_to_string(&plot).unwrap();
    assert!(plot_text.starts_with("B_applied_T,probe_T\n"));
    assert_eq!(plot_text.lines().count(), 34);
}

#[test]
fn set_overrides_apply_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "");
    let output = fluxlink(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--set",
        "cycles=2",
        "--set",
        "cycles=3",
    ]);
    assert!(output.status.success());
    // last --set wins: 3 cycles of 32 samples plus the initial zero
    assert_eq!(stdout_str(&output).lines().count(), 1 + 4 * 8 * 3 + 1);

    let bad = fluxlink(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--set",
        "cycles",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn inadmissible_amplitudes_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "");
    let config = config.to_str().unwrap();
    // below the tin critical field: the ring never quenches
    let low = fluxlink(&[
        "simulate", "--config", config, "--set", "b_prime_gauss=100",
    ]);
    assert_eq!(low.status.code(), Some(3));
    // at the lead critical field: the torus would quench
    let high = fluxlink(&[
        "simulate", "--config", config, "--set", "b_prime_gauss=780",
    ]);
    assert_eq!(high.status.code(), Some(3));
}

#[test]
fn verification_failure_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    // a core holding a million quanta overwhelms the quadrature tolerance
    let config = write_config(dir.path(), "verify = true\ncore_flux_wb = 2.07e-9\n");
    let output = fluxlink(&["simulate", "--config", config.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(4));
}

#[test]
fn config_problems_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let unknown_key = dir.path().join("bad.cfg");
    std::fs::write(&unknown_key, "not_a_key = 1\n").unwrap();
    let output = fluxlink(&["simulate", "--config", unknown_key.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));

    let bad_material = write_config(dir.path(), "material = Nb\n");
    let output = fluxlink(&["simulate", "--config", bad_material.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn missing_config_exits_5() {
    let output = fluxlink(&["simulate", "--config", "/no/such/file.cfg"]);
    assert_eq!(output.status.code(), Some(5));
}

#[test]
fn sweep_tabulates_asymmetry() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "");
    let out = dir.path().join("sweep.csv");
    let output = fluxlink(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--key",
        "core_flux_wb",
        "--from",
        "0",
        "--to",
        "2.0678338484619295e-15",
        "--points",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "core_flux_wb,delta_b_T");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0,"));
    // flux-free core: exactly symmetric remnants
    assert_eq!(lines[1], "0,0");
    // a full quantum restores ΔB = 0 up to rounding
    let last_delta: f64 = lines[3].split(',').nth(1).unwrap().parse().unwrap();
    assert!(last_delta.abs() < 1e-12);

    let bad_key = fluxlink(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--key",
        "material",
        "--from",
        "0",
        "--to",
        "1",
        "--points",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(bad_key.status.code(), Some(2));
}

#[test]
fn phase_reports_quantised_holonomy() {
    let output = fluxlink(&["phase", "--flux-quanta", "2", "--charge-pairs"]);
    assert!(output.status.success());
    let text = stdout_str(&output);
    let ratio: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("ratio_2pi="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((ratio - 2.0).abs() < 1e-3, "ratio {ratio}");

    // a single elementary charge sees half the phase
    let single = fluxlink(&["phase", "--flux-quanta", "2"]);
    let text = stdout_str(&single);
    let ratio: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("ratio_2pi="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((ratio - 1.0).abs() < 1e-3, "ratio {ratio}");
}

#[test]
fn linking_reads_curve_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.txt");
    // diamond in the z = 0 plane, pierced once by a diamond in y = 0
    std::fs::write(
        &path,
        "1 0 0\n0 1 0\n-1 0 0\n0 -1 0\n\n1.1 0 0\n0.5 0 0.6\n-0.1 0 0\n0.5 0 -0.6\n",
    )
    .unwrap();
    let output = fluxlink(&["linking", "--curves", path.to_str().unwrap()]);
    assert!(output.status.success());
    let text = stdout_str(&output);
    assert!(text.contains("linking_integer=-1") || text.contains("linking_integer=1"));

    // touching curves are rejected
    std::fs::write(
        &path,
        "1 0 0\n0 1 0\n-1 0 0\n0 -1 0\n\n1 0 0\n0.5 0 0.6\n0 0 0\n0.5 0 -0.6\n",
    )
    .unwrap();
    let touching = fluxlink(&["linking", "--curves", path.to_str().unwrap()]);
    assert_eq!(touching.status.code(), Some(2));

    // malformed: only one curve
    std::fs::write(&path, "1 0 0\n0 1 0\n-1 0 0\n").unwrap();
    let single = fluxlink(&["linking", "--curves", path.to_str().unwrap()]);
    assert_eq!(single.status.code(), Some(2));

    // malformed: non-numeric coordinate
    std::fs::write(&path, "1 0 0\n0 x 0\n-1 0 0\n\n0 0 1\n0 1 0\n1 0 0\n").unwrap();
    let garbled = fluxlink(&["linking", "--curves", path.to_str().unwrap()]);
    assert_eq!(garbled.status.code(), Some(2));

    let missing = fluxlink(&["linking", "--curves", "/no/such/curves.txt"]);
    assert_eq!(missing.status.code(), Some(5));
}
