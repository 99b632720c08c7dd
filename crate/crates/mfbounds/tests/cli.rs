//! End-to-end CLI tests: exit-code contract, file outputs, help golden files,
//! and the CSV round-trip through a real subprocess.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_mfbounds")
}

fn tmp(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mfbounds-cli-{tag}"));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str], runs_dir: &Path) -> Output {
    Command::new(bin())
        .args(args)
        .env("MFBOUNDS_RUNS_DIR", runs_dir)
        .output()
        .expect("binary runs")
}

#[test]
fn simulate_writes_path_with_expected_rows() {
    let dir = tmp("simulate");
    let out = dir.join("p.csv");
    let output = run(
        &[
            "simulate",
            "--process",
            "stable",
            "--alpha",
            "1",
            "--n",
            "10000",
            "--seed",
            "42",
            "--out",
            out.to_str().unwrap(),
        ],
        &dir,
    );
    assert!(output.status.success(), "{output:?}");
    let text = std::fs::read_to_string(&out).unwrap();
    let rows = text.lines().count();
    assert_eq!(rows, 10_002, "header + 10001 samples");
    assert!(text.starts_with("t,x\n"));
    assert!(dir.join("p.json").exists(), "sidecar missing");
}

#[test]
fn scaling_rejects_zero_m_naming_the_field() {
    let dir = tmp("zero-m");
    let path_csv = dir.join("p.csv");
    let ok = run(
        &[
            "simulate",
            "--process",
            "bm",
            "--n",
            "256",
            "--out",
            path_csv.to_str().unwrap(),
        ],
        &dir,
    );
    assert!(ok.status.success());
    let output = run(
        &[
            "scaling",
            "--input",
            path_csv.to_str().unwrap(),
            "--mode",
            "modified",
            "--m",
            "0",
            "--out",
            dir.join("tau.csv").to_str().unwrap(),
        ],
        &dir,
    );
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("`m`"), "stderr: {stderr}");
    assert!(!dir.join("tau.csv").exists(), "no partial files on validation errors");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let dir = tmp("unknown-flag");
    let output = run(&["simulate", "--bogus", "1"], &dir);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn figure_three_emits_svg_and_csvs() {
    let dir = tmp("figure3");
    let outdir = dir.join("f");
    let output = run(
        &[
            "figure",
            "3",
            "--outdir",
            outdir.to_str().unwrap(),
            "--seeds",
            "2",
        ],
        &dir,
    );
    assert!(output.status.success(), "{output:?}");
    assert!(outdir.join("figure3.svg").exists());
    for file in [
        "config.json",
        "manifest.json",
        "tau_standard.csv",
        "tau_modified.csv",
        "spectrum_standard.csv",
        "spectrum_modified.csv",
        "reference_tau.csv",
        "reference_spectrum.csv",
    ] {
        assert!(outdir.join(file).exists(), "missing {file}");
    }
    // Panel (a) carries the four labeled curves.
    let svg = std::fs::read_to_string(outdir.join("figure3.svg")).unwrap();
    for label in [
        "tau_hat (standard)",
        "tau_tilde (m=20)",
        "reference tau",
        "self-similar 0.9q",
    ] {
        assert!(svg.contains(label), "missing series label {label}");
    }
    // The run is in the registry.
    let listed = run(&["list-runs"], &dir);
    assert!(listed.status.success());
    assert!(!String::from_utf8_lossy(&listed.stdout).trim().is_empty());
}

#[test]
fn scaling_of_reloaded_csv_matches_in_process_results() {
    use mfbounds::estimate::{partition_function, scaling_function, MomentGrid, ScaleGrid};
    use mfbounds::sim::{generate, ProcessSpec, Seed};

    let dir = tmp("roundtrip");
    let path_csv = dir.join("p.csv");
    let tau_csv = dir.join("tau.csv");
    let sim = run(
        &[
            "simulate",
            "--process",
            "mrw",
            "--lambda2",
            "0.025",
            "--n",
            "2048",
            "--seed",
            "7",
            "--out",
            path_csv.to_str().unwrap(),
        ],
        &dir,
    );
    assert!(sim.status.success());
    let scale = run(
        &[
            "scaling",
            "--input",
            path_csv.to_str().unwrap(),
            "--q-min",
            "-2",
            "--q-max",
            "3",
            "--q-step",
            "0.5",
            "--scales",
            "10",
            "--max-delta",
            "64",
            "--out",
            tau_csv.to_str().unwrap(),
        ],
        &dir,
    );
    assert!(scale.status.success(), "{scale:?}");

    // Identical computation fully in process.
    let spec = ProcessSpec::Mrw {
        lambda2: 0.025,
        horizon: 2048.0,
    };
    let path = generate(&spec, 2048, 2048.0, Seed(7)).unwrap();
    let qs = MomentGrid::range(-2.0, 3.0, 0.5).unwrap();
    let grid = ScaleGrid::geometric(64.0, 10, 1.0).unwrap();
    let est = scaling_function(&partition_function(&path, &qs, &grid).unwrap()).unwrap();

    let (qs_file, tau_file, r2_file) = mfbounds::io::read_tau_csv(&tau_csv).unwrap();
    assert_eq!(qs_file, qs.qs());
    assert_eq!(tau_file, est.tau, "CSV round-trip must be bit-exact");
    assert_eq!(r2_file, est.r2);
}

#[test]
fn bounds_json_matches_closed_forms() {
    let dir = tmp("bounds");
    let output = run(
        &["bounds", "--family", "mrw", "--lambda2", "0.025"],
        &dir,
    );
    assert!(output.status.success());
    let json: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("valid JSON on stdout");
    let l2 = 0.025_f64;
    let got = json["h_minus"].as_f64().unwrap();
    assert!((got - (0.5 + l2 - (2.0 * l2).sqrt())).abs() < 1e-9);
    let got = json["h_tilde_plus"].as_f64().unwrap();
    assert!((got - (1.5 + 1.5 * l2)).abs() < 1e-9);
    let got = json["h_plus"].as_f64().unwrap();
    assert!((got - (0.5 + l2 + (2.0 * l2).sqrt())).abs() < 1e-9);
    assert!(json["hsssi_low"].is_null());
    assert_eq!(json["trivial"], serde_json::Value::Bool(false));

    // FBM-style: trivial spectrum flag via infinite top moment order.
    let output = run(
        &["bounds", "--family", "self-similar", "--hurst", "0.7"],
        &dir,
    );
    assert!(output.status.success());
    let json: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(json["trivial"], serde_json::Value::Bool(true));
    assert_eq!(json["hsssi_low"].as_f64().unwrap(), 0.7);
    assert_eq!(json["hsssi_high"].as_f64().unwrap(), 0.7);
}

#[test]
fn spectrum_closed_form_and_legendre_agree_for_cascade() {
    let dir = tmp("spectrum");
    let closed = dir.join("closed.csv");
    let numeric = dir.join("numeric.csv");
    let a = run(
        &[
            "spectrum", "--family", "cascade", "--lambda2", "0.025",
            "--method", "closed-form",
            "--h-min", "0.4", "--h-max", "1.8", "--h-step", "0.01",
            "--out", closed.to_str().unwrap(),
        ],
        &dir,
    );
    assert!(a.status.success(), "{a:?}");
    let b = run(
        &[
            "spectrum", "--family", "cascade", "--lambda2", "0.025",
            "--h-min", "0.4", "--h-max", "1.8", "--h-step", "0.01",
            "--out", numeric.to_str().unwrap(),
        ],
        &dir,
    );
    assert!(b.status.success(), "{b:?}");
    let read = |p: &Path| -> Vec<(f64, f64)> {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| {
                let mut it = l.split(',');
                (
                    it.next().unwrap().parse().unwrap(),
                    it.next().unwrap().parse().unwrap(),
                )
            })
            .collect()
    };
    let ca = read(&closed);
    let nb = read(&numeric);
    assert_eq!(ca.len(), nb.len());
    for ((h, dc), (_, dn)) in ca.iter().zip(nb.iter()) {
        if dc.is_finite() && dn.is_finite() {
            assert!((dc - dn).abs() < 1e-6, "h = {h}: {dc} vs {dn}");
        }
    }
}

#[test]
fn run_subcommand_executes_config_and_registers() {
    let dir = tmp("run");
    let config = serde_json::json!({
        "process": {"family": "bm"},
        "n": 512,
        "horizon": 512.0,
        "seeds": [1],
        "q_grid": {"min": -1.0, "max": 2.0, "step": 0.5},
        "scale_count": 8,
        "modes": [{"mode": "standard"}, {"mode": "modified", "m": 5}],
        "h_grid": {"min": 0.0, "max": 1.2, "step": 0.01},
        "reference": {"family": "self_similar", "hurst": 0.5}
    });
    let config_path = dir.join("config.json");
    std::fs::write(&config_path, serde_json::to_string_pretty(&config).unwrap()).unwrap();
    let output = run(
        &["run", "--config", config_path.to_str().unwrap()],
        &dir,
    );
    assert!(output.status.success(), "{output:?}");
    let stdout = String::from_utf8_lossy(&output.stdout);
    let id = stdout.split_whitespace().nth(1).unwrap().to_string();
    let shown = run(&["list-runs", "--id", &id], &dir);
    assert!(shown.status.success());
    let record: serde_json::Value = serde_json::from_slice(&shown.stdout).unwrap();
    assert_eq!(record["status"], "success");

    // Pipeline failures exit 2 and still register a failed record.
    let mut bad = config.clone();
    bad["scale_count"] = serde_json::json!(2);
    let bad_path = dir.join("bad.json");
    std::fs::write(&bad_path, serde_json::to_string(&bad).unwrap()).unwrap();
    let output = run(&["run", "--config", bad_path.to_str().unwrap()], &dir);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("regression"), "{stderr}");
    let listed = run(&["list-runs"], &dir);
    let text = String::from_utf8_lossy(&listed.stdout);
    assert!(text.contains("failed"), "{text}");
}

#[test]
fn help_matches_golden_files() {
    let dir = tmp("help");
    for (args, golden) in [
        (vec!["--help"], "golden/help.txt"),
        (vec!["simulate", "--help"], "golden/help_simulate.txt"),
        (vec!["scaling", "--help"], "golden/help_scaling.txt"),
        (vec!["partition", "--help"], "golden/help_partition.txt"),
        (vec!["spectrum", "--help"], "golden/help_spectrum.txt"),
        (vec!["bounds", "--help"], "golden/help_bounds.txt"),
        (vec!["figure", "--help"], "golden/help_figure.txt"),
        (vec!["run", "--help"], "golden/help_run.txt"),
        (vec!["list-runs", "--help"], "golden/help_list-runs.txt"),
    ] {
        let output = run(&args, &dir);
        assert!(output.status.success());
        let expected = std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(golden),
        )
        .unwrap();
        assert_eq!(
            String::from_utf8_lossy(&output.stdout),
            expected,
            "help text drifted from {golden}"
        );
    }
}

#[test]
fn render_plot_matches_golden_svg() {
    use mfbounds::plot::{render_plot, Series};
    let dir = tmp("golden-svg");
    let out = dir.join("line.svg");
    let xs: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    render_plot(&[Series::new("y=x", xs.clone(), xs)], "x", "y", &out).unwrap();
    let got = std::fs::read(&out).unwrap();
    let expected = std::fs::read(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/line.svg"),
    )
    .unwrap();
    assert_eq!(got, expected, "render_plot output drifted from the golden file");
}
