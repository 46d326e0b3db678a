//! Every CLI example in the README runs here against a committed golden
//! file, and the key numbers are re-derived from closed forms rather than
//! trusted from the snapshot.

use std::path::{Path, PathBuf};
use std::process::Command;

use geominf::measure::Measure1D;
use geominf::special;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_geominf")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("geominf_cli_golden");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Runs the binary, asserts the exit code, and compares the output file
/// byte-for-byte against the committed golden.
fn run_against_golden(args: &[&str], golden_name: &str, expect_code: i32) -> String {
    let out_path = tmp(golden_name);
    let mut full_args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    full_args.push("--output".into());
    full_args.push(out_path.to_string_lossy().into_owned());
    let status = Command::new(bin())
        .args(&full_args)
        .status()
        .expect("binary runs");
    assert_eq!(status.code(), Some(expect_code), "args: {args:?}");
    let got = std::fs::read_to_string(&out_path).unwrap();
    let want = std::fs::read_to_string(golden(golden_name)).unwrap();
    assert_eq!(got, want, "output of {args:?} diverged from golden {golden_name}");
    // A manifest is written next to the report.
    let manifest = format!("{}.manifest.json", out_path.display());
    assert!(Path::new(&manifest).exists(), "manifest missing for {args:?}");
    got
}

fn field(csv: &str, row: usize, col: usize) -> f64 {
    csv.lines()
        .nth(row + 1)
        .unwrap()
        .split(',')
        .nth(col)
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn influence_halfspace_example() {
    let csv = run_against_golden(
        &[
            "influence",
            "--set",
            "halfspace:u=1,0;b=0",
            "--measure",
            "gaussian",
            "--n",
            "2",
            "--samples",
            "100000",
            "--seed",
            "7",
        ],
        "influence_halfspace.csv",
        0,
    );
    // Coordinate 1 carries the whole influence: phi(0); coordinate 2 none.
    let phi0 = special::std_normal_pdf(0.0);
    assert!((field(&csv, 0, 1) - phi0).abs() < 1e-9);
    assert_eq!(field(&csv, 1, 1), 0.0);
}

#[test]
fn box_table_example() {
    let csv = run_against_golden(
        &["box-table", "--rho", "2", "--nmax", "4096"],
        "box_table_rho2.csv",
        0,
    );
    // Re-derive the n = 64 row: corner at the 2^{-1/64} quantile and
    // influence (1/2)^{63/64} phi_rho(corner).
    let m = Measure1D::boltzmann(2.0).unwrap();
    let corner = m.quantile((-(std::f64::consts::LN_2) / 64.0).exp()).unwrap();
    let influence = (0.5f64).powf(63.0 / 64.0) * m.density(corner);
    let row = 6; // n = 1, 2, 4, ..., 64
    assert!((field(&csv, row, 0) - 64.0).abs() < 1e-12);
    assert!((field(&csv, row, 1) - corner).abs() < 1e-9);
    assert!((field(&csv, row, 2) - influence).abs() < 1e-11);
}

#[test]
fn power_examples_csv_and_json() {
    let csv = run_against_golden(
        &["power", "--theta0", "0", "--theta1", "0.5", "--beta", "0.05", "--n", "100"],
        "power.csv",
        0,
    );
    // Independent closed-form re-derivation.
    let critical = special::std_normal_quantile((0.95f64).powf(0.01));
    let power = 1.0 - special::std_normal_cdf(critical - 0.5).powi(100);
    assert!((field(&csv, 0, 4) - critical).abs() < 1e-8);
    assert!((field(&csv, 0, 5) - power).abs() < 1e-8);
    let json = run_against_golden(
        &[
            "power", "--theta0", "0", "--theta1", "0.5", "--beta", "0.05", "--n", "100",
            "--format", "json",
        ],
        "power.json",
        0,
    );
    assert!(json.contains("\"power\": 0.2360999316"));
}

#[test]
fn iso_example() {
    let csv = run_against_golden(
        &["iso", "--measure", "boltzmann:rho=2", "--intervals", "-1,1", "--r", "0.1"],
        "iso_segment.csv",
        0,
    );
    // lhs is the exact enlarged-segment measure.
    let m = Measure1D::boltzmann(2.0).unwrap();
    let lhs = m.cdf(1.1) - m.cdf(-1.1);
    assert!((field(&csv, 0, 4) - lhs).abs() < 1e-9);
    assert_eq!(csv.lines().nth(1).unwrap().split(',').last().unwrap(), "true");
}

#[test]
fn russo_curve_example() {
    let csv = run_against_golden(
        &[
            "russo",
            "--set",
            "halfspace:u=-1,0;b=0",
            "--measure",
            "gaussian",
            "--n",
            "2",
            "--alpha-grid",
            "-1:1:5",
            "--samples",
            "50000",
            "--seed",
            "11",
        ],
        "russo_curve.csv",
        0,
    );
    // The curve of {x1 >= 0} is Phi(alpha): spot-check the midpoint within
    // Monte Carlo noise and the monotonicity of the column.
    let mid = field(&csv, 2, 1);
    assert!((mid - 0.5).abs() < 0.01);
    let values: Vec<f64> = (0..5).map(|r| field(&csv, r, 1)).collect();
    for w in values.windows(2) {
        assert!(w[1] >= w[0]);
    }
}

#[test]
fn threshold_example() {
    let csv = run_against_golden(
        &[
            "threshold",
            "--set",
            "maxthr:K=1",
            "--n",
            "10",
            "--delta",
            "0.5",
            "--samples",
            "50000",
            "--seed",
            "12",
        ],
        "threshold_alpha.csv",
        0,
    );
    // Closed form: alpha = K - Phi^{-1}((1-delta)^{1/n}).
    let exact = 1.0 - special::std_normal_quantile((0.5f64).powf(0.1));
    assert!((field(&csv, 0, 1) - exact).abs() < 0.05);
}

#[test]
fn rotate_example() {
    let csv = run_against_golden(
        &[
            "rotate",
            "--set",
            "halfspace:u=1,0,0,0;b=0",
            "--n",
            "4",
            "--rotations",
            "5",
            "--samples",
            "1000",
            "--seed",
            "13",
        ],
        "rotate_halfspace.csv",
        0,
    );
    // Per-rotation sums sit between phi(0) (axis) and 2 phi(0) (diagonal).
    let phi0 = special::std_normal_pdf(0.0);
    for r in 0..5 {
        let sum = field(&csv, r, 1);
        assert!(sum >= phi0 - 1e-9 && sum <= 2.0 * phi0 + 1e-9, "sum {sum}");
    }
}

#[test]
fn bounds_example_passes_baselines() {
    let csv = run_against_golden(
        &[
            "bounds",
            "--set",
            "box:a=0.3,0.3,0.3",
            "--measure",
            "gaussian",
            "--n",
            "3",
            "--samples",
            "50000",
            "--seed",
            "14",
        ],
        "bounds_box.csv",
        0,
    );
    for line in csv.lines().skip(1) {
        assert!(line.ends_with(",true"), "bound row failed: {line}");
    }
}

#[test]
fn reruns_are_byte_identical() {
    let args = [
        "influence",
        "--set",
        "sumthr:K=0",
        "--measure",
        "boltzmann:rho=1.5",
        "--n",
        "3",
        "--samples",
        "5000",
        "--seed",
        "21",
    ];
    let out_a = tmp("rerun_a.csv");
    let out_b = tmp("rerun_b.csv");
    for out in [&out_a, &out_b] {
        let status = Command::new(bin())
            .args(args)
            .arg("--output")
            .arg(out)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&out_a).unwrap(), std::fs::read(&out_b).unwrap());
}

#[test]
fn usage_errors_exit_one_with_distinct_messages() {
    // Unknown set spec.
    let out = Command::new(bin())
        .args(["influence", "--set", "wedge:x=1", "--measure", "gaussian", "--n", "2",
               "--samples", "1000", "--seed", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown set spec"));
    // Missing seed.
    let out = Command::new(bin())
        .args(["influence", "--set", "box:a=0,0", "--measure", "gaussian", "--n", "2",
               "--samples", "1000"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing seed"));
    // Unsupported capability: enlargement-based width check on a rotated set.
    let out = Command::new(bin())
        .args(["rotate", "--set", "maxthr:K=1", "--n", "4", "--rotations", "2",
               "--samples", "1000", "--seed", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capability"));
}
