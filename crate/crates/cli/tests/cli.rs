use std::path::Path;
use std::process::{Command, Output};

fn cavsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cavsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_to_file(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let mut full = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["--out", p]);
    let out = cavsim(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    std::fs::read(path).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| {
            l.split(',')
                .map(|c| c.parse().unwrap_or(f64::NAN))
                .collect()
        })
        .collect()
}

#[test]
fn sweep_ideal_columns() {
    let out = cavsim(&[
        "--command",
        "sweep",
        "--theta-list",
        "pi/2,pi",
        "--shots",
        "0",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("theta,shots,p00_emp,p10_emp,p01_emp,p00_ideal,p10_ideal,p01_ideal\n"));
    let rows = csv_rows(&text);
    let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
    assert!(close(rows[0][5], 0.5) && close(rows[0][6], 0.25) && close(rows[0][7], 0.25));
    assert!(close(rows[1][5], 0.5) && close(rows[1][6], 0.0) && close(rows[1][7], 0.5));
    // Exact mode: empirical equals ideal.
    for r in &rows {
        for i in 0..3 {
            assert!(close(r[2 + i], r[5 + i]));
        }
    }
}

#[test]
fn sweep_rows_cover_theta_then_shots() {
    let out = cavsim(&[
        "--command",
        "sweep",
        "--theta-list",
        "pi/4",
        "--shots",
        "1024,8192",
    ]);
    let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][1], rows[1][1]), (1024.0, 8192.0));
    for i in 0..3 {
        assert!((rows[1][2 + i] - rows[1][5 + i]).abs() < 0.02);
    }
}

#[test]
fn default_grid_has_33_rows() {
    let out = cavsim(&["--command", "concurrence"]);
    assert_eq!(csv_rows(&String::from_utf8(out.stdout).unwrap()).len(), 33);
}

#[test]
fn chsh_reference_columns() {
    let out = cavsim(&[
        "--command",
        "chsh",
        "--theta-list",
        "0,pi/2,3pi/4",
        "--shots",
        "0",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("theta,value_emp,value_ideal,classical_bound,tsirelson_bound\n"));
    let rows = csv_rows(&text);
    let t = 2.0 * 2f64.sqrt();
    assert!(rows[0][2].abs() < 1e-12);
    assert!((rows[1][2] - t).abs() < 1e-12 && (rows[1][1] - t).abs() < 1e-10);
    assert!((rows[2][2] - 2.0).abs() < 1e-12);
    assert!(rows.iter().all(|r| r[3] == 2.0 && r[4] == t));
}

#[test]
fn transfer_json_reports_delta_and_fidelity() {
    let out = cavsim(&["--command", "transfer", "--shots", "0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let delta = v["delta"].as_f64().unwrap();
    assert!((delta - 99.0 * std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    assert!((v["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((v["fidelity_raw"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["rho"]["re"].as_array().unwrap().len(), 4);
    let parsed = cavsim::Density::from_json(&v["rho_target"].to_string()).unwrap();
    assert!((parsed.matrix()[(0, 1)].im + 0.5).abs() < 1e-15);
}

#[test]
fn tomo_json_round_trips_stokes() {
    let out = cavsim(&["--command", "tomo", "--shots", "4096", "--seed", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let est = cavsim::Stokes::from_json(&v["stokes"].to_string()).unwrap();
    let exact = cavsim::Stokes::from_json(&v["stokes_exact"].to_string()).unwrap();
    assert!(est.max_abs_diff(&exact) < 0.1);
}

#[test]
fn equivalence_passes_everywhere() {
    let out = cavsim(&["--command", "equivalence", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 401);
    assert!(rows.iter().all(|r| r[3].as_bool() == Some(true)));
    let last = &rows[400];
    assert_eq!(last[0].as_f64(), Some(99.0));
}

#[test]
fn identical_flags_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["--command", "sweep", "--shots", "1024,8192", "--seed", "7"],
        &["--command", "transfer", "--seed", "11"],
        &["--command", "chsh", "--format", "json", "--seed", "5"],
        &["--command", "tomo"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let a = run_to_file(dir.path(), &format!("{i}a"), args);
        let b = run_to_file(dir.path(), &format!("{i}b"), args);
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }
}

#[test]
fn seed_changes_sampled_output() {
    let a = cavsim(&["--command", "concurrence", "--seed", "1"]).stdout;
    let b = cavsim(&["--command", "concurrence", "--seed", "2"]).stdout;
    assert_ne!(a, b);
}

#[test]
fn exit_codes() {
    assert_eq!(cavsim(&["--command", "nope"]).status.code(), Some(1));
    assert_eq!(
        cavsim(&["--command", "transfer", "--format", "csv"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        cavsim(&["--command", "chsh", "--shots", "1,2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        cavsim(&["--command", "transfer", "--k", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(
        cavsim(&["--command", "sweep", "--theta-list", "pi/x"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(cavsim(&["--help"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("out.csv");
    let out = cavsim(&["--command", "sweep", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
