//! End-to-end acceptance checks. Run with `--nocapture` to see one
//! PASS/FAIL line per criterion.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};
use std::process::Command;

use cavsim::circuit::{analytic_probabilities, evolution_block, prepare_initial};
use cavsim::entangle::{
    chsh_expectation, chsh_from_probs, concurrence_from_probs, concurrence_general,
    single_excitation_family,
};
use cavsim::measure::{born_probabilities, empirical_probs, sample_counts, ShotRng};
use cavsim::tomography::{
    fidelity, project_physical, reconstruct_density, sample_tomography, setting_probabilities,
    stokes_from_counts, stokes_from_probabilities,
};
use cavsim::{Complex64, Density, Evolution, Preparation, State};
use cavsim_cli::{circuit_cavity_overlap, linspace};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sweep_output(theta: f64) -> State {
    let prep = Preparation {
        theta: FRAC_PI_2,
        phi: 0.0,
        lambda: 0.0,
    };
    let evo = Evolution {
        theta,
        phi: -FRAC_PI_2,
        lambda: FRAC_PI_2,
        delta: theta,
    };
    evolution_block(&prepare_initial(&prep), &evo).unwrap()
}

/// `(P00, P10, P01)` from a Born vector indexed `2·q1 + q0`.
fn readout(p: [f64; 4]) -> [f64; 3] {
    [p[0], p[2], p[1]]
}

fn theta_grid() -> Vec<f64> {
    (0..=32).map(|i| i as f64 * PI / 32.0).collect()
}

fn ideal_probabilities() -> Outcome {
    let half = FRAC_1_SQRT_2;
    let mut worst: f64 = 0.0;
    for theta in [FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, PI] {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let want = [0.5, 0.5 * c * c, 0.5 * s * s];
        let (a, b, d) = analytic_probabilities(half, half, theta).map_err(|e| e.to_string())?;
        let born = readout(born_probabilities(&sweep_output(theta)));
        for i in 0..3 {
            worst = worst
                .max(([a, b, d][i] - want[i]).abs())
                .max((born[i] - want[i]).abs());
        }
    }
    let (a, b, d) = analytic_probabilities(half, half, FRAC_PI_2).unwrap();
    let mid = (a - 0.5).abs().max((b - 0.25).abs()).max((d - 0.25).abs());
    check(
        worst <= 1e-12 && mid <= 1e-12,
        format!("max error {worst:.2e}, (0.5,0.25,0.25) error {mid:.2e}"),
    )
}

fn shot_convergence() -> Outcome {
    const SEEDS: u64 = 200;
    let thetas = [FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, PI];
    let mut mad = [0.0f64; 2];
    let mut worst_fraction: f64 = 1.0;
    for theta in thetas {
        let exact = born_probabilities(&sweep_output(theta));
        let ideal = readout(exact);
        let mut within = 0;
        for seed in 0..SEEDS {
            for (slot, shots) in [1024u64, 8192].into_iter().enumerate() {
                let emp = readout(empirical_probs(
                    &sample_counts(&exact, shots, seed).unwrap(),
                ));
                let dev: Vec<f64> = (0..3).map(|i| (emp[i] - ideal[i]).abs()).collect();
                mad[slot] += dev.iter().sum::<f64>() / 3.0;
                if shots == 8192 && dev.iter().all(|&d| d <= 0.02) {
                    within += 1;
                }
            }
        }
        worst_fraction = worst_fraction.min(within as f64 / SEEDS as f64);
    }
    let norm = (SEEDS as usize * thetas.len()) as f64;
    let (m1024, m8192) = (mad[0] / norm, mad[1] / norm);
    check(
        m8192 < m1024 && worst_fraction >= 0.99,
        format!(
            "MAD 1024={m1024:.4e} 8192={m8192:.4e}, within 0.02: {:.1}%",
            worst_fraction * 100.0
        ),
    )
}

fn transfer_output() -> (State, State) {
    let prep = Preparation {
        theta: FRAC_PI_2,
        phi: FRAC_PI_2,
        lambda: 0.0,
    };
    let evo = Evolution {
        theta: PI,
        phi: -FRAC_PI_2,
        lambda: FRAC_PI_2,
        delta: 99.0 * FRAC_PI_2,
    };
    let out = evolution_block(&prepare_initial(&prep), &evo).unwrap();
    let r = FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let target = State::new([Complex64::new(r, 0.0), Complex64::new(0.0, r), z, z]).unwrap();
    (out, target)
}

fn perfect_transfer() -> Outcome {
    let (out, target) = transfer_output();
    let overlap = out.overlap(&target);
    let stokes =
        stokes_from_probabilities(&setting_probabilities(&out)).map_err(|e| e.to_string())?;
    let rho = project_physical(&reconstruct_density(&stokes));
    let f = fidelity(&Density::pure(&target), &rho).map_err(|e| e.to_string())?;
    check(
        overlap >= 1.0 - 1e-12 && (f - 1.0).abs() <= 1e-9,
        format!(
            "overlap 1-{:.2e}, exact-tomography F=1{:+.2e}",
            1.0 - overlap,
            f - 1.0
        ),
    )
}

fn circuit_cavity_equivalence() -> Outcome {
    let mut rng = ShotRng::new(2024);
    let mut worst: f64 = 1.0;
    let mut count = 0;
    for _ in 0..10 {
        let a = rng.next_uniform() * FRAC_PI_2;
        let (alpha, beta, eta) = (a.cos(), a.sin(), (2.0 * rng.next_uniform() - 1.0) * PI);
        for w in linspace(0.0, 10.0, 20) {
            for jt in linspace(0.0, PI, 20) {
                let o =
                    circuit_cavity_overlap(w, jt, alpha, beta, eta).map_err(|e| e.to_string())?;
                worst = worst.min(o);
                count += 1;
            }
        }
    }
    check(
        worst >= 1.0 - 1e-10,
        format!("{count} points, min overlap 1-{:.2e}", 1.0 - worst),
    )
}

fn concurrence_curve() -> Outcome {
    let (mut err, mut wootters, mut peak) = (0.0f64, 0.0f64, 0.0f64);
    for theta in theta_grid() {
        let state = single_excitation_family(theta);
        let [_, p10, p01] = readout(born_probabilities(&state));
        let c = concurrence_from_probs(p10, p01).unwrap();
        err = err.max((c - theta.sin()).abs());
        let w = concurrence_general(&Density::pure(&state)).map_err(|e| e.to_string())?;
        wootters = wootters.max((w - c).abs());
        if (theta - FRAC_PI_2).abs() < 1e-15 {
            peak = c;
        }
    }
    check(
        err <= 1e-12 && wootters <= 1e-10 && (peak - 1.0).abs() <= 1e-12,
        format!("|C-sin| {err:.2e}, Wootters gap {wootters:.2e}, C(pi/2)={peak:.15}"),
    )
}

/// Haar-like random pure state from four complex Gaussians.
fn random_state(rng: &mut ShotRng) -> State {
    let mut gauss = || {
        let (u, v) = (1.0 - rng.next_uniform(), rng.next_uniform());
        (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
    };
    let raw: Vec<Complex64> = (0..4).map(|_| Complex64::new(gauss(), gauss())).collect();
    let n = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    State::new([raw[0] / n, raw[1] / n, raw[2] / n, raw[3] / n]).unwrap()
}

fn chsh_curve() -> Outcome {
    let tsirelson = 2.0 * SQRT_2;
    let (mut err, mut paths) = (0.0f64, 0.0f64);
    let mut argmax = (0.0, f64::MIN);
    for theta in theta_grid() {
        let state = single_excitation_family(theta);
        let b = chsh_expectation(&state);
        let [_, p10, p01] = readout(born_probabilities(&state));
        err = err.max((b - tsirelson * theta.sin()).abs());
        paths = paths.max((b - chsh_from_probs(p10, p01).unwrap()).abs());
        if b > argmax.1 {
            argmax = (theta, b);
        }
    }
    let mut window_ok = true;
    for i in 0..=314 {
        let theta = i as f64 * 0.01;
        let violates = chsh_expectation(&single_excitation_family(theta)) > 2.0;
        window_ok &= violates == (theta > FRAC_PI_4 && theta < 3.0 * FRAC_PI_4);
    }
    let mut rng = ShotRng::new(99);
    let excess = (0..10_000)
        .map(|_| chsh_expectation(&random_state(&mut rng)).abs() - tsirelson)
        .fold(f64::MIN, f64::max);
    let peak_ok = (argmax.0 - FRAC_PI_2).abs() < 1e-15 && (argmax.1 - tsirelson).abs() <= 1e-10;
    check(
        err <= 1e-10 && paths <= 1e-10 && peak_ok && window_ok && excess <= 1e-9,
        format!(
            "|B-2sqrt2 sin| {err:.2e}, path gap {paths:.2e}, max at {:.4}, window {}, max |B|-2sqrt2 {excess:.2e}",
            argmax.0,
            if window_ok { "exact" } else { "wrong" },
        ),
    )
}

fn tomography_statistics() -> Outcome {
    let (out, target) = transfer_output();
    let rho_t = Density::pure(&target);
    let mut good = 0;
    let mut lowest: f64 = 1.0;
    for seed in 0..100u64 {
        let counts = sample_tomography(&out, 8192, seed * 9).unwrap();
        let rho = project_physical(&reconstruct_density(&stokes_from_counts(&counts).unwrap()));
        let f = fidelity(&rho_t, &rho).map_err(|e| e.to_string())?;
        lowest = lowest.min(f);
        if f >= 0.95 {
            good += 1;
        }
    }
    check(
        good >= 95,
        format!("{good}/100 runs with F >= 0.95, lowest F {lowest:.4}"),
    )
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 7] = [
        &["--command", "sweep", "--shots", "1024,8192"],
        &["--command", "transfer"],
        &["--command", "tomo", "--seed", "4"],
        &["--command", "concurrence", "--seed", "9"],
        &["--command", "chsh", "--format", "json"],
        &["--command", "equivalence"],
        &["--command", "transfer", "--shots", "0", "--k", "3"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut bytes = Vec::new();
        for rep in 0..2 {
            let path = dir.path().join(format!("{i}-{rep}"));
            let status = Command::new(env!("CARGO_BIN_EXE_cavsim"))
                .args(*args)
                .arg("--out")
                .arg(&path)
                .status()
                .map_err(|e| e.to_string())?;
            if !status.success() {
                return Err(format!("{args:?} exited with {status}"));
            }
            bytes.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        if bytes[0] != bytes[1] || bytes[0].is_empty() {
            return Err(format!("{args:?} produced differing output"));
        }
    }
    Ok(format!(
        "{} commands byte-identical across repeated runs",
        runs.len()
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("ideal probabilities", ideal_probabilities),
        ("shot convergence", shot_convergence),
        ("perfect state transfer", perfect_transfer),
        ("circuit-cavity equivalence", circuit_cavity_equivalence),
        ("concurrence curve", concurrence_curve),
        ("CHSH curve", chsh_curve),
        ("tomography statistics", tomography_statistics),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = Vec::new();
    for (n, (name, criterion)) in criteria.iter().enumerate() {
        match criterion() {
            Ok(detail) => println!("PASS {} {name}: {detail}", n + 1),
            Err(detail) => {
                println!("FAIL {} {name}: {detail}", n + 1);
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
