use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, SQRT_2};

use cavsim::cavity::{evolve, transfer_condition};
use cavsim::circuit::{
    analytic_probabilities, evolution_block, map_cavity_to_gates, prepare_initial,
};
use cavsim::entangle::{chsh_from_probs, concurrence_from_probs, single_excitation_family};
use cavsim::format::sig17;
use cavsim::measure::{born_probabilities, derive_seed, empirical_probs, sample_counts};
use cavsim::tomography::{
    fidelity, fidelity_pure_target, project_physical, reconstruct_density, sample_tomography,
    setting_probabilities, stokes_exact, stokes_from_counts, stokes_from_probabilities,
};
use cavsim::{BasisSetting, Cavity, Density, Evolution, PhotonState, Preparation, State, Stokes};

use crate::table::{Cell, Table};
use crate::{CliError, Command, ExperimentConfig, Report};

const EQUIVALENCE_TOL: f64 = 1e-10;
const GRID_POINTS: usize = 20;
const OMEGA_OVER_J_MAX: f64 = 10.0;

/// Runs the configured command and renders its output.
pub fn run(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let ok = |body| Report {
        body,
        failures: Vec::new(),
    };
    match cfg.command {
        Command::Sweep => Ok(ok(sweep(cfg)?.render(cfg.format))),
        Command::Concurrence => Ok(ok(excitation_table(cfg, false)?.render(cfg.format))),
        Command::Chsh => Ok(ok(excitation_table(cfg, true)?.render(cfg.format))),
        Command::Transfer => Ok(ok(transfer(cfg)?)),
        Command::Tomo => Ok(ok(tomo(cfg)?)),
        Command::Equivalence => equivalence(cfg),
    }
}

/// `(P00, P10, P01)` of a state, sampled at `shots` or exact when zero.
fn readout(state: &State, shots: u64, seed: u64) -> Result<[f64; 3], CliError> {
    let exact = born_probabilities(state);
    let p = if shots == 0 {
        exact
    } else {
        empirical_probs(&sample_counts(&exact, shots, seed)?)
    };
    Ok([p[0], p[2], p[1]])
}

fn sweep(cfg: &ExperimentConfig) -> Result<Table, CliError> {
    let mut table = Table::new(vec![
        "theta",
        "shots",
        "p00_emp",
        "p10_emp",
        "p01_emp",
        "p00_ideal",
        "p10_ideal",
        "p01_ideal",
    ]);
    let prep = Preparation {
        theta: FRAC_PI_2,
        phi: 0.0,
        lambda: 0.0,
    };
    let initial = prepare_initial(&prep);
    let (alpha, beta) = ((prep.theta / 2.0).cos(), (prep.theta / 2.0).sin());
    let mut row = 0u64;
    for &theta in &cfg.thetas {
        let evo = Evolution {
            theta,
            phi: -FRAC_PI_2,
            lambda: FRAC_PI_2,
            delta: theta,
        };
        let out = evolution_block(&initial, &evo)?;
        let (i00, i10, i01) = analytic_probabilities(alpha, beta, theta)?;
        for &shots in &cfg.shots {
            let [e00, e10, e01] = readout(&out, shots, derive_seed(cfg.seed, row))?;
            table.push(vec![
                Cell::Float(theta),
                Cell::Int(shots),
                Cell::Float(e00),
                Cell::Float(e10),
                Cell::Float(e01),
                Cell::Float(i00),
                Cell::Float(i10),
                Cell::Float(i01),
            ]);
            row += 1;
        }
    }
    Ok(table)
}

fn excitation_table(cfg: &ExperimentConfig, chsh: bool) -> Result<Table, CliError> {
    let mut columns = vec!["theta", "value_emp", "value_ideal"];
    if chsh {
        columns.extend(["classical_bound", "tsirelson_bound"]);
    }
    let mut table = Table::new(columns);
    for (i, &theta) in cfg.thetas.iter().enumerate() {
        let state = single_excitation_family(theta);
        let [_, p10, p01] = readout(&state, cfg.shots(), derive_seed(cfg.seed, i as u64))?;
        let mut row = if chsh {
            vec![chsh_from_probs(p10, p01)?, 2.0 * SQRT_2 * theta.sin()]
        } else {
            vec![concurrence_from_probs(p10, p01)?, theta.sin()]
        };
        if chsh {
            row.extend([2.0, 2.0 * SQRT_2]);
        }
        table.push(std::iter::once(theta).chain(row).map(Cell::Float).collect());
    }
    Ok(table)
}

/// Circuit output at the transfer point together with its ideal target.
struct TransferRun {
    delta: f64,
    output: State,
    target: State,
}

fn transfer_run(k: i64) -> Result<TransferRun, CliError> {
    let (omega_over_j, jt) = transfer_condition::<f64>(k)?;
    let delta = omega_over_j * jt;
    let prep = Preparation {
        theta: FRAC_PI_2,
        phi: FRAC_PI_2,
        lambda: 0.0,
    };
    let evo = Evolution {
        theta: PI,
        phi: -FRAC_PI_2,
        lambda: FRAC_PI_2,
        delta,
    };
    let output = evolution_block(&prepare_initial(&prep), &evo)?;
    let r = FRAC_1_SQRT_2;
    let target = State::new([
        cavsim::Complex64::new(r, 0.0),
        cavsim::Complex64::new(0.0, r),
        cavsim::Complex64::new(0.0, 0.0),
        cavsim::Complex64::new(0.0, 0.0),
    ])?;
    Ok(TransferRun {
        delta,
        output,
        target,
    })
}

fn estimate_stokes(state: &State, shots: u64, seed: u64) -> Result<Stokes, CliError> {
    if shots == 0 {
        Ok(stokes_from_probabilities(&setting_probabilities(state))?)
    } else {
        let counts: BTreeMap<BasisSetting, _> = sample_tomography(state, shots, seed)?;
        Ok(stokes_from_counts(&counts)?)
    }
}

fn transfer(cfg: &ExperimentConfig) -> Result<String, CliError> {
    let run = transfer_run(cfg.k)?;
    let stokes = estimate_stokes(&run.output, cfg.shots(), cfg.seed)?;
    let raw = reconstruct_density(&stokes);
    let rho = project_physical(&raw);
    let rho_t = Density::pure(&run.target);
    Ok(format!(
        "{{\"k\":{},\"shots\":{},\"seed\":{},\"delta\":{},\"overlap\":{},\"fidelity\":{},\"fidelity_raw\":{},\"rho_target\":{},\"rho\":{}}}\n",
        cfg.k,
        cfg.shots(),
        cfg.seed,
        sig17(run.delta),
        sig17(run.output.overlap(&run.target)),
        sig17(fidelity(&rho_t, &rho)?),
        sig17(fidelity_pure_target(&run.target, &raw)),
        rho_t.to_json(),
        rho.to_json(),
    ))
}

fn tomo(cfg: &ExperimentConfig) -> Result<String, CliError> {
    let run = transfer_run(cfg.k)?;
    let stokes = estimate_stokes(&run.output, cfg.shots(), cfg.seed)?;
    let raw = reconstruct_density(&stokes);
    Ok(format!(
        "{{\"k\":{},\"shots\":{},\"seed\":{},\"stokes\":{},\"stokes_exact\":{},\"rho_raw\":{},\"rho\":{},\"min_eigenvalue_raw\":{}}}\n",
        cfg.k,
        cfg.shots(),
        cfg.seed,
        stokes.to_json(),
        stokes_exact(&run.output).to_json(),
        raw.to_json(),
        project_physical(&raw).to_json(),
        sig17(raw.min_eigenvalue()),
    ))
}

/// Overlap modulus between the circuit and the cavity propagation of the
/// state `α|0⟩ + e^{iη}β|1⟩` loaded into cavity 1.
pub fn circuit_cavity_overlap(
    omega_over_j: f64,
    jt: f64,
    alpha: f64,
    beta: f64,
    eta: f64,
) -> Result<f64, CliError> {
    let photon = PhotonState::from_cavity1(alpha, beta, eta)?;
    let cavity = Cavity::resonant(omega_over_j, 1.0)?;
    let via_cavity = State::from(evolve(&photon, &cavity, jt));
    let prep = Preparation::from_amplitudes(alpha, beta, eta);
    let via_circuit = evolution_block(
        &prepare_initial(&prep),
        &map_cavity_to_gates(omega_over_j, jt),
    )?;
    Ok(via_circuit.overlap(&via_cavity))
}

/// `n` evenly spaced points covering `[lo, hi]` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn equivalence(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let mut points: Vec<(f64, f64)> = Vec::new();
    for w in linspace(0.0, OMEGA_OVER_J_MAX, GRID_POINTS) {
        for jt in linspace(0.0, PI, GRID_POINTS) {
            points.push((w, jt));
        }
    }
    points.push(transfer_condition::<f64>(cfg.k)?);

    let mut table = Table::new(vec!["omega_over_j", "jt", "overlap", "pass"]);
    let mut failures = Vec::new();
    for (w, jt) in points {
        let overlap = circuit_cavity_overlap(w, jt, FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_PI_2)?;
        let pass = overlap >= 1.0 - EQUIVALENCE_TOL;
        if !pass {
            failures.push(format!(
                "omega/J={} Jt={} overlap={}",
                sig17(w),
                sig17(jt),
                sig17(overlap)
            ));
        }
        table.push(vec![
            Cell::Float(w),
            Cell::Float(jt),
            Cell::Float(overlap),
            Cell::Bool(pass),
        ]);
    }
    Ok(Report {
        body: table.render(cfg.format),
        failures,
    })
}
