//! Readout: Born probabilities, basis-change gadgets and seeded shot
//! sampling.
//!
//! Sampling uses xoshiro256** seeded through SplitMix64 (the reference
//! `seed_from_u64` expansion). Each uniform draw is
//! `(next_u64 >> 11) · 2⁻⁵³`, and each shot picks the first outcome whose
//! cumulative probability exceeds the draw. Together these make counts a
//! pure, portable function of `(probs, shots, seed)`.

use std::fmt;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::circuit::{GateSpec, Qubit, TwoQubitState};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Outcome tallies in basis order `00, 01, 10, 11`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Counts {
    n: [u64; 4],
    shots: u64,
}

impl Counts {
    pub fn new(n: [u64; 4]) -> Result<Self> {
        let shots = n.iter().sum();
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        Ok(Self { n, shots })
    }

    /// Checks the tallies against an expected shot total.
    pub fn with_shots(n: [u64; 4], shots: u64) -> Result<Self> {
        let c = Self::new(n)?;
        if c.shots != shots {
            return Err(Error::CountsMismatch {
                sum: c.shots,
                shots,
            });
        }
        Ok(c)
    }

    pub fn n00(&self) -> u64 {
        self.n[0]
    }
    pub fn n01(&self) -> u64 {
        self.n[1]
    }
    pub fn n10(&self) -> u64 {
        self.n[2]
    }
    pub fn n11(&self) -> u64 {
        self.n[3]
    }

    pub fn as_array(&self) -> [u64; 4] {
        self.n
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::X, Basis::Y, Basis::Z];

    pub fn symbol(self) -> char {
        match self {
            Basis::X => 'X',
            Basis::Y => 'Y',
            Basis::Z => 'Z',
        }
    }
}

/// Measurement basis per qubit; `q1` is the first qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisSetting {
    pub q1: Basis,
    pub q0: Basis,
}

impl BasisSetting {
    pub fn new(q1: Basis, q0: Basis) -> Self {
        Self { q1, q0 }
    }
}

impl fmt::Display for BasisSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.q1.symbol(), self.q0.symbol())
    }
}

/// `|a_00|², |a_01|², |a_10|², |a_11|²`.
pub fn born_probabilities<T: Real>(state: &TwoQubitState<T>) -> [T; 4] {
    state.amps().map(|a| a.norm_sqr())
}

fn rotation_gates<T: Real>(basis: Basis, q: Qubit) -> Vec<GateSpec<T>> {
    match basis {
        Basis::Z => vec![],
        Basis::X => vec![GateSpec::h(q)],
        Basis::Y => vec![GateSpec::sdg(q), GateSpec::h(q)],
    }
}

/// Rotates the state so a computational-basis readout measures `setting`.
pub fn basis_change<T: Real>(state: &TwoQubitState<T>, setting: BasisSetting) -> TwoQubitState<T> {
    let mut gates = rotation_gates(setting.q1, Qubit::Q1);
    gates.extend(rotation_gates(setting.q0, Qubit::Q0));
    state.apply_all(&gates)
}

/// Reproducible uniform stream on `[0, 1)`.
#[derive(Debug, Clone)]
pub struct ShotRng(Xoshiro256StarStar);

impl ShotRng {
    pub fn new(seed: u64) -> Self {
        Self(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Seed for the `index`-th independent job under `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    base.wrapping_add(index)
}

/// Validates a probability vector, clamps tiny negatives and renormalizes.
pub fn normalize_probabilities<T: Real>(probs: &[T; 4]) -> Result<[f64; 4]> {
    const TOL: f64 = 1e-9;
    let raw = probs.map(|p| p.as_f64());
    if let Some(p) = raw.iter().find(|p| !p.is_finite() || **p < -TOL) {
        return Err(Error::InvalidProbabilities(format!(
            "entry {p} is negative or non-finite"
        )));
    }
    let clamped = raw.map(|p| p.max(0.0));
    let sum: f64 = clamped.iter().sum();
    if (sum - 1.0).abs() > TOL {
        return Err(Error::InvalidProbabilities(format!("entries sum to {sum}")));
    }
    Ok(clamped.map(|p| p / sum))
}

/// Multinomial draw of `shots` outcomes.
pub fn sample_counts<T: Real>(probs: &[T; 4], shots: u64, seed: u64) -> Result<Counts> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let p = normalize_probabilities(probs)?;
    let mut cumulative = [0.0; 4];
    let mut acc = 0.0;
    for (c, &pi) in cumulative.iter_mut().zip(&p) {
        acc += pi;
        *c = acc;
    }
    let fallback = p
        .iter()
        .rposition(|&x| x > 0.0)
        .expect("probabilities sum to one");

    let mut rng = ShotRng::new(seed);
    let mut n = [0u64; 4];
    for _ in 0..shots {
        let u = rng.next_uniform();
        let k = cumulative.iter().position(|&c| u < c).unwrap_or(fallback);
        n[k] += 1;
    }
    Ok(Counts { n, shots })
}

pub fn empirical_probs<T: Real>(c: &Counts) -> [T; 4] {
    let shots = T::lit(c.shots as f64);
    c.n.map(|k| T::lit(k as f64) / shots)
}
