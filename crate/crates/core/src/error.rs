use thiserror::Error;

use crate::measure::BasisSetting;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported matrix dimension {0}; expected 2, 3 or 4")]
    InvalidDimension(usize),
    #[error("matrix of dimension {dim} needs {expected} entries, got {got}")]
    EntryCount {
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian: max |A - A^H| = {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("eigenvalue {value:e} is below the clamp threshold; the matrix is not PSD (project it first)")]
    NegativeEigenvalue { value: f64 },
    #[error("state is not normalized: squared norm {norm_sq}")]
    NotNormalized { norm_sq: f64 },
    #[error("invalid cavity parameters: {0}")]
    InvalidCavity(&'static str),
    #[error("transfer index k must be at least 1, got {0}")]
    InvalidTransferIndex(i64),
    #[error("{kind} gate expects {expected} parameter(s), got {got}")]
    GateArity {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{kind} gate: {reason}")]
    GateQubits {
        kind: &'static str,
        reason: &'static str,
    },
    #[error("qubit id {0} out of range; expected 0 or 1")]
    BadQubit(usize),
    #[error("non-finite gate parameter")]
    NonFiniteParameter,
    #[error("state leaves the single-excitation subspace: |amp_11| = {0:e}")]
    LeavesSubspace(f64),
    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),
    #[error("probability {0} lies outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("shots must be at least 1")]
    ZeroShots,
    #[error("counts sum to {sum} but shots = {shots}")]
    CountsMismatch { sum: u64, shots: u64 },
    #[error("missing measurement setting {0}")]
    MissingSetting(BasisSetting),
    #[error("Stokes parameter T_{key} = {value} is out of range")]
    StokesOutOfRange { key: String, value: f64 },
    #[error("density matrix trace is {0}, expected 1")]
    BadTrace(f64),
    #[error("density matrix is not physical (min eigenvalue {min_eigenvalue:e}); apply project_physical first")]
    NotPhysical { min_eigenvalue: f64 },
    #[error("malformed JSON: {0}")]
    Json(String),
}
