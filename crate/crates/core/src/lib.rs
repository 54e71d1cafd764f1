//! Two-qubit state-vector emulation of a single photon hopping between two
//! coupled cavities.
//!
//! The crate covers the physical model ([`cavity`]), its gate-circuit
//! emulation ([`circuit`]), shot-based readout ([`measure`]), linear
//! inversion tomography ([`tomography`]) and entanglement diagnostics
//! ([`entangle`]). Numerics are generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the double-precision types used by the CLI.

pub mod cavity;
pub mod circuit;
pub mod entangle;
mod error;
pub mod format;
pub mod linalg;
pub mod measure;
mod scalar;
pub mod tomography;

pub use error::{Error, Result};
pub use scalar::Real;

pub use cavity::{CavityParams, OnePhotonState};
pub use circuit::{
    CircuitParams, Evolution, GateKind, GateSpec, Preparation, Qubit, TwoQubitState,
};
pub use entangle::ChshObservables;
pub use linalg::{ComplexMatrix, HermitianEig};
pub use measure::{Basis, BasisSetting, Counts};
pub use tomography::{DensityMatrix, Pauli, StokesVector};

pub type Complex64 = num_complex::Complex<f64>;

pub type Matrix = ComplexMatrix<f64>;
pub type Matrix32 = ComplexMatrix<f32>;
pub type State = TwoQubitState<f64>;
pub type State32 = TwoQubitState<f32>;
pub type PhotonState = OnePhotonState<f64>;
pub type Cavity = CavityParams<f64>;
pub type Gate = GateSpec<f64>;
pub type Density = DensityMatrix<f64>;
pub type Stokes = StokesVector<f64>;
