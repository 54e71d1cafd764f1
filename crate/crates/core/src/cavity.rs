//! Two coupled cavities restricted to at most one photon.
//!
//! Basis order is `{|00⟩, |10⟩, |01⟩}` where `|nm⟩` holds `n` photons in
//! cavity 1 and `m` in cavity 2. Frequencies are in units of the coupling
//! `J`, so times enter as the dimensionless product `J·t`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::scalar::Real;

/// Frequencies below this separation use the closed-form propagator.
const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams<T> {
    omega1: T,
    omega2: T,
    coupling_j: T,
}

impl<T: Real> CavityParams<T> {
    pub fn new(omega1: T, omega2: T, coupling_j: T) -> Result<Self> {
        if !(omega1.is_finite() && omega2.is_finite() && coupling_j.is_finite()) {
            return Err(Error::InvalidCavity("parameters must be finite"));
        }
        if omega1 < T::zero() || omega2 < T::zero() {
            return Err(Error::InvalidCavity(
                "resonance frequencies must be non-negative",
            ));
        }
        if coupling_j <= T::zero() {
            return Err(Error::InvalidCavity("coupling strength must be positive"));
        }
        Ok(Self {
            omega1,
            omega2,
            coupling_j,
        })
    }

    /// Equal resonance frequencies.
    pub fn resonant(omega: T, coupling_j: T) -> Result<Self> {
        Self::new(omega, omega, coupling_j)
    }

    pub fn omega1(&self) -> T {
        self.omega1
    }

    pub fn omega2(&self) -> T {
        self.omega2
    }

    pub fn coupling_j(&self) -> T {
        self.coupling_j
    }

    pub fn is_resonant(&self) -> bool {
        (self.omega1 - self.omega2).abs().as_f64() < DEGENERACY_TOL
    }
}

/// `amp_vac|00⟩ + amp_c1|10⟩ + amp_c2|01⟩`, unit norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnePhotonState<T> {
    amp_vac: Complex<T>,
    amp_c1: Complex<T>,
    amp_c2: Complex<T>,
}

impl<T: Real> OnePhotonState<T> {
    pub fn new(amp_vac: Complex<T>, amp_c1: Complex<T>, amp_c2: Complex<T>) -> Result<Self> {
        let norm_sq = amp_vac.norm_sqr() + amp_c1.norm_sqr() + amp_c2.norm_sqr();
        if (norm_sq - T::one()).abs() > T::structure_tol() {
            return Err(Error::NotNormalized {
                norm_sq: norm_sq.as_f64(),
            });
        }
        Ok(Self {
            amp_vac,
            amp_c1,
            amp_c2,
        })
    }

    /// `α|00⟩ + e^{iη}β|10⟩`: cavity 1 holds `α|0⟩ + e^{iη}β|1⟩`, cavity 2
    /// is empty.
    pub fn from_cavity1(alpha: T, beta: T, eta: T) -> Result<Self> {
        Self::new(
            Complex::new(alpha, T::zero()),
            Complex::from_polar(beta, eta),
            Complex::zero(),
        )
    }

    /// The perfectly transferred counterpart `α|00⟩ + e^{iη}β|01⟩`.
    pub fn from_cavity2(alpha: T, beta: T, eta: T) -> Result<Self> {
        Self::new(
            Complex::new(alpha, T::zero()),
            Complex::zero(),
            Complex::from_polar(beta, eta),
        )
    }

    pub fn amp_vac(&self) -> Complex<T> {
        self.amp_vac
    }

    pub fn amp_c1(&self) -> Complex<T> {
        self.amp_c1
    }

    pub fn amp_c2(&self) -> Complex<T> {
        self.amp_c2
    }

    pub fn amplitudes(&self) -> [Complex<T>; 3] {
        [self.amp_vac, self.amp_c1, self.amp_c2]
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes()
            .iter()
            .fold(T::zero(), |s, a| s + a.norm_sqr())
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amplitudes()
            .iter()
            .zip(other.amplitudes())
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
    }
}

/// Single-excitation Hamiltonian: `diag(0, ω₁, ω₂)` with `J` coupling the
/// two one-photon states.
pub fn hamiltonian<T: Real>(p: &CavityParams<T>) -> ComplexMatrix<T> {
    let z = T::zero();
    ComplexMatrix::from_real_rows(&[
        [z, z, z],
        [z, p.omega1, p.coupling_j],
        [z, p.coupling_j, p.omega2],
    ])
    .expect("3x3 real matrix with finite entries")
}

/// `U(t) = e^{−iHt}`. Resonant cavities use the closed form; detuned ones go
/// through the eigendecomposition of `H`.
pub fn evolution_unitary<T: Real>(p: &CavityParams<T>, t: T) -> ComplexMatrix<T> {
    if p.is_resonant() {
        closed_form_unitary(p.omega1, p.coupling_j, t)
    } else {
        spectral_unitary(p, t)
    }
}

/// `e^{−iHt}` via `V e^{−iΛt} V†`, regardless of detuning.
pub fn spectral_unitary<T: Real>(p: &CavityParams<T>, t: T) -> ComplexMatrix<T> {
    let eig =
        hermitian_eig(&hamiltonian(p)).expect("cavity Hamiltonian is Hermitian by construction");
    eig.compose(|l| Complex::from_polar(T::one(), -l * t))
}

fn closed_form_unitary<T: Real>(omega: T, j: T, t: T) -> ComplexMatrix<T> {
    let z = Complex::zero();
    let phase = Complex::from_polar(T::one(), -omega * t);
    let (sin, cos) = (j * t).sin_cos();
    let diag = phase * cos;
    let off = phase * Complex::new(T::zero(), -sin);
    ComplexMatrix::from_rows(&[[Complex::one(), z, z], [z, diag, off], [z, off, diag]])
        .expect("3x3 matrix with finite entries")
}

pub fn evolve<T: Real>(state: &OnePhotonState<T>, p: &CavityParams<T>, t: T) -> OnePhotonState<T> {
    let u = evolution_unitary(p, t);
    let out = u
        .mul_vec(&state.amplitudes())
        .expect("3x3 propagator on a 3-vector");
    OnePhotonState {
        amp_vac: out[0],
        amp_c1: out[1],
        amp_c2: out[2],
    }
}

/// Perfect-transfer point for index `k ≥ 1`: `(ω/J, J·t) = (4k − 1, π/2)`.
pub fn transfer_condition<T: Real>(k: i64) -> Result<(T, T)> {
    if k < 1 {
        return Err(Error::InvalidTransferIndex(k));
    }
    Ok((T::lit((4 * k - 1) as f64), T::FRAC_PI_2()))
}

/// `|⟨ψ_target|U(t)|ψ_in⟩|²` where `ψ_target` moves cavity 1's state into
/// cavity 2 with the same amplitudes and phase.
pub fn transfer_fidelity<T: Real>(p: &CavityParams<T>, t: T, state: &OnePhotonState<T>) -> T {
    let target = OnePhotonState {
        amp_vac: state.amp_vac,
        amp_c1: Complex::zero(),
        amp_c2: state.amp_c1,
    };
    target.inner(&evolve(state, p, t)).norm_sqr()
}
