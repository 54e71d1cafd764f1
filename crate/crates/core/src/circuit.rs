//! Gate-level emulation of the coupled-cavity dynamics on two qubits.
//!
//! States are indexed `|q₁q₀⟩ → 2·q₁ + q₀`, where `q₁` is the first qubit
//! (standing in for cavity 1) and `q₀` the second. Controlled gates are
//! defined on their own two-qubit space with the control as the high bit,
//! so the target operation sits in the lower-right block.

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::cavity::OnePhotonState;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qubit {
    /// Second qubit, low bit of the basis index (id 0).
    Q0,
    /// First qubit, high bit of the basis index (id 1).
    Q1,
}

impl Qubit {
    pub fn from_id(id: usize) -> Result<Self> {
        match id {
            0 => Ok(Qubit::Q0),
            1 => Ok(Qubit::Q1),
            _ => Err(Error::BadQubit(id)),
        }
    }

    pub fn id(self) -> usize {
        match self {
            Qubit::Q0 => 0,
            Qubit::Q1 => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    U3,
    X,
    H,
    Sdg,
    Cnot,
    Cu1,
    Cu3,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::U3 => "U3",
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::Sdg => "Sdg",
            GateKind::Cnot => "CNOT",
            GateKind::Cu1 => "CU1",
            GateKind::Cu3 => "CU3",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::U3 | GateKind::Cu3 => 3,
            GateKind::Cu1 => 1,
            _ => 0,
        }
    }

    pub fn is_controlled(self) -> bool {
        matches!(self, GateKind::Cnot | GateKind::Cu1 | GateKind::Cu3)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated gate placement.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSpec<T> {
    kind: GateKind,
    params: Vec<T>,
    control: Option<Qubit>,
    target: Qubit,
}

impl<T: Real> GateSpec<T> {
    pub fn new(
        kind: GateKind,
        params: Vec<T>,
        control: Option<Qubit>,
        target: Qubit,
    ) -> Result<Self> {
        if params.len() != kind.arity() {
            return Err(Error::GateArity {
                kind: kind.name(),
                expected: kind.arity(),
                got: params.len(),
            });
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFiniteParameter);
        }
        match (kind.is_controlled(), control) {
            (true, None) => {
                return Err(Error::GateQubits {
                    kind: kind.name(),
                    reason: "controlled gate needs a control qubit",
                })
            }
            (true, Some(c)) if c == target => {
                return Err(Error::GateQubits {
                    kind: kind.name(),
                    reason: "control and target must differ",
                })
            }
            (false, Some(_)) => {
                return Err(Error::GateQubits {
                    kind: kind.name(),
                    reason: "single-qubit gate cannot take a control",
                })
            }
            _ => {}
        }
        Ok(Self {
            kind,
            params,
            control,
            target,
        })
    }

    pub fn u3(target: Qubit, theta: T, phi: T, lambda: T) -> Self {
        Self::new(GateKind::U3, vec![theta, phi, lambda], None, target).expect("valid U3")
    }

    pub fn x(target: Qubit) -> Self {
        Self::new(GateKind::X, vec![], None, target).expect("valid X")
    }

    pub fn h(target: Qubit) -> Self {
        Self::new(GateKind::H, vec![], None, target).expect("valid H")
    }

    pub fn sdg(target: Qubit) -> Self {
        Self::new(GateKind::Sdg, vec![], None, target).expect("valid Sdg")
    }

    /// # Panics
    /// If `control == target`.
    pub fn cnot(control: Qubit, target: Qubit) -> Self {
        Self::new(GateKind::Cnot, vec![], Some(control), target)
            .expect("distinct control and target")
    }

    /// # Panics
    /// If `control == target`.
    pub fn cu1(control: Qubit, target: Qubit, delta: T) -> Self {
        Self::new(GateKind::Cu1, vec![delta], Some(control), target)
            .expect("distinct control and target")
    }

    /// # Panics
    /// If `control == target`.
    pub fn cu3(control: Qubit, target: Qubit, theta: T, phi: T, lambda: T) -> Self {
        Self::new(
            GateKind::Cu3,
            vec![theta, phi, lambda],
            Some(control),
            target,
        )
        .expect("distinct control and target")
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    pub fn control(&self) -> Option<Qubit> {
        self.control
    }

    pub fn target(&self) -> Qubit {
        self.target
    }
}

fn u3_matrix<T: Real>(theta: T, phi: T, lambda: T) -> [[Complex<T>; 2]; 2] {
    let half = theta / T::lit(2.0);
    let (s, c) = half.sin_cos();
    [
        [Complex::new(c, T::zero()), -Complex::from_polar(s, lambda)],
        [
            Complex::from_polar(s, phi),
            Complex::from_polar(c, phi + lambda),
        ],
    ]
}

fn controlled<T: Real>(body: [[Complex<T>; 2]; 2]) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::identity(4);
    for i in 0..2 {
        for j in 0..2 {
            m[(2 + i, 2 + j)] = body[i][j];
        }
    }
    m
}

/// The gate's matrix on its own 1- or 2-qubit space.
pub fn gate_matrix<T: Real>(g: &GateSpec<T>) -> ComplexMatrix<T> {
    let p = &g.params;
    let z = Complex::zero();
    let one = Complex::one();
    match g.kind {
        GateKind::U3 => ComplexMatrix::from_rows(&u3_matrix(p[0], p[1], p[2])),
        GateKind::X => ComplexMatrix::from_rows(&[[z, one], [one, z]]),
        GateKind::H => {
            let r = T::FRAC_1_SQRT_2();
            ComplexMatrix::from_real_rows(&[[r, r], [r, -r]])
        }
        GateKind::Sdg => ComplexMatrix::from_rows(&[[one, z], [z, -Complex::i()]]),
        GateKind::Cnot => Ok(controlled([[z, one], [one, z]])),
        GateKind::Cu1 => Ok(controlled([
            [one, z],
            [z, Complex::from_polar(T::one(), p[0])],
        ])),
        GateKind::Cu3 => Ok(controlled(u3_matrix(p[0], p[1], p[2]))),
    }
    .expect("gate matrices have finite entries")
}

fn swap<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_real_rows(&[
        [T::one(), T::zero(), T::zero(), T::zero()],
        [T::zero(), T::zero(), T::one(), T::zero()],
        [T::zero(), T::one(), T::zero(), T::zero()],
        [T::zero(), T::zero(), T::zero(), T::one()],
    ])
    .expect("swap is a valid 4x4 matrix")
}

/// The gate lifted to the full 4-dimensional register.
pub fn embedded_matrix<T: Real>(g: &GateSpec<T>) -> ComplexMatrix<T> {
    let m = gate_matrix(g);
    let id = ComplexMatrix::identity(2);
    let lifted = match (g.control, g.target) {
        (None, Qubit::Q1) => m.kron(&id),
        (None, Qubit::Q0) => id.kron(&m),
        (Some(Qubit::Q1), _) => Ok(m),
        (Some(Qubit::Q0), _) => {
            let s = swap();
            s.matmul(&m).and_then(|sm| sm.matmul(&s))
        }
    };
    lifted.expect("gate embeds into the 4x4 register")
}

/// Two-qubit pure state over `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState<T> {
    amps: [Complex<T>; 4],
}

impl<T: Real> TwoQubitState<T> {
    pub fn new(amps: [Complex<T>; 4]) -> Result<Self> {
        let norm_sq = amps.iter().fold(T::zero(), |s, a| s + a.norm_sqr());
        if (norm_sq - T::one()).abs() > T::structure_tol() {
            return Err(Error::NotNormalized {
                norm_sq: norm_sq.as_f64(),
            });
        }
        Ok(Self { amps })
    }

    /// Computational basis state `|index⟩`.
    ///
    /// # Panics
    /// If `index > 3`.
    pub fn basis(index: usize) -> Self {
        let mut amps = [Complex::zero(); 4];
        amps[index] = Complex::one();
        Self { amps }
    }

    pub fn amps(&self) -> &[Complex<T>; 4] {
        &self.amps
    }

    pub fn amp(&self, q1: u8, q0: u8) -> Complex<T> {
        self.amps[2 * usize::from(q1) + usize::from(q0)]
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |s, a| s + a.norm_sqr())
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    /// `|⟨self|other⟩|`; 1 iff equal up to a global phase.
    pub fn overlap(&self, other: &Self) -> T {
        self.inner(other).norm()
    }

    pub fn apply(&self, g: &GateSpec<T>) -> Self {
        apply_gate(self, g)
    }

    pub fn apply_all<'a>(&self, gates: impl IntoIterator<Item = &'a GateSpec<T>>) -> Self {
        gates.into_iter().fold(*self, |s, g| apply_gate(&s, g))
    }
}

impl<T: Real> From<OnePhotonState<T>> for TwoQubitState<T> {
    /// Cavity `|nm⟩` maps to qubits `|q₁q₀⟩ = |nm⟩`.
    fn from(s: OnePhotonState<T>) -> Self {
        Self {
            amps: [s.amp_vac(), s.amp_c2(), s.amp_c1(), Complex::zero()],
        }
    }
}

pub fn apply_gate<T: Real>(state: &TwoQubitState<T>, g: &GateSpec<T>) -> TwoQubitState<T> {
    let out = embedded_matrix(g)
        .mul_vec(&state.amps)
        .expect("4x4 gate on a 4-vector");
    TwoQubitState {
        amps: [out[0], out[1], out[2], out[3]],
    }
}

/// Angles of the preparation `U3(θ′, φ′, λ′)` on the first qubit.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Preparation<T> {
    pub theta: T,
    pub phi: T,
    pub lambda: T,
}

impl<T: Real> Preparation<T> {
    /// Preparation yielding `α|0⟩ + e^{iη}β|1⟩` on the first qubit.
    pub fn from_amplitudes(alpha: T, beta: T, eta: T) -> Self {
        Self {
            theta: T::lit(2.0) * beta.atan2(alpha),
            phi: eta,
            lambda: T::zero(),
        }
    }
}

/// Angles of the evolution block: `cU3(θ, φ, λ)` and `cU1(δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Evolution<T> {
    pub theta: T,
    pub phi: T,
    pub lambda: T,
    pub delta: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CircuitParams<T> {
    pub preparation: Preparation<T>,
    pub evolution: Evolution<T>,
}

/// `α|00⟩ + e^{iη}β|10⟩` with `α = cos(θ′/2)`, `β = sin(θ′/2)`, `η = φ′`.
pub fn prepare_initial<T: Real>(prep: &Preparation<T>) -> TwoQubitState<T> {
    TwoQubitState::basis(0).apply(&GateSpec::u3(Qubit::Q1, prep.theta, prep.phi, prep.lambda))
}

/// Gate sequence of the evolution block.
///
/// The X-conjugated `cU1` puts `e^{iδ}` on `|00⟩`; the CNOT-conjugated `cU3`
/// rotates `|10⟩` into `|01⟩`.
pub fn evolution_gates<T: Real>(evo: &Evolution<T>) -> Vec<GateSpec<T>> {
    use Qubit::{Q0, Q1};
    vec![
        GateSpec::x(Q1),
        GateSpec::x(Q0),
        GateSpec::cu1(Q1, Q0, evo.delta),
        GateSpec::x(Q1),
        GateSpec::x(Q0),
        GateSpec::cnot(Q1, Q0),
        GateSpec::cu3(Q0, Q1, evo.theta, evo.phi, evo.lambda),
        GateSpec::cnot(Q1, Q0),
    ]
}

/// Runs the evolution gates. Only inputs inside the single-excitation
/// subspace are accepted.
pub fn evolution_block<T: Real>(
    state: &TwoQubitState<T>,
    evo: &Evolution<T>,
) -> Result<TwoQubitState<T>> {
    let leak = state.amps[3].norm();
    if leak > T::exact_tol() {
        return Err(Error::LeavesSubspace(leak.as_f64()));
    }
    Ok(state.apply_all(&evolution_gates(evo)))
}

/// Preparation followed by evolution, i.e. the state just before readout.
pub fn run_circuit<T: Real>(params: &CircuitParams<T>) -> TwoQubitState<T> {
    evolution_block(&prepare_initial(&params.preparation), &params.evolution)
        .expect("prepared states lie in the single-excitation subspace")
}

/// Gate angles reproducing the cavity propagator at `(ω/J, J·t)`:
/// `δ = ωt`, `θ = 2Jt`, `φ = −π/2`, `λ = π/2`.
pub fn map_cavity_to_gates<T: Real>(omega_over_j: T, jt: T) -> Evolution<T> {
    Evolution {
        theta: T::lit(2.0) * jt,
        phi: -T::FRAC_PI_2(),
        lambda: T::FRAC_PI_2(),
        delta: omega_over_j * jt,
    }
}

/// Ideal readout probabilities `(P₀₀, P₁₀, P₀₁)`.
pub fn analytic_probabilities<T: Real>(alpha: T, beta: T, theta: T) -> Result<(T, T, T)> {
    let norm_sq = alpha * alpha + beta * beta;
    if (norm_sq - T::one()).abs() > T::structure_tol() {
        return Err(Error::NotNormalized {
            norm_sq: norm_sq.as_f64(),
        });
    }
    let (s, c) = (theta / T::lit(2.0)).sin_cos();
    let b2 = beta * beta;
    Ok((alpha * alpha, b2 * c * c, b2 * s * s))
}
