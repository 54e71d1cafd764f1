//! Entanglement diagnostics: concurrence and the CHSH Bell parameter.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::circuit::{evolution_block, Evolution, TwoQubitState};
use crate::error::{Error, Result};
use crate::linalg::{clamped_spectrum, psd_sqrt, ComplexMatrix};
use crate::scalar::Real;
use crate::tomography::{DensityMatrix, Pauli};

fn check_probability<T: Real>(p: T) -> Result<T> {
    let tol = T::clamp_tol();
    if !p.is_finite() || p < -tol || p > T::one() + tol {
        return Err(Error::ProbabilityOutOfRange(p.as_f64()));
    }
    Ok(p.max(T::zero()).min(T::one()))
}

/// Output of the evolution block on `|10⟩` with `φ = −π`, `λ = π`:
/// `cos(θ/2)|10⟩ + sin(θ/2)|01⟩`.
pub fn single_excitation_family<T: Real>(theta: T) -> TwoQubitState<T> {
    let evo = Evolution {
        theta,
        phi: -T::PI(),
        lambda: T::PI(),
        delta: T::zero(),
    };
    evolution_block(&TwoQubitState::basis(2), &evo)
        .expect("|10> lies in the single-excitation subspace")
}

/// `2√(P₁₀ P₀₁)`, valid for states of the form `a|10⟩ + b|01⟩`.
pub fn concurrence_from_probs<T: Real>(p10: T, p01: T) -> Result<T> {
    let (p10, p01) = (check_probability(p10)?, check_probability(p01)?);
    Ok((T::lit(2.0) * (p10 * p01).sqrt()).min(T::one()))
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)` where `λᵢ` are the
/// decreasing square roots of the eigenvalues of `ρ (Y⊗Y) ρ* (Y⊗Y)`,
/// obtained here from the Hermitian matrix `√ρ ρ̃ √ρ` with the same spectrum.
pub fn concurrence_general<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    if !rho.is_physical() {
        return Err(Error::NotPhysical {
            min_eigenvalue: rho.min_eigenvalue().as_f64(),
        });
    }
    let yy = Pauli::Y.pair::<T>(Pauli::Y);
    let flipped = yy.matmul(&rho.matrix().conj())?.matmul(&yy)?;
    let root = psd_sqrt(rho.matrix())?;
    let r = root.matmul(&flipped)?.matmul(&root)?.hermitian_part();
    let eig = clamped_spectrum(&r)?;
    let mut lambdas: Vec<T> = eig.values.iter().map(|l| l.sqrt()).collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.max(T::zero()).min(T::one()))
}

/// Observables `A₁, A₂` on the first qubit and `B₁, B₂` on the second.
#[derive(Debug, Clone, PartialEq)]
pub struct ChshObservables<T> {
    pub a1: ComplexMatrix<T>,
    pub a2: ComplexMatrix<T>,
    pub b1: ComplexMatrix<T>,
    pub b2: ComplexMatrix<T>,
}

impl<T: Real> ChshObservables<T> {
    /// `A₁ = X`, `A₂ = Y`, `B₁ = (X + Y)/√2`, `B₂ = (X − Y)/√2`, giving
    /// `B_CHSH = √2 (X⊗X + Y⊗Y)`, which reaches `2√2` on `(|10⟩ + |01⟩)/√2`.
    pub fn standard() -> Self {
        let printed = Self::as_printed();
        Self {
            a2: printed.a2.scale_real(-T::one()),
            ..printed
        }
    }

    /// The set with `A₂ = i|0⟩⟨1| − i|1⟩⟨0| = −Y`. Its CHSH operator is
    /// `√2 (X⊗X − Y⊗Y)`, which annihilates `span{|01⟩, |10⟩}`, so it shows
    /// no violation on the single-excitation family.
    pub fn as_printed() -> Self {
        let (z, o, i) = (Complex::<T>::zero(), Complex::one(), Complex::i());
        let r = T::FRAC_1_SQRT_2();
        let m =
            |rows: [[Complex<T>; 2]; 2]| ComplexMatrix::from_rows(&rows).expect("2x2 observable");
        Self {
            a1: m([[z, o], [o, z]]),
            a2: m([[z, i], [-i, z]]),
            b1: m([[z, (o - i) * r], [(o + i) * r, z]]),
            b2: m([[z, (o + i) * r], [(o - i) * r, z]]),
        }
    }

    /// `A₁ ⊗ (B₁ + B₂) + A₂ ⊗ (B₁ − B₂)`.
    pub fn operator(&self) -> ComplexMatrix<T> {
        let sum = self.b1.add(&self.b2).expect("2x2");
        let diff = self.b1.sub(&self.b2).expect("2x2");
        let left = self.a1.kron(&sum).expect("4x4");
        let right = self.a2.kron(&diff).expect("4x4");
        left.add(&right).expect("4x4")
    }
}

pub fn chsh_observables<T: Real>() -> ChshObservables<T> {
    ChshObservables::standard()
}

/// `⟨ψ|B_CHSH|ψ⟩` for the default observables.
pub fn chsh_expectation<T: Real>(state: &TwoQubitState<T>) -> T {
    chsh_expectation_with(&chsh_observables(), state)
}

pub fn chsh_expectation_with<T: Real>(obs: &ChshObservables<T>, state: &TwoQubitState<T>) -> T {
    obs.operator()
        .expectation(state.amps())
        .expect("4x4 operator on a 4-vector")
        .re
}

/// `4√2 · √(P₁₀ P₀₁)`.
pub fn chsh_from_probs<T: Real>(p10: T, p01: T) -> Result<T> {
    let (p10, p01) = (check_probability(p10)?, check_probability(p01)?);
    Ok(T::lit(4.0) * T::SQRT_2() * (p10 * p01).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::born_probabilities;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, SQRT_2};

    type C = Complex<f64>;

    fn family_probs(theta: f64) -> (f64, f64) {
        let p = born_probabilities(&single_excitation_family(theta));
        (p[2], p[1])
    }

    #[test]
    fn concurrence_from_probs_examples() {
        let (p10, p01) = family_probs(FRAC_PI_2);
        assert!((concurrence_from_probs(p10, p01).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(concurrence_from_probs(0.7, 0.0).unwrap(), 0.0);
        let (p10, p01) = family_probs(FRAC_PI_3);
        assert!((concurrence_from_probs(p10, p01).unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(matches!(
            concurrence_from_probs(1.2, 0.0),
            Err(Error::ProbabilityOutOfRange(_))
        ));
        assert!(matches!(
            chsh_from_probs(0.5, -0.1),
            Err(Error::ProbabilityOutOfRange(_))
        ));
    }

    #[test]
    fn wootters_examples() {
        let prod = DensityMatrix::pure(&TwoQubitState::<f64>::basis(0));
        assert_eq!(concurrence_general(&prod).unwrap(), 0.0);

        let r = FRAC_1_SQRT_2;
        let singlet =
            TwoQubitState::new([C::zero(), C::new(-r, 0.0), C::new(r, 0.0), C::zero()]).unwrap();
        assert!((concurrence_general(&DensityMatrix::pure(&singlet)).unwrap() - 1.0).abs() < 1e-12);

        let fam = DensityMatrix::pure(&single_excitation_family(FRAC_PI_2));
        assert!((concurrence_general(&fam).unwrap() - 1.0).abs() < 1e-12);

        let mixed = DensityMatrix::new(ComplexMatrix::identity(4).scale_real(0.25)).unwrap();
        assert_eq!(concurrence_general(&mixed).unwrap(), 0.0);
    }

    #[test]
    fn wootters_rejects_unphysical() {
        let d = ComplexMatrix::from_diagonal(&[
            C::new(1.1, 0.0),
            C::new(-0.1, 0.0),
            C::zero(),
            C::zero(),
        ]);
        let bad = DensityMatrix::new(d).unwrap();
        assert!(matches!(
            concurrence_general(&bad),
            Err(Error::NotPhysical { .. })
        ));
    }

    #[test]
    fn observables_are_unit_spectrum() {
        let obs = chsh_observables::<f64>();
        let x = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(obs.a1, x);
        let id = ComplexMatrix::identity(2);
        for m in [&obs.a1, &obs.a2, &obs.b1, &obs.b2] {
            assert!(m.hermitian_deviation() < 1e-15);
            assert!(m.matmul(m).unwrap().approx_eq(&id, 1e-12));
        }
        let anti = obs
            .b1
            .matmul(&obs.b2)
            .unwrap()
            .add(&obs.b2.matmul(&obs.b1).unwrap())
            .unwrap();
        assert!(anti.approx_eq(&ComplexMatrix::zeros(2), 1e-12));
    }

    #[test]
    fn chsh_examples() {
        assert!(chsh_expectation(&TwoQubitState::<f64>::basis(0)).abs() < 1e-15);
        let max = chsh_expectation(&single_excitation_family(FRAC_PI_2));
        assert!((max - 2.0 * SQRT_2).abs() < 1e-12);
        let quarter = chsh_expectation(&single_excitation_family(FRAC_PI_4));
        assert!((quarter - 2.0).abs() < 1e-12);
        assert!((chsh_from_probs(0.5, 0.5).unwrap() - 2.0 * SQRT_2).abs() < 1e-15);
        assert_eq!(chsh_from_probs(0.0, 0.9).unwrap(), 0.0);
        let b = chsh_from_probs(0.75, 0.25).unwrap();
        assert!((b - 2.0 * SQRT_2 * FRAC_PI_3.sin()).abs() < 1e-12);
    }

    #[test]
    fn printed_observables_vanish_on_the_family() {
        let printed = ChshObservables::<f64>::as_printed();
        for theta in [0.3, FRAC_PI_4, FRAC_PI_2, 2.0] {
            assert!(
                chsh_expectation_with(&printed, &single_excitation_family(theta)).abs() < 1e-12
            );
        }
    }
}
