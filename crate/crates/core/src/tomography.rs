//! Linear-inversion tomography of two-qubit states.
//!
//! The state is expanded in the Pauli basis,
//! `ρ = ¼ Σ_{j,k ∈ {I,X,Y,Z}} T_jk σ_j ⊗ σ_k`, where `σ_j` acts on the first
//! qubit. Each two-qubit parameter `T_jk` comes from the `(j, k)` setting's
//! parity `P₀₀ − P₀₁ − P₁₀ + P₁₁`; single-qubit parameters `T_jI`, `T_Ik`
//! average the marginal `P₀ − P₁` over the three settings measuring that
//! qubit in the given basis.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::circuit::TwoQubitState;
use crate::error::{Error, Result};
use crate::format::sig17;
use crate::linalg::{clamped_spectrum, hermitian_eig, psd_sqrt, ComplexMatrix};
use crate::measure::{
    basis_change, born_probabilities, derive_seed, empirical_probs, sample_counts, Basis,
    BasisSetting, Counts,
};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    pub fn basis(self) -> Option<Basis> {
        match self {
            Pauli::I => None,
            Pauli::X => Some(Basis::X),
            Pauli::Y => Some(Basis::Y),
            Pauli::Z => Some(Basis::Z),
        }
    }

    pub fn matrix<T: Real>(self) -> ComplexMatrix<T> {
        let (z, o, i) = (Complex::zero(), Complex::one(), Complex::i());
        let rows = match self {
            Pauli::I => [[o, z], [z, o]],
            Pauli::X => [[z, o], [o, z]],
            Pauli::Y => [[z, -i], [i, z]],
            Pauli::Z => [[o, z], [z, -o]],
        };
        ComplexMatrix::from_rows(&rows).expect("Pauli matrices are 2x2")
    }

    /// `self ⊗ other` on the two-qubit register.
    pub fn pair<T: Real>(self, other: Pauli) -> ComplexMatrix<T> {
        self.matrix()
            .kron(&other.matrix())
            .expect("2x2 ⊗ 2x2 is 4x4")
    }
}

/// The 16 two-qubit Stokes parameters with `T_II = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct StokesVector<T> {
    t: [[T; 4]; 4],
}

impl<T: Real> StokesVector<T> {
    /// Validates `T_II = 1` and `|T_jk| ≤ 1` within sampling slack.
    pub fn new(t: [[T; 4]; 4]) -> Result<Self> {
        let slack = T::clamp_tol();
        for j in Pauli::ALL {
            for k in Pauli::ALL {
                let v = t[j.index()][k.index()];
                let bad = if (j, k) == (Pauli::I, Pauli::I) {
                    (v - T::one()).abs() > slack
                } else {
                    !v.is_finite() || v.abs() > T::one() + slack
                };
                if bad {
                    return Err(Error::StokesOutOfRange {
                        key: key(j, k),
                        value: v.as_f64(),
                    });
                }
            }
        }
        Ok(Self { t })
    }

    pub fn get(&self, j: Pauli, k: Pauli) -> T {
        self.t[j.index()][k.index()]
    }

    pub fn as_array(&self) -> &[[T; 4]; 4] {
        &self.t
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.t
            .iter()
            .flatten()
            .zip(other.t.iter().flatten())
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }

    /// Keyed JSON object `{"II": …, "IX": …, …, "ZZ": …}`.
    pub fn to_json(&self) -> String {
        let body: Vec<String> = pauli_pairs()
            .map(|(j, k)| format!("\"{}\":{}", key(j, k), sig17(self.get(j, k).as_f64())))
            .collect();
        format!("{{{}}}", body.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("expected an object".into()))?;
        let mut t = [[T::zero(); 4]; 4];
        for (j, k) in pauli_pairs() {
            let name = key(j, k);
            let x = obj
                .get(&name)
                .and_then(Value::as_f64)
                .ok_or_else(|| Error::Json(format!("missing numeric key {name}")))?;
            t[j.index()][k.index()] = T::lit(x);
        }
        Self::new(t)
    }
}

fn key(j: Pauli, k: Pauli) -> String {
    format!("{}{}", j.symbol(), k.symbol())
}

fn pauli_pairs() -> impl Iterator<Item = (Pauli, Pauli)> {
    Pauli::ALL
        .into_iter()
        .flat_map(|j| Pauli::ALL.into_iter().map(move |k| (j, k)))
}

/// Hermitian, unit-trace 4×4 matrix. Positivity is checked separately by
/// [`DensityMatrix::is_physical`], since linear inversion of sampled data
/// need not produce it.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    mat: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(mat: ComplexMatrix<T>) -> Result<Self> {
        if mat.dim() != 4 {
            return Err(Error::DimensionMismatch {
                left: mat.dim(),
                right: 4,
            });
        }
        let deviation = mat.hermitian_deviation();
        if deviation > T::structure_tol() {
            return Err(Error::NotHermitian {
                deviation: deviation.as_f64(),
            });
        }
        let tr = mat.trace();
        if (tr.re - T::one()).abs() > T::structure_tol() || tr.im.abs() > T::structure_tol() {
            return Err(Error::BadTrace(tr.re.as_f64()));
        }
        Ok(Self { mat })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn pure(state: &TwoQubitState<T>) -> Self {
        Self {
            mat: ComplexMatrix::outer(state.amps()),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        hermitian_eig(&self.mat)
            .expect("density matrices are Hermitian")
            .values
    }

    pub fn min_eigenvalue(&self) -> T {
        self.eigenvalues()[0]
    }

    pub fn is_physical(&self) -> bool {
        self.min_eigenvalue() >= -T::structure_tol()
    }

    fn require_physical(&self) -> Result<()> {
        let min = self.min_eigenvalue();
        if min < -T::structure_tol() {
            return Err(Error::NotPhysical {
                min_eigenvalue: min.as_f64(),
            });
        }
        Ok(())
    }

    /// `{"dim":4,"re":[[…]],"im":[[…]]}` with 17 significant digits.
    pub fn to_json(&self) -> String {
        let part = |f: &dyn Fn(Complex<T>) -> T| {
            let rows: Vec<String> = (0..4)
                .map(|i| {
                    let cells: Vec<String> = self
                        .mat
                        .row(i)
                        .iter()
                        .map(|&z| sig17(f(z).as_f64()))
                        .collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        };
        format!(
            "{{\"dim\":4,\"re\":{},\"im\":{}}}",
            part(&|z: Complex<T>| z.re),
            part(&|z: Complex<T>| z.im)
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        if v.get("dim").and_then(Value::as_u64) != Some(4) {
            return Err(Error::Json("\"dim\" must be 4".into()));
        }
        let grid = |name: &str| -> Result<Vec<Vec<f64>>> {
            let rows = v
                .get(name)
                .and_then(Value::as_array)
                .filter(|r| r.len() == 4)
                .ok_or_else(|| Error::Json(format!("\"{name}\" must be a 4x4 array")))?;
            rows.iter()
                .map(|r| {
                    r.as_array()
                        .filter(|r| r.len() == 4)
                        .and_then(|r| r.iter().map(Value::as_f64).collect::<Option<Vec<f64>>>())
                        .ok_or_else(|| {
                            Error::Json(format!("\"{name}\" must be a 4x4 array of numbers"))
                        })
                })
                .collect()
        };
        let (re, im) = (grid("re")?, grid("im")?);
        let entries = (0..16)
            .map(|n| Complex::new(T::lit(re[n / 4][n % 4]), T::lit(im[n / 4][n % 4])))
            .collect();
        Self::new(ComplexMatrix::from_entries(4, entries)?)
    }
}

/// The nine settings `{X,Y,Z} × {X,Y,Z}`, first qubit major.
pub fn measurement_plan() -> [BasisSetting; 9] {
    let mut plan = [BasisSetting::new(Basis::X, Basis::X); 9];
    for (n, slot) in plan.iter_mut().enumerate() {
        *slot = BasisSetting::new(Basis::ALL[n / 3], Basis::ALL[n % 3]);
    }
    plan
}

/// Stokes parameters from per-setting outcome probabilities.
pub fn stokes_from_probabilities<T: Real>(
    probs: &BTreeMap<BasisSetting, [T; 4]>,
) -> Result<StokesVector<T>> {
    let plan = measurement_plan();
    if let Some(missing) = plan.iter().find(|s| !probs.contains_key(s)) {
        return Err(Error::MissingSetting(*missing));
    }
    let mut t = [[T::zero(); 4]; 4];
    t[0][0] = T::one();
    let third = T::one() / T::lit(3.0);
    for j in [Pauli::X, Pauli::Y, Pauli::Z] {
        let bj = j.basis().expect("non-identity Pauli");
        for k in [Pauli::X, Pauli::Y, Pauli::Z] {
            let bk = k.basis().expect("non-identity Pauli");
            let p = probs[&BasisSetting::new(bj, bk)];
            t[j.index()][k.index()] = p[0] - p[1] - p[2] + p[3];
        }
        // Marginals: first qubit from every setting with q1 = j, second
        // qubit from every setting with q0 = j.
        let (mut first, mut second) = (T::zero(), T::zero());
        for other in Basis::ALL {
            let p = probs[&BasisSetting::new(bj, other)];
            first += p[0] + p[1] - p[2] - p[3];
            let p = probs[&BasisSetting::new(other, bj)];
            second += p[0] - p[1] + p[2] - p[3];
        }
        t[j.index()][0] = first * third;
        t[0][j.index()] = second * third;
    }
    StokesVector::new(t)
}

pub fn stokes_from_counts<T: Real>(
    counts: &BTreeMap<BasisSetting, Counts>,
) -> Result<StokesVector<T>> {
    let probs = counts
        .iter()
        .map(|(s, c)| (*s, empirical_probs(c)))
        .collect();
    stokes_from_probabilities(&probs)
}

/// `T_jk = ⟨ψ|σ_j ⊗ σ_k|ψ⟩` evaluated directly on the state vector.
pub fn stokes_exact<T: Real>(state: &TwoQubitState<T>) -> StokesVector<T> {
    let mut t = [[T::zero(); 4]; 4];
    for (j, k) in pauli_pairs() {
        t[j.index()][k.index()] = j
            .pair::<T>(k)
            .expectation(state.amps())
            .expect("4x4 operator on a 4-vector")
            .re;
    }
    t[0][0] = T::one();
    StokesVector::new(t).expect("expectations of Pauli products lie in [-1, 1]")
}

/// Readout probabilities of `state` in every setting of the plan.
pub fn setting_probabilities<T: Real>(state: &TwoQubitState<T>) -> BTreeMap<BasisSetting, [T; 4]> {
    measurement_plan()
        .into_iter()
        .map(|s| (s, born_probabilities(&basis_change(state, s))))
        .collect()
}

/// Samples `shots` outcomes per setting; setting `n` of the plan uses seed
/// `seed + n`.
pub fn sample_tomography<T: Real>(
    state: &TwoQubitState<T>,
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<BasisSetting, Counts>> {
    let probs = setting_probabilities(state);
    measurement_plan()
        .into_iter()
        .enumerate()
        .map(|(n, s)| {
            Ok((
                s,
                sample_counts(&probs[&s], shots, derive_seed(seed, n as u64))?,
            ))
        })
        .collect()
}

/// `ρ = ¼ Σ T_jk σ_j ⊗ σ_k`.
pub fn reconstruct_density<T: Real>(s: &StokesVector<T>) -> DensityMatrix<T> {
    let quarter = T::lit(0.25);
    let mut mat = ComplexMatrix::zeros(4);
    for (j, k) in pauli_pairs() {
        let term = j.pair::<T>(k).scale_real(s.get(j, k) * quarter);
        mat = mat.add(&term).expect("4x4 sum");
    }
    DensityMatrix { mat }
}

/// Clamps negative eigenvalues to zero and renormalizes the trace.
pub fn project_physical<T: Real>(rho: &DensityMatrix<T>) -> DensityMatrix<T> {
    let mut eig = hermitian_eig(&rho.mat).expect("density matrices are Hermitian");
    if eig.values[0] >= T::zero() {
        return rho.clone();
    }
    for l in &mut eig.values {
        *l = l.max(T::zero());
    }
    let total = eig.values.iter().fold(T::zero(), |s, &l| s + l);
    let mat = eig
        .compose(|l| Complex::new(l / total, T::zero()))
        .hermitian_part();
    DensityMatrix { mat }
}

/// Uhlmann fidelity `Tr √(√ρ_T ρ √ρ_T)`, clamped to `[0, 1]`.
pub fn fidelity<T: Real>(rho_t: &DensityMatrix<T>, rho: &DensityMatrix<T>) -> Result<T> {
    rho_t.require_physical()?;
    rho.require_physical()?;
    let root = psd_sqrt(&rho_t.mat)?;
    let inner = root.matmul(&rho.mat)?.matmul(&root)?.hermitian_part();
    let eig = clamped_spectrum(&inner)?;
    let f = eig.values.iter().fold(T::zero(), |s, &l| s + l.sqrt());
    Ok(f.min(T::one()))
}

/// `√⟨ψ|ρ|ψ⟩` for a pure target, defined for any Hermitian `ρ` including
/// unprojected reconstructions. Equals [`fidelity`] when `ρ` is physical.
pub fn fidelity_pure_target<T: Real>(target: &TwoQubitState<T>, rho: &DensityMatrix<T>) -> T {
    let overlap = rho
        .mat
        .expectation(target.amps())
        .expect("4x4 operator on a 4-vector")
        .re;
    overlap.max(T::zero()).sqrt()
}
