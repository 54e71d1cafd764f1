//! Dense complex kernels for the 2×2, 3×3 and 4×4 matrices used throughout
//! the crate: products, adjoints, Kronecker products, a cyclic Jacobi
//! Hermitian eigensolver and the PSD square root built on it.
//!
//! Matrix comparisons use the max-absolute-entry norm everywhere.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_JACOBI_SWEEPS: usize = 64;

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

fn check_dim(dim: usize) -> Result<()> {
    if (2..=4).contains(&dim) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(dim))
    }
}

impl<T: Real> ComplexMatrix<T> {
    pub fn from_entries(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::EntryCount {
                dim,
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if let Some(pos) = entries
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite {
                row: pos / dim,
                col: pos % dim,
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows<R: AsRef<[Complex<T>]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        let entries: Vec<_> = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        if rows.iter().any(|r| r.as_ref().len() != dim) {
            return Err(Error::EntryCount {
                dim,
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Self::from_entries(dim, entries)
    }

    /// Real-valued matrix from rows.
    pub fn from_real_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let cplx: Vec<Vec<Complex<T>>> = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .map(|&x| Complex::new(x, T::zero()))
                    .collect()
            })
            .collect();
        Self::from_rows(&cplx)
    }

    /// # Panics
    /// If `dim` is not 2, 3 or 4.
    pub fn zeros(dim: usize) -> Self {
        check_dim(dim).expect("valid matrix dimension");
        Self {
            dim,
            entries: vec![Complex::zero(); dim * dim],
        }
    }

    /// # Panics
    /// If `dim` is not 2, 3 or 4.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    /// # Panics
    /// If `diag.len()` is not 2, 3 or 4.
    pub fn from_diagonal(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Outer product |v⟩⟨v|.
    ///
    /// # Panics
    /// If `v.len()` is not 2, 3 or 4.
    pub fn outer(v: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(v.len());
        for i in 0..v.len() {
            for j in 0..v.len() {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (&a, &x)| acc + a * x)
            })
            .collect())
    }

    /// ⟨v|self|v⟩.
    pub fn expectation(&self, v: &[Complex<T>]) -> Result<Complex<T>> {
        let mv = self.mul_vec(v)?;
        Ok(v.iter()
            .zip(&mv)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: T) -> Self {
        self.scale(Complex::new(factor, T::zero()))
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    /// Kronecker product `self ⊗ other`, with `self` on the high index.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        check_dim(dim)?;
        let mut out = Self::zeros(dim);
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = self[(i, j)] * other[(k, l)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Max absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    /// Max absolute entry of `self - self†`.
    pub fn hermitian_deviation(&self) -> T {
        let n = self.dim;
        let mut dev = T::zero();
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Averages `self` with its adjoint, removing rounding asymmetry.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        let adj = self.adjoint();
        let mut out = self.clone();
        for (z, a) in out.entries.iter_mut().zip(&adj.entries) {
            *z = (*z + *a) * half;
        }
        out
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
    ) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

impl<T> std::ops::Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.entries[i * self.dim + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.entries[i * self.dim + j]
    }
}

pub fn matmul<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    a.matmul(b)
}

pub fn adjoint<T: Real>(a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    a.adjoint()
}

/// True iff every entry of `U†U − I` is at most `tol` in modulus.
pub fn is_unitary<T: Real>(u: &ComplexMatrix<T>, tol: T) -> bool {
    u.adjoint()
        .matmul(u)
        .and_then(|p| p.max_abs_diff(&ComplexMatrix::identity(u.dim())))
        .is_ok_and(|d| d <= tol)
}

/// Spectral decomposition `H = V diag(values) V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig<T> {
    /// Ascending.
    pub values: Vec<T>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEig<T> {
    /// `V f(Λ) V†` for a real function of the eigenvalues.
    pub fn compose(&self, f: impl Fn(T) -> Complex<T>) -> ComplexMatrix<T> {
        let n = self.vectors.dim();
        let mapped: Vec<Complex<T>> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n).fold(Complex::zero(), |acc, k| {
                    acc + self.vectors[(i, k)] * mapped[k] * self.vectors[(j, k)].conj()
                });
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
pub fn hermitian_eig<T: Real>(h: &ComplexMatrix<T>) -> Result<HermitianEig<T>> {
    let deviation = h.hermitian_deviation();
    if deviation > T::structure_tol() {
        return Err(Error::NotHermitian {
            deviation: deviation.as_f64(),
        });
    }
    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let scale = a
        .entries()
        .iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |s, x| s + x);
    let threshold = T::epsilon() * T::epsilon() * scale;

    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: T = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .fold(T::zero(), |s, x| s + x);
        if off <= threshold || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .expect("finite eigenvalues")
    });
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new)] = v[(i, old)];
        }
    }
    Ok(HermitianEig { values, vectors })
}

/// One Jacobi step annihilating `a[p][q]`: a phase rotation making the pivot
/// real followed by a real Givens rotation, `a ← G† a G`, `v ← v G`.
fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == T::zero() {
        return;
    }
    let phase = apq / mag;
    let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
    let two = T::lit(2.0);
    let zeta = (aqq - app) / (two * mag);
    let t = if zeta == T::zero() {
        T::one()
    } else {
        zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    let g_pp = Complex::new(c, T::zero());
    let g_pq = Complex::new(s, T::zero());
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)].im = T::zero();
    a[(q, q)].im = T::zero();
}

/// Eigenvalues of a PSD matrix with clamping: values down to `-clamp_tol`
/// and values below the relative rank cutoff become zero; anything more
/// negative is an error.
pub(crate) fn clamped_spectrum<T: Real>(m: &ComplexMatrix<T>) -> Result<HermitianEig<T>> {
    let mut eig = hermitian_eig(m)?;
    let min = eig.values.first().copied().unwrap_or_else(T::zero);
    if min < -T::clamp_tol() {
        return Err(Error::NegativeEigenvalue {
            value: min.as_f64(),
        });
    }
    let top = eig.values.iter().fold(T::zero(), |acc, l| acc.max(l.abs()));
    let cutoff = T::rank_tol() * top.max(T::one());
    for l in &mut eig.values {
        if *l <= cutoff {
            *l = T::zero();
        }
    }
    Ok(eig)
}

/// Principal square root of a Hermitian positive semidefinite matrix.
pub fn psd_sqrt<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let eig = clamped_spectrum(m)?;
    Ok(eig
        .compose(|l| Complex::new(l.sqrt(), T::zero()))
        .hermitian_part())
}
