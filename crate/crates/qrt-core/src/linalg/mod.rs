//! Dense complex linear algebra primitives shared by all other modules.

use ndarray::prelude::*;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

mod expm;
mod qr;
pub mod rng;

pub use expm::mat_exp;
pub use qr::qr_positive;

pub type C64 = Complex64;

/// Largest Hilbert-space dimension the dense routines accept.
pub const MAX_DIM: usize = 4096;

/// A square complex matrix carrying its dimension.
///
/// Hermiticity and unitarity are properties, not constraints; use
/// [`DenseOperator::is_hermitian`] / [`DenseOperator::is_unitary`] to test them.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    mat: Array2<C64>,
}

impl DenseOperator {
    /// Wrap a square matrix, rejecting non-square shapes, oversized
    /// dimensions and non-finite entries.
    pub fn new(mat: Array2<C64>) -> Result<Self> {
        let (rows, cols) = mat.dim();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::InvalidInput("empty operator".into()));
        }
        if rows > MAX_DIM {
            return Err(Error::DimTooLarge(rows, MAX_DIM));
        }
        let op = Self { mat };
        if !op.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(op)
    }

    /// Build without the finiteness scan. For internal composition of
    /// already-validated operators.
    pub(crate) fn from_valid(mat: Array2<C64>) -> Self {
        debug_assert_eq!(mat.nrows(), mat.ncols());
        Self { mat }
    }

    pub fn identity(dim: usize) -> Self {
        Self { mat: Array2::eye(dim) }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { mat: Array2::zeros((dim, dim)) }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        Self { mat: Array2::from_shape_fn((dim, dim), |(i, j)| f(i, j)) }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &Array2<C64> {
        &self.mat
    }

    pub fn into_mat(self) -> Array2<C64> {
        self.mat
    }

    pub fn is_finite(&self) -> bool {
        self.mat.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Array2::zeros(self.mat.raw_dim());
        for ((i, j), z) in self.mat.indexed_iter() {
            out[[j, i]] = z.conj();
        }
        Self { mat: out }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimMismatch(self.dim(), rhs.dim()));
        }
        Ok(Self { mat: self.mat.dot(&rhs.mat) })
    }

    pub fn matvec(&self, v: &StateVector) -> Result<Array1<C64>> {
        if self.dim() != v.dim() {
            return Err(Error::DimMismatch(self.dim(), v.dim()));
        }
        Ok(self.mat.dot(v.amplitudes()))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimMismatch(self.dim(), rhs.dim()));
        }
        Ok(Self { mat: &self.mat + &rhs.mat })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimMismatch(self.dim(), rhs.dim()));
        }
        Ok(Self { mat: &self.mat - &rhs.mat })
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { mat: self.mat.mapv(|z| z * c) }
    }

    pub fn trace(&self) -> C64 {
        self.mat.diag().sum()
    }

    pub fn fro_norm(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        self.sub(&self.dagger()).map(|d| d.fro_norm() <= tolerance).unwrap_or(false)
    }

    pub fn is_unitary(&self, tolerance: f64) -> bool {
        let d = self.dim();
        match self.dagger().matmul(self) {
            Ok(p) => p.sub(&Self::identity(d)).map(|r| r.fro_norm() <= tolerance).unwrap_or(false),
            Err(_) => false,
        }
    }

    /// [A, B] = AB - BA.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        let ab = self.matmul(rhs)?;
        let ba = rhs.matmul(self)?;
        ab.sub(&ba)
    }

    /// Kronecker product, row-major convention: (A (x) B)[(i*dB+k),(j*dB+l)] = A[i,j] B[k,l].
    pub fn kron(&self, rhs: &Self) -> Self {
        let (da, db) = (self.dim(), rhs.dim());
        let mut out = Array2::zeros((da * db, da * db));
        for ((i, j), a) in self.mat.indexed_iter() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for ((k, l), b) in rhs.mat.indexed_iter() {
                out[[i * db + k, j * db + l]] = *a * *b;
            }
        }
        Self { mat: out }
    }
}

/// A complex vector carrying its dimension; unit norm unless explicitly
/// constructed as unnormalized.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Array1<C64>,
}

impl StateVector {
    /// A normalized state. Rejects vectors whose norm deviates from one by
    /// more than the shared tolerance.
    pub fn new(amps: Array1<C64>) -> Result<Self> {
        let v = Self::unnormalized(amps)?;
        let dev = (v.norm() - 1.0).abs();
        if dev > tol::STATE_NORM {
            return Err(Error::NotNormalized(dev));
        }
        Ok(v)
    }

    /// A vector that is not required to have unit norm (intermediate images).
    pub fn unnormalized(amps: Array1<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidInput("empty state vector".into()));
        }
        if amps.len() > MAX_DIM {
            return Err(Error::DimTooLarge(amps.len(), MAX_DIM));
        }
        if !amps.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { amps })
    }

    /// The computational basis vector e_index.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = Array1::zeros(dim);
        amps[index] = C64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Divide by the norm; errors on (near-)zero vectors.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= tol::NULL_OUTCOME {
            return Err(Error::Annihilated(n));
        }
        let inv = C64::new(1.0 / n, 0.0);
        Ok(Self { amps: self.amps.mapv(|z| z * inv) })
    }

    /// <self|other>.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// <self| op |self>.
    pub fn expectation(&self, op: &DenseOperator) -> Result<C64> {
        let image = op.matvec(self)?;
        Ok(self
            .amps
            .iter()
            .zip(image.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Hermitian eigendecomposition A = V diag(vals) V^dag with the orientation
/// of V verified against A itself.
///
/// LAPACK works on the Fortran-layout view of a row-major complex array,
/// which hands back the eigenvectors of conj(A); whether that happens is a
/// backend detail, so both orientations are tested and the one that actually
/// diagonalizes A is returned.
pub(crate) fn eigh_decompose(op: &DenseOperator) -> Result<(Vec<f64>, Array2<C64>)> {
    use ndarray_linalg::{Eigh, UPLO};
    let (vals, vecs) = op.mat().eigh(UPLO::Lower)?;
    let d = op.dim();
    let residual = |v: &Array2<C64>| -> f64 {
        let av = op.mat().dot(v);
        let mut acc = 0.0;
        for j in 0..d {
            for i in 0..d {
                acc += (av[[i, j]] - v[[i, j]] * vals[j]).norm_sqr();
            }
        }
        acc.sqrt()
    };
    let direct = residual(&vecs);
    let conjugated = vecs.mapv(|z| z.conj());
    let flipped = residual(&conjugated);
    let scale = op.fro_norm().max(1.0);
    if direct <= flipped {
        if direct > 1e-8 * scale {
            return Err(Error::Backend(format!(
                "Hermitian eigendecomposition residual {direct:.3e}"
            )));
        }
        Ok((vals.to_vec(), vecs))
    } else {
        if flipped > 1e-8 * scale {
            return Err(Error::Backend(format!(
                "Hermitian eigendecomposition residual {flipped:.3e}"
            )));
        }
        Ok((vals.to_vec(), conjugated))
    }
}

/// Hilbert-Schmidt inner product Tr[A^dag B].
pub fn hs_inner(a: &DenseOperator, b: &DenseOperator) -> Result<C64> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim(), b.dim()));
    }
    Ok(a.mat
        .iter()
        .zip(b.mat.iter())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Gram-Schmidt orthogonalization in the Hilbert-Schmidt inner product.
///
/// Inputs that are already orthogonal to all previous outputs pass through
/// unchanged, preserving their original normalization; otherwise the
/// orthogonalized residual is rescaled to unit HS norm. A pivot below the
/// shared threshold (relative to the input norm) reports a dependent set.
pub fn gram_schmidt_hs(ops: &[DenseOperator]) -> Result<Vec<DenseOperator>> {
    if ops.is_empty() {
        return Ok(Vec::new());
    }
    let dim = ops[0].dim();
    let mut out: Vec<DenseOperator> = Vec::with_capacity(ops.len());
    for op in ops {
        if op.dim() != dim {
            return Err(Error::DimMismatch(dim, op.dim()));
        }
        let input_norm = op.fro_norm();
        if input_norm == 0.0 {
            return Err(Error::DependentSet(0.0));
        }
        let mut residual = op.clone();
        let mut projected = false;
        for prev in &out {
            let prev_sq = prev.fro_norm().powi(2);
            let coeff = hs_inner(prev, &residual)? / prev_sq;
            if coeff.norm() * prev.fro_norm() > tol::GS_PIVOT * input_norm {
                projected = true;
                residual = residual.sub(&prev.scale(coeff))?;
            }
        }
        let pivot = residual.fro_norm() / input_norm;
        if pivot < tol::GS_PIVOT {
            return Err(Error::DependentSet(pivot));
        }
        if projected {
            let inv = C64::new(1.0 / residual.fro_norm(), 0.0);
            out.push(residual.scale(inv));
        } else {
            out.push(residual);
        }
    }
    Ok(out)
}
