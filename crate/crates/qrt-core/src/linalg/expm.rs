//! Matrix exponential.
//!
//! Normal inputs (detected via the commutator test ||A A^dag - A^dag A||_F <
//! NORMALITY * ||A||_F^2) go through an eigendecomposition: Hermitian and
//! anti-Hermitian matrices use the Hermitian solver directly, any other normal
//! matrix uses the general complex eigensolver. Everything else falls back to
//! Padé-13 scaling and squaring.

use ndarray::prelude::*;
use ndarray_linalg::{Eig, Inverse, OperationNorm};

use super::{eigh_decompose, C64, DenseOperator};
use crate::error::{Error, Result};
use crate::tol;

/// e^A for a square complex matrix.
pub fn mat_exp(a: &DenseOperator) -> Result<DenseOperator> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let fro = a.fro_norm();
    if fro == 0.0 {
        return Ok(DenseOperator::identity(a.dim()));
    }

    let herm_dev = a.sub(&a.dagger())?.fro_norm();
    if herm_dev <= tol::HERMITIAN * fro.max(1.0) {
        return exp_hermitian(a, |lam| C64::new(lam.exp(), 0.0));
    }
    let anti_dev = a.add(&a.dagger())?.fro_norm();
    if anti_dev <= tol::HERMITIAN * fro.max(1.0) {
        // A = iH with H = -iA Hermitian; e^A = V e^{i lambda} V^dag.
        let h = a.scale(C64::new(0.0, -1.0));
        return exp_hermitian(&h, |lam| C64::new(0.0, lam).exp());
    }

    let aad = a.matmul(&a.dagger())?;
    let ada = a.dagger().matmul(a)?;
    if aad.sub(&ada)?.fro_norm() <= tol::NORMALITY * fro * fro {
        return exp_normal(a);
    }

    exp_pade(a)
}

fn exp_hermitian(h: &DenseOperator, f: impl Fn(f64) -> C64) -> Result<DenseOperator> {
    let (vals, vecs) = eigh_decompose(h)?;
    let d = h.dim();
    let mut scaled = Array2::<C64>::zeros((d, d));
    for j in 0..d {
        let fl = f(vals[j]);
        for i in 0..d {
            scaled[[i, j]] = vecs[[i, j]] * fl;
        }
    }
    let vdag = DenseOperator::from_valid(vecs).dagger();
    DenseOperator::from_valid(scaled).matmul(&vdag)
}

fn exp_normal(a: &DenseOperator) -> Result<DenseOperator> {
    let (vals, vecs) = a.mat().eig()?;
    {
        // Confirm the eigenvector orientation before trusting the backend.
        let av = a.mat().dot(&vecs);
        let mut acc = 0.0;
        for j in 0..a.dim() {
            for i in 0..a.dim() {
                acc += (av[[i, j]] - vecs[[i, j]] * vals[j]).norm_sqr();
            }
        }
        if acc.sqrt() > 1e-8 * a.fro_norm().max(1.0) {
            return exp_pade(a);
        }
    }
    let vinv = vecs.inv()?;
    let d = a.dim();
    let mut scaled = Array2::<C64>::zeros((d, d));
    for j in 0..d {
        let fl = vals[j].exp();
        for i in 0..d {
            scaled[[i, j]] = vecs[[i, j]] * fl;
        }
    }
    let out = DenseOperator::from_valid(scaled).matmul(&DenseOperator::from_valid(vinv))?;
    // zgeev can misbehave on pathologically scaled input; guard the result.
    if !out.is_finite() {
        return exp_pade(a);
    }
    Ok(out)
}

// Padé-13 coefficients for the diagonal approximant of e^x.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Scaling-and-squaring threshold for the order-13 approximant.
const THETA13: f64 = 5.371920351148152;

fn exp_pade(a: &DenseOperator) -> Result<DenseOperator> {
    let norm1 = a.mat().opnorm_one()?;
    let squarings = if norm1 > THETA13 {
        (norm1 / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.scale(C64::new(0.5f64.powi(squarings), 0.0));

    let d = a.dim();
    let ident = DenseOperator::identity(d);
    let a2 = scaled.matmul(&scaled)?;
    let a4 = a2.matmul(&a2)?;
    let a6 = a4.matmul(&a2)?;

    let real = |x: f64| C64::new(x, 0.0);

    // U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    let inner_u = a6
        .scale(real(PADE13[13]))
        .add(&a4.scale(real(PADE13[11])))?
        .add(&a2.scale(real(PADE13[9])))?;
    let u_poly = a6
        .matmul(&inner_u)?
        .add(&a6.scale(real(PADE13[7])))?
        .add(&a4.scale(real(PADE13[5])))?
        .add(&a2.scale(real(PADE13[3])))?
        .add(&ident.scale(real(PADE13[1])))?;
    let u = scaled.matmul(&u_poly)?;

    // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let inner_v = a6
        .scale(real(PADE13[12]))
        .add(&a4.scale(real(PADE13[10])))?
        .add(&a2.scale(real(PADE13[8])))?;
    let v = a6
        .matmul(&inner_v)?
        .add(&a6.scale(real(PADE13[6])))?
        .add(&a4.scale(real(PADE13[4])))?
        .add(&a2.scale(real(PADE13[2])))?
        .add(&ident.scale(real(PADE13[0])))?;

    // (V - U)^{-1} (V + U)
    let denom = v.sub(&u)?;
    let numer = v.add(&u)?;
    let denom_inv = denom
        .mat()
        .inv()
        .map_err(|_| Error::Singular("Pade denominator".into()))?;
    let mut result = DenseOperator::from_valid(denom_inv).matmul(&numer)?;

    for _ in 0..squarings {
        result = result.matmul(&result)?;
    }
    if !result.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(result)
}
