//! QR factorization with the positive-diagonal gauge.

use ndarray_linalg::{SVD, QR};

use super::{C64, DenseOperator};
use crate::error::{Error, Result};
use crate::tol;

/// QR decomposition M = Q R with Q unitary and R upper triangular with a
/// strictly positive real diagonal. The positive-diagonal convention makes
/// the factorization unique for invertible M.
pub fn qr_positive(m: &DenseOperator) -> Result<(DenseOperator, DenseOperator)> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let (_, singular, _) = m.mat().svd(false, false)?;
    let smallest = singular.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smallest > tol::QR_SINGULAR) {
        return Err(Error::Singular(format!(
            "smallest singular value {smallest:.3e} below {:.0e}",
            tol::QR_SINGULAR
        )));
    }

    let (q, r) = m.mat().qr()?;
    let mut q = q;
    let mut r = r;
    // Absorb the diagonal phases of R into Q: R <- P^dag R, Q <- Q P with
    // P = diag(R_ii / |R_ii|).
    let d = m.dim();
    for i in 0..d {
        let rii = r[[i, i]];
        let mag = rii.norm();
        let phase = rii / mag;
        let phase_conj = phase.conj();
        for col in i..d {
            r[[i, col]] *= phase_conj;
        }
        for row in 0..d {
            q[[row, i]] *= phase;
        }
        // Clean the rounding residue so the diagonal is exactly real.
        r[[i, i]] = C64::new(r[[i, i]].re, 0.0);
    }
    Ok((DenseOperator::from_valid(q), DenseOperator::from_valid(r)))
}
