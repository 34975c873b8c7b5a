//! The spin-s irreducible representation of su(2).
//!
//! Basis ordering: canonical index k = 0..d-1 holds the weight m = s - k, so
//! the highest-weight state |s,s> is e_0 and J_z = diag(s, s-1, ..., -s).

use ndarray::Array2;

use super::{LieRep, RepKind};
use crate::error::{Error, Result};
use crate::linalg::{C64, DenseOperator, StateVector, MAX_DIM};

/// Ladder coefficient c(s,m) = sqrt(s(s+1) - m(m+1)), the matrix element in
/// J_+ |s,m> = c(s,m) |s,m+1>. Arguments are doubled (2s, 2m) so half-integer
/// spins stay exact.
pub fn ladder_coefficient(two_s: u32, two_m: i32) -> f64 {
    // s(s+1) - m(m+1) = (s-m)(s+m+1) = (2s-2m)(2s+2m+2)/4
    let a = two_s as i64 - two_m as i64;
    let b = two_s as i64 + two_m as i64 + 2;
    ((a * b) as f64).sqrt() / 2.0
}

/// Build the spin-s representation, s = two_s / 2.
///
/// Generators are {J_x, J_y, J_z} in that order; J_z is the single Cartan
/// generator and J_+ the raising operator.
pub fn su2_rep(two_s: u32) -> Result<LieRep> {
    let d = two_s as usize + 1;
    if d > MAX_DIM {
        return Err(Error::DimTooLarge(d, MAX_DIM));
    }

    let mut jz = Array2::<C64>::zeros((d, d));
    for k in 0..d {
        jz[[k, k]] = C64::new(two_s as f64 / 2.0 - k as f64, 0.0);
    }
    let jz = DenseOperator::from_valid(jz);

    let mut jp = Array2::<C64>::zeros((d, d));
    for k in 1..d {
        // row k-1 holds m+1 when column k holds m = s - k
        let two_m = two_s as i32 - 2 * k as i32;
        jp[[k - 1, k]] = C64::new(ladder_coefficient(two_s, two_m), 0.0);
    }
    let jp = DenseOperator::from_valid(jp);
    let jm = jp.dagger();

    let jx = jp.add(&jm)?.scale(C64::new(0.5, 0.0));
    let jy = jp.sub(&jm)?.scale(C64::new(0.0, -0.5));

    let name = if two_s % 2 == 0 {
        format!("su2(s={})", two_s / 2)
    } else {
        format!("su2(s={two_s}/2)")
    };

    LieRep::assemble(
        name,
        RepKind::Su2 { two_s },
        vec![jx, jy, jz],
        vec![2],
        vec![jp],
        StateVector::basis(d, 0),
        1,
    )
}

/// The J_z eigenstate |s,m> with eigenvalue m = two_m / 2.
///
/// Phase convention: real nonnegative amplitude on the canonical basis vector.
pub fn weight_state(rep: &LieRep, two_m: i32) -> Result<StateVector> {
    let RepKind::Su2 { two_s } = rep.kind() else {
        return Err(Error::InvalidInput(
            "weight_state expects a su(2) representation".into(),
        ));
    };
    if two_m.unsigned_abs() > two_s {
        return Err(Error::OutOfRange(format!(
            "|m| = {}/2 exceeds s = {}/2",
            two_m.abs(),
            two_s
        )));
    }
    if (two_s as i64 - two_m as i64) % 2 != 0 {
        return Err(Error::OutOfRange(format!(
            "s - m must be an integer (2s = {two_s}, 2m = {two_m})"
        )));
    }
    let k = ((two_s as i64 - two_m as i64) / 2) as usize;
    Ok(StateVector::basis(rep.dim(), k))
}
