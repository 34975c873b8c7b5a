//! The algebra purity quantifier and the closed-form weight-state machinery.
//!
//! For a representation with orthogonal Hermitian generators {g_i} and
//! highest-weight state |HW>, the purity of a state rho is
//!
//!   P(rho) = (1/N) sum_i Tr[rho g_i]^2,   N = sum_i <HW| g_i |HW>^2.
//!
//! The highest-weight normalization guarantees P = 1 exactly on the unitary
//! orbit of |HW> for any generator scaling, and reproduces the 1/s^2
//! normalization of the spin-s quantifier.

use ndarray_linalg::{Eigh, UPLO};

use crate::error::{Error, Result};
use crate::linalg::{DenseOperator, StateVector};
use crate::reps::LieRep;
use crate::tol;

mod closed_form;

pub use closed_form::{
    hyp2f1_terminating, jplus_expect, jz_expect, phi_norm, pochhammer, weight_purity_closed,
    zeta_coeff, ClosedFormInputs,
};

/// A purity value, constrained to [0, 1] up to rounding slack.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct PurityValue {
    value: f64,
}

impl PurityValue {
    /// Accepts values in [-1e-9, 1 + 1e-9]; anything outside signals a bug in
    /// the caller rather than rounding, and is rejected.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite);
        }
        if !(-1e-9..=1.0 + 1e-9).contains(&value) {
            return Err(Error::Invariant(format!(
                "purity {value} outside [0, 1] beyond rounding slack"
            )));
        }
        Ok(Self { value })
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

/// Purity of a pure state: (1/N) sum_i <psi| g_i |psi>^2.
pub fn g_purity(state: &StateVector, rep: &LieRep) -> Result<PurityValue> {
    let dev = (state.norm() - 1.0).abs();
    if dev > tol::STATE_NORM {
        return Err(Error::NotNormalized(dev));
    }
    let mut sum = 0.0;
    for g in rep.generators() {
        let e = state.expectation(g)?;
        sum += e.re * e.re;
    }
    PurityValue::new(sum / rep.purity_norm())
}

/// Purity of a density matrix: (1/N) sum_i Tr[rho g_i]^2.
///
/// Requires rho Hermitian, unit trace (within 1e-8), and positive
/// semidefinite within 1e-10.
pub fn g_purity_mixed(rho: &DenseOperator, rep: &LieRep) -> Result<PurityValue> {
    if rho.dim() != rep.dim() {
        return Err(Error::DimMismatch(rho.dim(), rep.dim()));
    }
    if !rho.is_hermitian(tol::HERMITIAN * rho.fro_norm().max(1.0)) {
        return Err(Error::InvalidInput("density matrix not Hermitian".into()));
    }
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > 1e-8 || trace.im.abs() > 1e-8 {
        return Err(Error::InvalidInput(format!(
            "density matrix trace {trace} differs from one"
        )));
    }
    let (eigs, _) = rho.mat().eigh(UPLO::Lower)?;
    if eigs.iter().any(|&l| l < -1e-10) {
        return Err(Error::InvalidInput(
            "density matrix not positive semidefinite".into(),
        ));
    }
    let mut sum = 0.0;
    for g in rep.generators() {
        let t = rho.matmul(g)?.trace();
        sum += t.re * t.re;
    }
    PurityValue::new(sum / rep.purity_norm())
}

/// Direct matrix route for the weight-state purity: assemble
/// |phi> = e^{alpha J_z} e^{eta J_+} |s,m> with generic matrix exponentials,
/// normalize, and evaluate the quantifier. Independent of the closed-form
/// polynomial path, which it serves as an oracle for.
pub fn weight_purity_direct(
    rep: &LieRep,
    two_m: i32,
    alpha: f64,
    eta_abs: f64,
) -> Result<PurityValue> {
    use crate::linalg::{mat_exp, C64};
    use crate::reps::weight_state;

    let jz = rep
        .generators()
        .get(2)
        .ok_or_else(|| Error::InvalidInput("expected a su(2) representation".into()))?;
    let jp = rep
        .raising_ops()
        .first()
        .ok_or_else(|| Error::InvalidInput("representation carries no raising operator".into()))?;
    let stretch = mat_exp(&jz.scale(C64::new(alpha, 0.0)))?;
    let shear = mat_exp(&jp.scale(C64::new(eta_abs, 0.0)))?;
    let element = stretch.matmul(&shear)?;
    let state = weight_state(rep, two_m)?;
    let image = StateVector::unnormalized(element.matvec(&state)?)?.normalized()?;
    g_purity(&image, rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{mat_exp, C64};
    use crate::linalg::rng::RngHandle;
    use crate::reps::{su2_rep, weight_state};
    use ndarray::Array2;

    #[test]
    fn weight_state_purity_law() {
        // P(|s,m>) = m^2/s^2 at s = 5.
        let rep = su2_rep(10).unwrap();
        for two_m in [-10i32, -6, 0, 6, 10] {
            let state = weight_state(&rep, two_m).unwrap();
            let p = g_purity(&state, &rep).unwrap().value();
            let m = two_m as f64 / 2.0;
            assert!(
                (p - m * m / 25.0).abs() < 1e-10,
                "m = {m}: purity {p} vs {}",
                m * m / 25.0
            );
        }
    }

    #[test]
    fn highest_weight_has_unit_purity() {
        let rep = su2_rep(10).unwrap();
        let p = g_purity(rep.hw_state(), &rep).unwrap().value();
        assert!((p - 1.0).abs() < 1e-10);
    }

    #[test]
    fn unnormalized_input_rejected() {
        let rep = su2_rep(2).unwrap();
        let bad = StateVector::unnormalized(ndarray::Array1::from_elem(
            3,
            C64::new(0.5, 0.0),
        ))
        .unwrap();
        assert!(matches!(g_purity(&bad, &rep), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn mixed_state_cases() {
        let rep = su2_rep(10).unwrap();
        let d = rep.dim();
        // Maximally mixed: all J expectations vanish.
        let mixed = DenseOperator::identity(d).scale(C64::new(1.0 / d as f64, 0.0));
        assert!(g_purity_mixed(&mixed, &rep).unwrap().value().abs() < 1e-12);

        // |5,5><5,5| is free.
        let mut proj = Array2::<C64>::zeros((d, d));
        proj[[0, 0]] = C64::new(1.0, 0.0);
        let proj = DenseOperator::from_valid(proj);
        assert!((g_purity_mixed(&proj, &rep).unwrap().value() - 1.0).abs() < 1e-10);

        // Equal mixture of |5,5> and |5,-5>: Tr[rho J_mu] = 0 for all mu.
        let mut mix = Array2::<C64>::zeros((d, d));
        mix[[0, 0]] = C64::new(0.5, 0.0);
        mix[[d - 1, d - 1]] = C64::new(0.5, 0.0);
        let mix = DenseOperator::from_valid(mix);
        assert!(g_purity_mixed(&mix, &rep).unwrap().value().abs() < 1e-12);
    }

    #[test]
    fn mixed_agrees_with_pure_on_projectors() {
        let rep = su2_rep(6).unwrap();
        let mut rng = RngHandle::new(31);
        let psi = rng.haar_state(rep.dim()).unwrap();
        let d = rep.dim();
        let mut proj = Array2::<C64>::zeros((d, d));
        for i in 0..d {
            for j in 0..d {
                proj[[i, j]] = psi.amplitudes()[i] * psi.amplitudes()[j].conj();
            }
        }
        let proj = DenseOperator::from_valid(proj);
        let p_pure = g_purity(&psi, &rep).unwrap().value();
        let p_mixed = g_purity_mixed(&proj, &rep).unwrap().value();
        assert!((p_pure - p_mixed).abs() < 1e-10);
    }

    #[test]
    fn trace_check_enforced() {
        let rep = su2_rep(2).unwrap();
        let not_normalized = DenseOperator::identity(3);
        assert!(g_purity_mixed(&not_normalized, &rep).is_err());
    }

    #[test]
    fn closed_form_agrees_with_direct_matrix_route() {
        let rep = su2_rep(10).unwrap();
        let mut worst: f64 = 0.0;
        for two_m in [0i32, 2, 4, 6, 8, 10] {
            for ai in 0..9 {
                let alpha = -2.0 + ai as f64 * 0.5;
                for ei in 0..7 {
                    let eta = ei as f64 * 0.5;
                    let closed = weight_purity_closed(10, two_m, alpha, eta).unwrap().value();
                    let direct = weight_purity_direct(&rep, two_m, alpha, eta).unwrap().value();
                    worst = worst.max((closed - direct).abs());
                }
            }
        }
        assert!(worst < 1e-8, "max |closed - direct| = {worst:.3e}");
    }

    #[test]
    fn negative_weights_through_direct_route() {
        // Mirror symmetry: the bound P >= m^2/s^2 also holds below the equator,
        // checked through the direct route since the closed form covers m >= 0.
        let rep = su2_rep(10).unwrap();
        for two_m in [-10i32, -6, -2] {
            let bound = (two_m as f64 / 10.0).powi(2);
            for (alpha, eta) in [(0.0, 0.5), (0.8, 1.5), (-1.2, 2.0)] {
                let p = weight_purity_direct(&rep, two_m, alpha, eta).unwrap().value();
                assert!(
                    p >= bound - 1e-9,
                    "2m={two_m} alpha={alpha} eta={eta}: {p} < {bound}"
                );
            }
        }
    }

    #[test]
    fn unitary_invariance_under_algebra_exponentials() {
        // P(U psi) = P(psi) for U = exp(i sum a_i g_i).
        let rep = su2_rep(10).unwrap();
        let mut rng = RngHandle::new(77);
        for _ in 0..20 {
            let psi = rng.haar_state(rep.dim()).unwrap();
            let mut gen = DenseOperator::zeros(rep.dim());
            for g in rep.generators() {
                let a = rng.uniform(-1.0, 1.0);
                gen = gen.add(&g.scale(C64::new(0.0, a))).unwrap();
            }
            let u = mat_exp(&gen).unwrap();
            let image = StateVector::new(u.matvec(&psi).unwrap()).unwrap();
            let before = g_purity(&psi, &rep).unwrap().value();
            let after = g_purity(&image, &rep).unwrap().value();
            assert!((before - after).abs() < 1e-10);
        }
    }
}
