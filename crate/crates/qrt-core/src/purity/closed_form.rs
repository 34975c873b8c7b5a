//! Closed-form purity of weight states under triangular group elements.
//!
//! For |phi> = e^{alpha J_z} e^{eta J_+} |s,m> everything reduces to
//! terminating Gauss hypergeometric polynomials in z = -e^{2 alpha} |eta|^2:
//!
//!   <phi|phi>   = e^{2 alpha m} 2F1(m-s, s+m+1; 1; z)
//!   <phi|J_z|phi> = (1/2) d/d alpha <phi|phi>
//!   P(phi/||phi||) = (m/s + (z/s) d/dz log 2F1(m-s, m+s+1; 1; z))^2 - z G(m,s,z)^2
//!
//! with G(m,s,z) = (m-s)(m+s+1) [2F1(m-s,m+s+1;2;z) + z m 2F1(m-s+1,m+s+2;3;z)]
//!                 / [s 2F1(m-s,m+s+1;1;z) (1-z)].
//!
//! Every 2F1 here has a nonpositive-integer first parameter, so the series is
//! an exact polynomial; for z <= 0 all of its terms are nonnegative, which
//! makes the evaluation cancellation-free.
//!
//! Spins and weights are passed doubled (2s, 2m) so half-integers stay exact.

use num_complex::Complex64;

use super::PurityValue;
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::reps::ladder_coefficient;

/// Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    let mut product = 1.0;
    for j in 0..k {
        product *= a + j as f64;
    }
    product
}

/// Terminating Gauss hypergeometric sum
/// 2F1(a, b; c; z) = sum_{k=0}^{-a} (a)_k (b)_k z^k / ((c)_k k!)
/// for a a nonpositive integer. Exact polynomial evaluation.
pub fn hyp2f1_terminating(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let rounded = a.round();
    if (a - rounded).abs() > 1e-9 || rounded > 0.0 {
        return Err(Error::InvalidInput(format!(
            "2F1 parameter a = {a} is not a nonpositive integer; series does not terminate"
        )));
    }
    let terms = (-rounded) as u32;
    // (c)_k must not vanish before the series terminates.
    if c <= 0.0 {
        let c_rounded = c.round();
        if (c - c_rounded).abs() < 1e-9 && (-c_rounded as u32) < terms {
            return Err(Error::InvalidInput(format!(
                "2F1 parameter c = {c} hits zero before the series terminates"
            )));
        }
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..terms {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) * z / ((c + kf) * (kf + 1.0));
        sum += term;
    }
    Ok(sum)
}

/// zeta(s, m, k): the coefficient in J_+^k |s,m> = zeta |s,m+k>, equal to the
/// ladder product prod_{j=0}^{k-1} c(s, m+j). Evaluated through Pochhammer
/// symbols: zeta^2 = (s-m)(s+m+1) (s-m-k+1)_{k-1} (s+m+2)_{k-1}.
pub fn zeta_coeff(two_s: u32, two_m: i32, k: u32) -> Result<f64> {
    check_weight(two_s, two_m)?;
    let q = (two_s as i64 - two_m as i64) / 2;
    if k == 0 || (k as i64) > q {
        return Err(Error::OutOfRange(format!(
            "ladder power k = {k} outside 1..=s-m = {q}"
        )));
    }
    let s_minus_m = q as f64;
    let s_plus_m_1 = ((two_s as i64 + two_m as i64 + 2) / 2) as f64;
    let square = s_minus_m
        * s_plus_m_1
        * pochhammer(s_minus_m - k as f64 + 1.0, k - 1)
        * pochhammer(s_plus_m_1 + 1.0, k - 1);
    Ok(square.sqrt())
}

fn check_weight(two_s: u32, two_m: i32) -> Result<()> {
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
    Ok(())
}

fn zeta_or_one(two_s: u32, two_m: i32, k: u32) -> Result<f64> {
    if k == 0 {
        Ok(1.0)
    } else {
        zeta_coeff(two_s, two_m, k)
    }
}

/// <phi|phi> for |phi> = e^{alpha J_z} e^{eta J_+} |s,m>:
/// e^{2 alpha m} (1 + sum_{k=1}^{s-m} |eta|^{2k} e^{2 alpha k} zeta^2 / (k!)^2).
pub fn phi_norm(two_s: u32, two_m: i32, alpha: f64, eta_abs: f64) -> Result<f64> {
    check_weight(two_s, two_m)?;
    let q = ((two_s as i64 - two_m as i64) / 2) as u32;
    let growth = eta_abs * eta_abs * (2.0 * alpha).exp();
    let mut sum = 1.0;
    let mut prefactor = 1.0; // |eta|^{2k} e^{2 alpha k} / (k!)^2
    for k in 1..=q {
        prefactor *= growth / ((k * k) as f64);
        let zeta = zeta_coeff(two_s, two_m, k)?;
        sum += prefactor * zeta * zeta;
    }
    Ok((2.0 * alpha * two_m as f64 / 2.0).exp() * sum)
}

/// <phi|J_z|phi> = e^{2 alpha m} (m + sum_k |eta|^{2k} e^{2 alpha k} zeta^2 (m+k) / (k!)^2),
/// which equals (1/2) d/d alpha <phi|phi>.
pub fn jz_expect(two_s: u32, two_m: i32, alpha: f64, eta_abs: f64) -> Result<f64> {
    check_weight(two_s, two_m)?;
    let q = ((two_s as i64 - two_m as i64) / 2) as u32;
    let m = two_m as f64 / 2.0;
    let growth = eta_abs * eta_abs * (2.0 * alpha).exp();
    let mut sum = m;
    let mut prefactor = 1.0;
    for k in 1..=q {
        prefactor *= growth / ((k * k) as f64);
        let zeta = zeta_coeff(two_s, two_m, k)?;
        sum += prefactor * zeta * zeta * (m + k as f64);
    }
    Ok((2.0 * alpha * m).exp() * sum)
}

/// <phi|J_+|phi> = eta^* sum_{k=0}^{s-m-1} c(s,m+k) |eta|^{2k}
///                 e^{alpha(2m+2k+1)} zeta(k) zeta(k+1) / (k! (k+1)!).
/// The lowering expectation is its complex conjugate by construction.
pub fn jplus_expect(two_s: u32, two_m: i32, alpha: f64, eta: C64) -> Result<C64> {
    check_weight(two_s, two_m)?;
    let q = ((two_s as i64 - two_m as i64) / 2) as u32;
    let m = two_m as f64 / 2.0;
    if q == 0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let eta_sq = eta.norm_sqr();
    let mut sum = 0.0;
    let mut prefactor = 1.0; // |eta|^{2k} / (k! (k+1)!)
    for k in 0..q {
        if k > 0 {
            prefactor *= eta_sq / ((k * (k + 1)) as f64);
        }
        let c = ladder_coefficient(two_s, two_m + 2 * k as i32);
        let weight = (alpha * (2.0 * m + 2.0 * k as f64 + 1.0)).exp();
        sum += c * prefactor
            * weight
            * zeta_or_one(two_s, two_m, k)?
            * zeta_or_one(two_s, two_m, k + 1)?;
    }
    Ok(eta.conj() * Complex64::new(sum, 0.0))
}

/// Validated inputs of the closed-form purity, with z = -e^{2 alpha} |eta|^2.
#[derive(Clone, Copy, Debug)]
pub struct ClosedFormInputs {
    pub s: f64,
    pub m: f64,
    pub alpha: f64,
    pub eta_abs: f64,
    pub z: f64,
}

impl ClosedFormInputs {
    pub fn new(two_s: u32, two_m: i32, alpha: f64, eta_abs: f64) -> Result<Self> {
        check_weight(two_s, two_m)?;
        if two_s == 0 {
            return Err(Error::InvalidInput("spin must be positive".into()));
        }
        if eta_abs < 0.0 || !eta_abs.is_finite() || !alpha.is_finite() {
            return Err(Error::InvalidInput(
                "alpha must be finite and |eta| finite and nonnegative".into(),
            ));
        }
        let z = -((2.0 * alpha).exp()) * eta_abs * eta_abs;
        Ok(Self {
            s: two_s as f64 / 2.0,
            m: two_m as f64 / 2.0,
            alpha,
            eta_abs,
            z,
        })
    }
}

/// Purity of the normalized state e^{alpha J_z} e^{eta J_+} |s,m> / norm,
/// for weights m >= 0 (negative m reduces to this case by the reflection
/// symmetry of the algebra and is not evaluated in closed form here).
pub fn weight_purity_closed(
    two_s: u32,
    two_m: i32,
    alpha: f64,
    eta_abs: f64,
) -> Result<PurityValue> {
    if two_m < 0 {
        return Err(Error::InvalidInput(
            "closed form is evaluated for m >= 0; map negative m through the \
             direct matrix route"
                .into(),
        ));
    }
    let inputs = ClosedFormInputs::new(two_s, two_m, alpha, eta_abs)?;
    let (s, m, z) = (inputs.s, inputs.m, inputs.z);
    if two_m == two_s as i32 {
        // Highest-weight state: fixed up to scale, purity exactly one.
        return PurityValue::new(1.0);
    }

    let f1 = hyp2f1_terminating(m - s, m + s + 1.0, 1.0, z)?;
    let f1_deriv = hyp2f1_terminating(m - s + 1.0, m + s + 2.0, 2.0, z)?;
    let z_dlog = z * (m - s) * (m + s + 1.0) * f1_deriv / f1;
    let cartan_term = (m + z_dlog) / s;

    let f2 = hyp2f1_terminating(m - s, m + s + 1.0, 2.0, z)?;
    let f3 = hyp2f1_terminating(m - s + 1.0, m + s + 2.0, 3.0, z)?;
    let g = (m - s) * (m + s + 1.0) * (f2 + z * m * f3) / (s * f1 * (1.0 - z));

    PurityValue::new(cartan_term * cartan_term - z * g * g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(7.3, 0), 1.0);
        assert_eq!(pochhammer(3.0, 2), 12.0);
        assert_eq!(pochhammer(-2.0, 4), 0.0); // factor hits zero
    }

    #[test]
    fn hyp2f1_basics() {
        // a = 0: empty sum beyond k = 0.
        assert_eq!(hyp2f1_terminating(0.0, 5.5, 1.0, -3.0).unwrap(), 1.0);
        // a = -1, b = 2, c = 1, z = 1: 1 - 2 = -1.
        assert_eq!(hyp2f1_terminating(-1.0, 2.0, 1.0, 1.0).unwrap(), -1.0);
        // Non-terminating parameter rejected.
        assert!(hyp2f1_terminating(0.5, 1.0, 1.0, 0.1).is_err());
        assert!(hyp2f1_terminating(2.0, 1.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn hyp2f1_weight_family_at_least_one() {
        // For a = m-s, b = m+s+1, c = 1 and z <= 0 every term is nonnegative,
        // so the sum is >= 1.
        for two_s in [2u32, 7, 10, 16] {
            let mut two_m = two_s as i32 % 2;
            while two_m <= two_s as i32 {
                let s = two_s as f64 / 2.0;
                let m = two_m as f64 / 2.0;
                for z in [0.0, -0.3, -4.0, -50.0] {
                    let v = hyp2f1_terminating(m - s, m + s + 1.0, 1.0, z).unwrap();
                    assert!(v >= 1.0, "2s={two_s} 2m={two_m} z={z}: {v}");
                }
                two_m += 2;
            }
        }
    }

    #[test]
    fn zeta_matches_ladder_product() {
        // Dual route: the Pochhammer form must equal prod_j c(s, m+j).
        for two_s in 1..=16u32 {
            let mut two_m = -(two_s as i32);
            while two_m <= two_s as i32 {
                let q = ((two_s as i32 - two_m) / 2) as u32;
                let mut ladder = 1.0;
                for k in 1..=q {
                    ladder *= ladder_coefficient(two_s, two_m + 2 * (k as i32 - 1));
                    let pochhammer_route = zeta_coeff(two_s, two_m, k).unwrap();
                    assert!(
                        (pochhammer_route - ladder).abs() <= 1e-12 * ladder.max(1.0),
                        "2s={two_s} 2m={two_m} k={k}: {pochhammer_route} vs {ladder}"
                    );
                }
                two_m += 2;
            }
        }
    }

    #[test]
    fn zeta_hand_values() {
        // k = 1 is a single ladder step.
        assert!((zeta_coeff(10, 6, 1).unwrap() - ladder_coefficient(10, 6)).abs() < 1e-14);
        // s=5, m=3, k=2: sqrt(18 * 10) = sqrt(180).
        assert!((zeta_coeff(10, 6, 2).unwrap() - 180f64.sqrt()).abs() < 1e-12);
        // k beyond s - m is out of range.
        assert!(zeta_coeff(10, 10, 1).is_err());
        assert!(zeta_coeff(10, 6, 3).is_err());
    }

    #[test]
    fn phi_norm_cases() {
        // eta = 0: only the k = 0 term.
        assert!((phi_norm(10, 4, 0.7, 0.0).unwrap() - (2.0f64 * 0.7 * 2.0).exp()).abs() < 1e-12);
        // m = s: empty sum.
        assert!((phi_norm(10, 10, -0.3, 2.5).unwrap() - (-0.3f64 * 10.0).exp()).abs() < 1e-12);
        // s=1, m=0, alpha=0, |eta|=1: 1 + zeta(1,0,1)^2 = 3.
        assert!((phi_norm(2, 0, 0.0, 1.0).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn phi_norm_matches_hypergeometric_form() {
        // The series sums to e^{2 alpha m} 2F1(m-s, s+m+1; 1; -e^{+2 alpha}|eta|^2);
        // the exponent sign in the argument is fixed by the series itself.
        for (two_s, two_m, alpha, eta) in
            [(10u32, 4i32, 0.4, 0.8), (10, 0, -0.9, 2.0), (7, 3, 1.1, 1.4), (16, -8, 0.3, 0.5)]
        {
            let series = phi_norm(two_s, two_m, alpha, eta).unwrap();
            let s = two_s as f64 / 2.0;
            let m = two_m as f64 / 2.0;
            let z = -((2.0 * alpha).exp()) * eta * eta;
            let hyp = (2.0 * alpha * m).exp()
                * hyp2f1_terminating(m - s, s + m + 1.0, 1.0, z).unwrap();
            let rel = (series - hyp).abs() / series.abs();
            assert!(rel < 1e-12, "2s={two_s} 2m={two_m}: rel {rel:.3e}");
        }
    }

    #[test]
    fn jz_cases_and_derivative_identity() {
        // eta = 0 and m = s limits.
        assert!((jz_expect(10, 4, 0.2, 0.0).unwrap() - 2.0 * (0.2f64 * 4.0).exp()).abs() < 1e-12);
        assert!(
            (jz_expect(10, 10, 0.2, 1.5).unwrap() - 5.0 * (0.2f64 * 10.0).exp()).abs() < 1e-10
        );
        // s=1, m=0, alpha=0, |eta|=1: 0 + 2.
        assert!((jz_expect(2, 0, 0.0, 1.0).unwrap() - 2.0).abs() < 1e-14);

        // <J_z> = (1/2) d/d alpha <phi|phi> via centered differences.
        let step = 1e-5;
        for (two_s, two_m, alpha, eta) in
            [(10u32, 4i32, 0.3, 0.9), (10, 0, -0.6, 1.7), (16, 6, 0.0, 0.4), (9, -3, 0.8, 1.0)]
        {
            let jz = jz_expect(two_s, two_m, alpha, eta).unwrap();
            let fd = (phi_norm(two_s, two_m, alpha + step, eta).unwrap()
                - phi_norm(two_s, two_m, alpha - step, eta).unwrap())
                / (2.0 * step)
                / 2.0;
            let rel = (jz - fd).abs() / jz.abs().max(1e-30);
            assert!(rel < 1e-6, "2s={two_s} 2m={two_m}: rel {rel:.3e}");
        }
    }

    #[test]
    fn jplus_cases() {
        let zero = C64::new(0.0, 0.0);
        // eta = 0: every term carries eta^*.
        assert_eq!(jplus_expect(10, 4, 0.5, zero).unwrap(), zero);
        // m = s: c(s,s) = 0 and the sum is empty.
        assert_eq!(jplus_expect(10, 10, 0.5, C64::new(1.5, -0.5)).unwrap(), zero);
        // s=1, m=0, alpha=0, eta=1: c(1,0) zeta(1,0,1) = 2.
        let v = jplus_expect(2, 0, 0.0, C64::new(1.0, 0.0)).unwrap();
        assert!((v - C64::new(2.0, 0.0)).norm() < 1e-14);
        // Conjugation structure: the phase is carried by eta^*.
        let eta = C64::new(0.3, 0.7);
        let v = jplus_expect(10, 2, 0.1, eta).unwrap();
        let ratio = v / eta.conj();
        assert!(ratio.im.abs() < 1e-12 && ratio.re > 0.0);
    }

    #[test]
    fn closed_form_limits() {
        // eta = 0 gives exactly m^2/s^2.
        for two_m in [0i32, 2, 4, 6, 8, 10] {
            let p = weight_purity_closed(10, two_m, 1.3, 0.0).unwrap().value();
            let expected = (two_m as f64 / 10.0).powi(2);
            assert!((p - expected).abs() < 1e-12);
        }
        // m = s stays at one for any alpha, eta.
        for (alpha, eta) in [(0.0, 0.0), (1.5, 2.0), (-2.0, 3.0)] {
            let p = weight_purity_closed(10, 10, alpha, eta).unwrap().value();
            assert_eq!(p, 1.0);
        }
        // Negative m is not evaluated in closed form.
        assert!(weight_purity_closed(10, -2, 0.0, 1.0).is_err());
    }

    #[test]
    fn closed_form_regression_point() {
        // s=5, m=0, alpha=0, |eta|=0.5; frozen from the direct 11x11 matrix
        // route, which agrees with the closed form to machine precision here.
        let p = weight_purity_closed(10, 0, 0.0, 0.5).unwrap().value();
        assert!((p - 0.9231448469501).abs() < 1e-12, "purity {p}");
        assert!(p > 0.0 && p <= 1.0);
    }

    #[test]
    fn closed_form_respects_weight_bound() {
        // P >= m^2/s^2 over a grid, for all spins up to 8.
        for two_s in 1..=16u32 {
            let mut two_m = two_s as i32 % 2;
            while two_m <= two_s as i32 {
                let bound = (two_m as f64 / two_s as f64).powi(2);
                for ai in 0..9 {
                    let alpha = -2.0 + ai as f64 * 0.5;
                    for ei in 0..7 {
                        let eta = ei as f64 * 0.5;
                        let p = weight_purity_closed(two_s, two_m, alpha, eta)
                            .unwrap()
                            .value();
                        assert!(
                            p >= bound - 1e-10,
                            "2s={two_s} 2m={two_m} alpha={alpha} eta={eta}: {p} < {bound}"
                        );
                    }
                }
                two_m += 2;
            }
        }
    }

    #[test]
    fn log_derivative_nonnegative() {
        for two_s in [1u32, 5, 10, 16] {
            let mut two_m = two_s as i32 % 2;
            // m = s makes 2F1 constant; the log-derivative vanishes trivially.
            while two_m < two_s as i32 {
                let s = two_s as f64 / 2.0;
                let m = two_m as f64 / 2.0;
                for i in 0..40 {
                    let z = -50.0 * (i as f64 / 39.0);
                    let f1 = hyp2f1_terminating(m - s, m + s + 1.0, 1.0, z).unwrap();
                    let f1d = hyp2f1_terminating(m - s + 1.0, m + s + 2.0, 2.0, z).unwrap();
                    let z_dlog = z * (m - s) * (m + s + 1.0) * f1d / f1;
                    assert!(z_dlog >= -1e-12, "2s={two_s} 2m={two_m} z={z}: {z_dlog}");
                }
                two_m += 2;
            }
        }
    }
}
