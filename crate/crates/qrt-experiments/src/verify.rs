//! Runtime verification suite: one named check per module invariant, runnable
//! from the command line with any seed. A failing check reports rather than
//! panics, so the whole table always comes back.

use std::time::Instant;

use qrt_core::cfo::{
    apply_channel, first_order_max_deviation, iwasawa_sl2, normalize_after, sample_cfo_element,
    weak_meas_kraus, SpinLifter,
};
use qrt_core::linalg::rng::RngHandle;
use qrt_core::linalg::{gram_schmidt_hs, hs_inner, C64, DenseOperator};
use qrt_core::purity::{
    g_purity, hyp2f1_terminating, jz_expect, phi_norm, weight_purity_closed,
    weight_purity_direct, zeta_coeff,
};
use qrt_core::reps::{ladder_coefficient, majorana_ops, so2n_rep, su2_rep, weight_state};
use qrt_core::{mat_exp, qr_positive, tol};

use crate::report::{CheckRow, ExperimentReport, ReportMeta, Summary};
use crate::thm1::random_coherent_state;
use crate::{ExperimentConfig, Result};

fn run_check(
    rows: &mut Vec<CheckRow>,
    name: &str,
    body: impl FnOnce() -> qrt_core::Result<(bool, String)>,
) {
    let (passed, detail) = match body() {
        Ok((passed, detail)) => (passed, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    rows.push(CheckRow { check: name.to_string(), passed, detail });
}

pub fn run_verify(cfg: &ExperimentConfig) -> Result<ExperimentReport<CheckRow>> {
    let started = Instant::now();
    let seed = cfg.seed;
    let mut rows = Vec::new();

    run_check(&mut rows, "mat_exp_inverse_identity", || {
        let mut rng = RngHandle::new(seed ^ 0x01);
        let mut worst: f64 = 0.0;
        for dim in [4usize, 64, 256] {
            let g = rng.ginibre(dim)?;
            for variant in 0..3 {
                let raw = match variant {
                    0 => g.add(&g.dagger())?.scale(C64::new(0.5, 0.0)),
                    1 => g.sub(&g.dagger())?.scale(C64::new(0.5, 0.0)),
                    _ => g.clone(),
                };
                // Fix the norm: e^A e^{-A} - I picks up eps * exp(spectral
                // spread), so the identity is only meaningful for exponents
                // of moderate size.
                let a = raw.scale(C64::new(3.0 / raw.fro_norm(), 0.0));
                let forward = mat_exp(&a)?;
                let backward = mat_exp(&a.scale(C64::new(-1.0, 0.0)))?;
                let dev = forward
                    .matmul(&backward)?
                    .sub(&DenseOperator::identity(dim))?
                    .fro_norm();
                worst = worst.max(dev);
            }
        }
        Ok((worst < 1e-9, format!("max ||e^A e^-A - I|| = {worst:.2e}")))
    });

    run_check(&mut rows, "mat_exp_unitary_covariance", || {
        let mut rng = RngHandle::new(seed ^ 0x02);
        let a = rng.ginibre(8)?;
        let u = rng.haar_unitary(8)?;
        let conjugated = u.matmul(&a)?.matmul(&u.dagger())?;
        let lhs = mat_exp(&conjugated)?;
        let rhs = u.matmul(&mat_exp(&a)?)?.matmul(&u.dagger())?;
        let dev = lhs.sub(&rhs)?.fro_norm();
        Ok((dev < 1e-9, format!("||exp(UAU+) - U exp(A) U+|| = {dev:.2e}")))
    });

    run_check(&mut rows, "qr_positive_contract", || {
        let mut rng = RngHandle::new(seed ^ 0x03);
        let mut worst: f64 = 0.0;
        let mut gauge_ok = true;
        for dim in [2usize, 4, 8] {
            let m = rng.ginibre(dim)?;
            let (q1, r1) = qr_positive(&m)?;
            let (q2, r2) = qr_positive(&m)?;
            gauge_ok &= q1.mat() == q2.mat() && r1.mat() == r2.mat();
            worst = worst.max(q1.matmul(&r1)?.sub(&m)?.fro_norm());
            gauge_ok &= q1.is_unitary(1e-10);
            for i in 0..dim {
                gauge_ok &= r1.mat()[[i, i]].re > 0.0 && r1.mat()[[i, i]].im == 0.0;
            }
        }
        Ok((worst < 1e-12 && gauge_ok, format!("max reconstruction {worst:.2e}")))
    });

    run_check(&mut rows, "hs_inner_positivity", || {
        let mut rng = RngHandle::new(seed ^ 0x04);
        let a = rng.ginibre(6)?;
        let aa = hs_inner(&a, &a)?;
        let zz = hs_inner(&DenseOperator::zeros(6), &DenseOperator::zeros(6))?;
        Ok((aa.re > 0.0 && aa.im.abs() < 1e-12 && zz.norm() == 0.0, format!("<A,A> = {:.3}", aa.re)))
    });

    run_check(&mut rows, "gram_schmidt_orthogonality", || {
        let mut rng = RngHandle::new(seed ^ 0x05);
        let raw: Vec<DenseOperator> = (0..4)
            .map(|_| {
                let g = rng.ginibre(3)?;
                g.add(&g.dagger()).map(|h| h.scale(C64::new(0.5, 0.0)))
            })
            .collect::<qrt_core::Result<_>>()?;
        let ortho = gram_schmidt_hs(&raw)?;
        let mut worst: f64 = 0.0;
        for i in 0..ortho.len() {
            for j in (i + 1)..ortho.len() {
                worst = worst.max(hs_inner(&ortho[i], &ortho[j])?.norm());
            }
        }
        let dependent = gram_schmidt_hs(&[raw[0].clone(), raw[0].scale(C64::new(2.0, 0.0))]);
        Ok((
            worst < tol::GS_ORTHOGONALITY && dependent.is_err(),
            format!("max off-diagonal overlap {worst:.2e}"),
        ))
    });

    run_check(&mut rows, "su2_structure_constants", || {
        let mut worst: f64 = 0.0;
        for two_s in 1..=16u32 {
            let rep = su2_rep(two_s)?;
            let g = rep.generators();
            for (a, b, c) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
                let dev = g[a]
                    .commutator(&g[b])?
                    .sub(&g[c].scale(C64::new(0.0, 1.0)))?
                    .fro_norm();
                worst = worst.max(dev);
            }
            let s = two_s as f64 / 2.0;
            let mut casimir = DenseOperator::zeros(rep.dim());
            for j in g {
                casimir = casimir.add(&j.matmul(j)?)?;
            }
            let dev = casimir
                .sub(&DenseOperator::identity(rep.dim()).scale(C64::new(s * (s + 1.0), 0.0)))?
                .fro_norm();
            worst = worst.max(dev);
        }
        Ok((worst < 1e-10, format!("max commutation/Casimir residual {worst:.2e}")))
    });

    run_check(&mut rows, "so2n_structure", || {
        let anticommutation = majorana_ops(3)?.verify_anticommutation()?;
        let rep = so2n_rep(2)?;
        let closure = rep.verify_closure()?;
        let counts_ok = rep.num_generators() == 6 && rep.rank() == 2;
        let vacuum = rep.hw_state();
        let mut annihilation: f64 = 0.0;
        for a in majorana_ops(2)?.annihilation_ops()? {
            let image = a.matvec(vacuum)?;
            annihilation = annihilation
                .max(image.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
        }
        Ok((
            anticommutation < 1e-12 && closure < tol::CLOSURE && counts_ok && annihilation < 1e-12,
            format!("anticommutation {anticommutation:.2e}, closure {closure:.2e}"),
        ))
    });

    run_check(&mut rows, "weight_state_purity_law", || {
        let mut worst: f64 = 0.0;
        for two_s in 1..=16u32 {
            let rep = su2_rep(two_s)?;
            let mut two_m = -(two_s as i32);
            while two_m <= two_s as i32 {
                let p = g_purity(&weight_state(&rep, two_m)?, &rep)?.value();
                let expected = (two_m as f64 / two_s as f64).powi(2);
                worst = worst.max((p - expected).abs());
                two_m += 2;
            }
        }
        Ok((worst < 1e-10, format!("max |P - m^2/s^2| = {worst:.2e}")))
    });

    run_check(&mut rows, "zeta_dual_route", || {
        let mut worst: f64 = 0.0;
        for two_s in 1..=16u32 {
            let mut two_m = -(two_s as i32);
            while two_m <= two_s as i32 {
                let q = ((two_s as i32 - two_m) / 2) as u32;
                let mut ladder = 1.0;
                for k in 1..=q {
                    ladder *= ladder_coefficient(two_s, two_m + 2 * (k as i32 - 1));
                    let poch = zeta_coeff(two_s, two_m, k)?;
                    worst = worst.max((poch - ladder).abs() / ladder.max(1.0));
                }
                two_m += 2;
            }
        }
        Ok((worst < 1e-12, format!("max relative route difference {worst:.2e}")))
    });

    run_check(&mut rows, "norm_series_identities", || {
        let step = 1e-5;
        let mut worst: f64 = 0.0;
        for (two_s, two_m, alpha, eta) in
            [(10u32, 4i32, 0.3, 0.9), (16, 0, -0.8, 1.5), (9, -3, 0.5, 0.7)]
        {
            let series = phi_norm(two_s, two_m, alpha, eta)?;
            let s = two_s as f64 / 2.0;
            let m = two_m as f64 / 2.0;
            let z = -((2.0 * alpha).exp()) * eta * eta;
            let hyp = (2.0 * alpha * m).exp() * hyp2f1_terminating(m - s, s + m + 1.0, 1.0, z)?;
            worst = worst.max((series - hyp).abs() / series);
            let jz = jz_expect(two_s, two_m, alpha, eta)?;
            let fd = (phi_norm(two_s, two_m, alpha + step, eta)?
                - phi_norm(two_s, two_m, alpha - step, eta)?)
                / (4.0 * step);
            worst = worst.max((jz - fd).abs() / jz.abs().max(1e-30));
        }
        Ok((worst < 1e-6, format!("max relative identity residual {worst:.2e}")))
    });

    run_check(&mut rows, "hypergeometric_positivity", || {
        let mut min_f1 = f64::INFINITY;
        let mut min_f2 = f64::INFINITY;
        let mut min_dlog = f64::INFINITY;
        for two_s in 1..=16u32 {
            let mut two_m = two_s as i32 % 2;
            while two_m < two_s as i32 {
                let s = two_s as f64 / 2.0;
                let m = two_m as f64 / 2.0;
                for i in 0..100 {
                    let z = -50.0 * i as f64 / 99.0;
                    let f1 = hyp2f1_terminating(m - s, m + s + 1.0, 1.0, z)?;
                    let f2 = hyp2f1_terminating(m - s + 1.0, m + s + 2.0, 2.0, z)?;
                    min_f1 = min_f1.min(f1);
                    min_f2 = min_f2.min(f2);
                    min_dlog = min_dlog.min(z * (m - s) * (m + s + 1.0) * f2 / f1);
                }
                two_m += 2;
            }
        }
        Ok((
            min_f1 > 0.0 && min_f2 > 0.0 && min_dlog >= -1e-12,
            format!("min 2F1 {min_f1:.2e}, min log-derivative {min_dlog:.2e}"),
        ))
    });

    run_check(&mut rows, "closed_form_vs_direct_matrix", || {
        let rep = su2_rep(10)?;
        let mut worst: f64 = 0.0;
        for two_m in [0i32, 4, 10] {
            for ai in 0..5 {
                let alpha = -2.0 + ai as f64;
                for ei in 0..4 {
                    let eta = ei as f64;
                    let closed = weight_purity_closed(10, two_m, alpha, eta)?.value();
                    let direct = weight_purity_direct(&rep, two_m, alpha, eta)?.value();
                    worst = worst.max((closed - direct).abs());
                }
            }
        }
        Ok((worst < tol::CLOSED_VS_DIRECT, format!("max |closed - direct| = {worst:.2e}")))
    });

    run_check(&mut rows, "kraus_completeness", || {
        let mut rng = RngHandle::new(seed ^ 0x06);
        let su2 = su2_rep(10)?;
        let so4 = so2n_rep(2)?;
        let mut worst: f64 = 0.0;
        for trial in 0..10 {
            let rep = if trial % 2 == 0 { &su2 } else { &so4 };
            let h: Vec<f64> =
                (0..rep.num_generators()).map(|_| rng.uniform(-1.0, 1.0)).collect();
            let eps = rng.uniform(0.0, 0.5);
            let steps = 1 + (trial % 5) as u32;
            let channel = weak_meas_kraus(rep, &h, eps, steps)?;
            worst = worst.max(channel.completeness_residual()?);
        }
        Ok((worst < tol::COMPLETENESS, format!("max completeness residual {worst:.2e}")))
    });

    run_check(&mut rows, "channel_probability_sum", || {
        let mut rng = RngHandle::new(seed ^ 0x07);
        let rep = su2_rep(10)?;
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let h: Vec<f64> =
                (0..rep.num_generators()).map(|_| rng.uniform(-1.0, 1.0)).collect();
            let channel = weak_meas_kraus(&rep, &h, 0.02, 5)?;
            let psi = rng.haar_state(rep.dim())?;
            let total: f64 =
                apply_channel(&channel, &psi)?.iter().map(|o| o.probability).sum();
            worst = worst.max((total - 1.0).abs());
        }
        Ok((worst < tol::PROB_SUM, format!("max |sum p - 1| = {worst:.2e}")))
    });

    run_check(&mut rows, "iwasawa_round_trip", || {
        let mut rng = RngHandle::new(seed ^ 0x08);
        let rep = su2_rep(1)?;
        let lifter = SpinLifter::new(&rep)?;
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let m = rng.ginibre(2)?;
            let factors = iwasawa_sl2(&m)?;
            let lifted = lifter.lift(&factors)?;
            let det = m.mat()[[0, 0]] * m.mat()[[1, 1]] - m.mat()[[0, 1]] * m.mat()[[1, 0]];
            let gauge_fixed = m.scale(C64::new(1.0, 0.0) / det.sqrt());
            worst = worst.max(lifted.sub(&gauge_fixed)?.fro_norm());
        }
        Ok((worst < 1e-10, format!("max round-trip residual {worst:.2e}")))
    });

    run_check(&mut rows, "coherent_state_preservation", || {
        let mut worst: f64 = 0.0;
        for (rep, scale) in [(su2_rep(10)?, 0.5), (so2n_rep(2)?, 0.2)] {
            let mut rng = RngHandle::new(seed ^ 0x09);
            for _ in 0..10 {
                let coherent = random_coherent_state(&rep, &mut rng)?;
                let element = sample_cfo_element(&rep, &mut rng, scale)?;
                let image = normalize_after(&element, &coherent)?;
                worst = worst.max((g_purity(&image, &rep)?.value() - 1.0).abs());
            }
        }
        Ok((worst < tol::FREE_STATE_PURITY, format!("max |P - 1| = {worst:.2e}")))
    });

    run_check(&mut rows, "cartan_channel_fixed_point", || {
        let rep = su2_rep(10)?;
        let mut h = vec![0.0; rep.num_generators()];
        h[rep.cartan_indices()[0]] = 0.7;
        let channel = weak_meas_kraus(&rep, &h, 0.3, 4)?;
        let mut worst: f64 = 0.0;
        for outcome in apply_channel(&channel, rep.hw_state())? {
            if let Some(state) = outcome.state {
                worst = worst.max((state.inner(rep.hw_state())?.norm() - 1.0).abs());
            }
        }
        Ok((worst < 1e-10, format!("max overlap deviation {worst:.2e}")))
    });

    run_check(&mut rows, "first_order_envelope", || {
        let mut rng = RngHandle::new(seed ^ 0x0a);
        let rep = su2_rep(10)?;
        let h: Vec<f64> = (0..3).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let coarse = first_order_max_deviation(&rep, &h, 0.04, 5)?;
        let fine = first_order_max_deviation(&rep, &h, 0.02, 5)?;
        let ratio = coarse / fine;
        Ok((ratio >= 3.5, format!("halving shrink factor {ratio:.2}")))
    });

    let all_passed = rows.iter().all(|r| r.passed);
    let summary = Summary {
        rows: rows.len(),
        all_passed: Some(all_passed),
        violations: rows.iter().filter(|r| !r.passed).count(),
        ..Summary::default()
    };
    Ok(ExperimentReport {
        meta: ReportMeta::new("verify", cfg, started.elapsed().as_secs_f64()),
        rows,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RepChoice;

    #[test]
    fn verification_suite_is_green() {
        let cfg = ExperimentConfig::new(RepChoice::Su2 { two_s: 10 }, 7);
        let report = run_verify(&cfg).unwrap();
        for row in &report.rows {
            assert!(row.passed, "{}: {}", row.check, row.detail);
        }
        assert_eq!(report.summary.all_passed, Some(true));
    }
}
