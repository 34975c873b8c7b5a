//! Free-state preservation: random coherent states hit with random
//! complexified group elements keep unit purity.

use std::time::Instant;

use qrt_core::cfo::{normalize_after, sample_cfo_element};
use qrt_core::linalg::rng::RngHandle;
use qrt_core::linalg::{C64, DenseOperator, StateVector};
use qrt_core::purity::g_purity;
use qrt_core::reps::LieRep;
use qrt_core::{mat_exp, tol};

use crate::report::{ExperimentReport, ReportMeta, Summary, Thm1Row};
use crate::runner::parallel_trials;
use crate::{ExperimentConfig, Result};

/// exp(i sum_i a_i g_i) |HW> with standard-normal coefficients: a random
/// point on the unitary orbit of the highest-weight state.
pub fn random_coherent_state(rep: &LieRep, rng: &mut RngHandle) -> qrt_core::Result<StateVector> {
    let mut exponent = DenseOperator::zeros(rep.dim());
    for g in rep.generators() {
        let a = rng.standard_normal();
        exponent = exponent.add(&g.scale(C64::new(0.0, a)))?;
    }
    let u = mat_exp(&exponent)?;
    StateVector::new(u.matvec(rep.hw_state())?)
}

pub fn run_thm1(cfg: &ExperimentConfig) -> Result<ExperimentReport<Thm1Row>> {
    cfg.validate()?;
    let started = Instant::now();
    let rep = cfg.rep.build()?;
    let master = RngHandle::new(cfg.seed);

    let rows = parallel_trials(cfg.workers, cfg.trials, |trial| {
        let mut rng = master.child(trial);
        let coherent = random_coherent_state(&rep, &mut rng)?;
        let element = sample_cfo_element(&rep, &mut rng, cfg.cfo_scale)?;
        let image = normalize_after(&element, &coherent)?;
        let purity_image = g_purity(&image, &rep)?.value();
        Ok(Thm1Row { trial, purity_image })
    })?;

    let max_deviation = rows
        .iter()
        .map(|r| (r.purity_image - 1.0).abs())
        .fold(0.0f64, f64::max);
    let violations = rows
        .iter()
        .filter(|r| (r.purity_image - 1.0).abs() > tol::FREE_STATE_PURITY)
        .count();

    let summary = Summary {
        rows: rows.len(),
        max_deviation_from_one: Some(max_deviation),
        violations,
        ..Summary::default()
    };
    Ok(ExperimentReport {
        meta: ReportMeta::new("thm1", cfg, started.elapsed().as_secs_f64()),
        rows,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RepChoice;

    #[test]
    fn zero_scale_leaves_inputs_fixed() {
        let mut cfg = ExperimentConfig::new(RepChoice::Su2 { two_s: 10 }, 11);
        cfg.trials = 20;
        cfg.cfo_scale = 0.0;
        let report = run_thm1(&cfg).unwrap();
        for row in &report.rows {
            assert!((row.purity_image - 1.0).abs() < 1e-10);
        }
        assert_eq!(report.summary.violations, 0);
    }

    #[test]
    fn small_runs_preserve_purity() {
        for rep in [RepChoice::Su2 { two_s: 10 }, RepChoice::So2n { modes: 2 }] {
            let mut cfg = ExperimentConfig::new(rep, 7);
            cfg.trials = 25;
            cfg.cfo_scale = if matches!(rep, RepChoice::Su2 { .. }) { 0.5 } else { 0.2 };
            let report = run_thm1(&cfg).unwrap();
            assert_eq!(report.summary.violations, 0, "{}", report.headline());
            assert!(report.summary.max_deviation_from_one.unwrap() < 1e-8);
        }
    }

    #[test]
    fn deterministic_rows() {
        let mut cfg = ExperimentConfig::new(RepChoice::Su2 { two_s: 10 }, 99);
        cfg.trials = 10;
        let a = run_thm1(&cfg).unwrap();
        cfg.workers = 2;
        let b = run_thm1(&cfg).unwrap();
        for (x, y) in a.rows.iter().zip(b.rows.iter()) {
            assert_eq!(x.trial, y.trial);
            assert_eq!(x.purity_image.to_bits(), y.purity_image.to_bits());
        }
    }
}
