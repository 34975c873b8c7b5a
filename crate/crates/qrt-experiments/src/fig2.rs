//! Weight-state sweep under random GL(2) elements: purity of normalized
//! M|s,m> against the m^2/s^2 floor, one row per sample.

use std::time::Instant;

use qrt_core::cfo::{iwasawa_sl2, normalize_after, SpinLifter};
use qrt_core::linalg::rng::RngHandle;
use qrt_core::purity::g_purity;
use qrt_core::reps::{weight_state, RepKind};
use qrt_core::tol;

use crate::report::{ExperimentReport, Fig2Row, ReportMeta, Summary};
use crate::runner::parallel_trials;
use crate::{Error, ExperimentConfig, Result};

pub fn run_fig2(cfg: &ExperimentConfig) -> Result<ExperimentReport<Fig2Row>> {
    cfg.validate()?;
    let started = Instant::now();
    let rep = cfg.rep.build()?;
    let RepKind::Su2 { two_s } = rep.kind() else {
        return Err(Error::Config("the weight-state sweep runs on su(2)".into()));
    };
    let weights = cfg.weights_for_su2(two_s)?;
    let lifter = SpinLifter::new(&rep)?;
    let master = RngHandle::new(cfg.seed);
    let s = two_s as f64 / 2.0;

    let total = weights.len() as u64 * cfg.trials;
    let rows = parallel_trials(cfg.workers, total, |flat| {
        let weight_index = (flat / cfg.trials) as usize;
        let sample_index = flat % cfg.trials;
        let two_m = weights[weight_index];
        let mut rng = master.child(flat);
        let element = lifter.lift(&iwasawa_sl2(&rng.ginibre(2)?)?)?;
        let state = weight_state(&rep, two_m)?;
        let image = normalize_after(&element, &state)?;
        let purity = g_purity(&image, &rep)?.value();
        Ok(Fig2Row { m: two_m as f64 / 2.0, sample_index, purity })
    })?;

    let mut max_violation = 0.0f64;
    let mut violations = 0usize;
    for row in &rows {
        let bound = (row.m / s).powi(2);
        let shortfall = bound - row.purity;
        if shortfall > tol::WEIGHT_BOUND {
            violations += 1;
            max_violation = max_violation.max(shortfall);
        }
    }

    let summary = Summary {
        rows: rows.len(),
        max_bound_violation: Some(max_violation),
        violations,
        ..Summary::default()
    };
    Ok(ExperimentReport {
        meta: ReportMeta::new("fig2", cfg, started.elapsed().as_secs_f64()),
        rows,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RepChoice;

    #[test]
    fn sweep_respects_bound_and_top_weight_stays_free() {
        let mut cfg = ExperimentConfig::new(RepChoice::Su2 { two_s: 10 }, 5);
        cfg.trials = 40;
        cfg.m_values = Some(vec![0, 6, 10]);
        let report = run_fig2(&cfg).unwrap();
        assert_eq!(report.rows.len(), 120);
        assert_eq!(report.summary.violations, 0, "{}", report.headline());
        for row in report.rows.iter().filter(|r| r.m == 5.0) {
            assert!((row.purity - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_fermionic_rep() {
        let cfg = ExperimentConfig::new(RepChoice::So2n { modes: 2 }, 5);
        assert!(matches!(run_fig2(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn deterministic_across_worker_counts() {
        let mut cfg = ExperimentConfig::new(RepChoice::Su2 { two_s: 10 }, 31);
        cfg.trials = 15;
        cfg.m_values = Some(vec![4]);
        let a = run_fig2(&cfg).unwrap();
        cfg.workers = 2;
        let b = run_fig2(&cfg).unwrap();
        for (x, y) in a.rows.iter().zip(b.rows.iter()) {
            assert_eq!(x.purity.to_bits(), y.purity.to_bits());
        }
    }
}
