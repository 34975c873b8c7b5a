//! Closed-form purity surfaces over (alpha, |eta|) for every nonnegative
//! weight, cross-checked point by point against the direct matrix route.

use std::time::Instant;

use qrt_core::purity::{weight_purity_closed, weight_purity_direct};
use qrt_core::reps::RepKind;
use qrt_core::tol;

use crate::report::{ExperimentReport, ReportMeta, ScanRow, Summary};
use crate::runner::parallel_trials;
use crate::{Error, ExperimentConfig, Result};

pub fn run_closed_form_scan(cfg: &ExperimentConfig) -> Result<ExperimentReport<ScanRow>> {
    cfg.validate()?;
    let started = Instant::now();
    let rep = cfg.rep.build()?;
    let RepKind::Su2 { two_s } = rep.kind() else {
        return Err(Error::Config("the closed-form scan runs on su(2)".into()));
    };
    let weights = cfg.weights_for_su2(two_s)?;
    let alphas = cfg.alpha_grid.points();
    let etas = cfg.eta_grid.points();

    let per_weight = alphas.len() * etas.len();
    let total = (weights.len() * per_weight) as u64;
    let rows = parallel_trials(cfg.workers, total, |flat| {
        let flat = flat as usize;
        let two_m = weights[flat / per_weight];
        let alpha = alphas[(flat % per_weight) / etas.len()];
        let eta_abs = etas[flat % etas.len()];
        let p_closed = weight_purity_closed(two_s, two_m, alpha, eta_abs)?.value();
        let p_direct = weight_purity_direct(&rep, two_m, alpha, eta_abs)?.value();
        Ok(ScanRow {
            m: two_m as f64 / 2.0,
            alpha,
            eta_abs,
            p_closed,
            p_direct,
            abs_diff: (p_closed - p_direct).abs(),
        })
    })?;

    let max_abs_diff = rows.iter().map(|r| r.abs_diff).fold(0.0f64, f64::max);
    let violations = rows.iter().filter(|r| r.abs_diff > tol::CLOSED_VS_DIRECT).count();

    let summary = Summary {
        rows: rows.len(),
        max_abs_diff: Some(max_abs_diff),
        violations,
        ..Summary::default()
    };
    Ok(ExperimentReport {
        meta: ReportMeta::new("scan", cfg, started.elapsed().as_secs_f64()),
        rows,
        summary,
    })
}
