//! Average purity under weak-measurement channels: fresh random state and
//! fresh couplings per trial, margin = average purity after minus purity
//! before. Rows are emitted sorted by the starting purity; trial indices stay
//! attached so reruns are comparable.

use std::time::Instant;

use qrt_core::cfo::{apply_channel, weak_meas_kraus};
use qrt_core::linalg::rng::RngHandle;
use qrt_core::purity::g_purity;
use qrt_core::tol;

use crate::report::{ExperimentReport, Fig3Row, ReportMeta, Summary};
use crate::runner::parallel_trials;
use crate::{Error, ExperimentConfig, Result};

pub fn run_fig3(cfg: &ExperimentConfig) -> Result<ExperimentReport<Fig3Row>> {
    cfg.validate()?;
    let started = Instant::now();
    let rep = cfg.rep.build()?;
    let master = RngHandle::new(cfg.seed);

    let mut rows = parallel_trials(cfg.workers, cfg.trials, |trial| {
        let mut rng = master.child(trial);
        let psi = rng.haar_state(rep.dim())?;
        let couplings: Vec<f64> =
            (0..rep.num_generators()).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let channel = weak_meas_kraus(&rep, &couplings, cfg.epsilon, cfg.steps)?;
        let purity_before = g_purity(&psi, &rep)?.value();
        let outcomes = apply_channel(&channel, &psi)?;

        // Probability bookkeeping, re-asserted at the driver level.
        let total: f64 = outcomes.iter().map(|o| o.probability).sum();
        if (total - 1.0).abs() > tol::PROB_SUM {
            return Err(Error::Core(qrt_core::Error::Invariant(format!(
                "trial {trial}: outcome probabilities sum to {total}"
            ))));
        }

        let mut purity_after_avg = 0.0;
        let mut min_pk = f64::INFINITY;
        for outcome in &outcomes {
            min_pk = min_pk.min(outcome.probability);
            if let Some(state) = &outcome.state {
                purity_after_avg += outcome.probability * g_purity(state, &rep)?.value();
            }
        }
        Ok(Fig3Row {
            trial,
            purity_before,
            purity_after_avg,
            margin: purity_after_avg - purity_before,
            min_pk,
        })
    })?;

    // Emission order: by starting purity (ties broken by trial index for
    // byte-stable output).
    rows.sort_by(|a, b| {
        a.purity_before
            .partial_cmp(&b.purity_before)
            .expect("purities are finite")
            .then(a.trial.cmp(&b.trial))
    });

    let min_margin = rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    let mean_margin = rows.iter().map(|r| r.margin).sum::<f64>() / rows.len() as f64;
    let violations = rows.iter().filter(|r| r.margin < -tol::MARGIN).count();

    let summary = Summary {
        rows: rows.len(),
        min_margin: Some(min_margin),
        mean_margin: Some(mean_margin),
        violations,
        ..Summary::default()
    };
    Ok(ExperimentReport {
        meta: ReportMeta::new("fig3", cfg, started.elapsed().as_secs_f64()),
        rows,
        summary,
    })
}
