//! Deterministic parallel trial execution.

use rayon::prelude::*;

use crate::Result;

/// Map trial indices through `body` in parallel, collecting results in trial
/// order regardless of scheduling. Each body call derives its own RNG from
/// (seed, trial), so the output is identical for any worker count.
pub fn parallel_trials<T, F>(workers: usize, trials: u64, body: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    let run = || (0..trials).into_par_iter().map(|trial| body(trial)).collect();
    if workers == 0 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| crate::Error::Config(format!("worker pool: {e}")))?;
        pool.install(run)
    }
}
