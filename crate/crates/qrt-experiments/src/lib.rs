//! Experiment drivers: free-state preservation, the GL(2) weight-state sweep,
//! weak-measurement channel averages, the closed-form purity scan, and the
//! structural witness suite — all seeded, parallel, and reproducible row for
//! row.

pub mod config;
pub mod fig2;
pub mod fig3;
pub mod report;
mod runner;
pub mod scan;
pub mod structures_suite;
pub mod thm1;
pub mod verify;

pub use config::{ExperimentConfig, GridSpec, RepChoice};
pub use report::{
    CheckRow, ExperimentReport, Fig2Row, Fig3Row, ReportMeta, ReportRow, ScanRow, Summary,
    Thm1Row,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] qrt_core::Error),

    #[error("configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
