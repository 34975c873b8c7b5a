//! Machine-readable experiment reports: a meta block, append-only typed rows,
//! and a summary derived from the rows at emission time.

use serde::Serialize;

use crate::config::ExperimentConfig;

pub const SCHEMA_VERSION: &str = "1";

/// Design choices that affect sampled results; embedded in every output so a
/// report is interpretable without the source.
#[derive(Clone, Debug, Serialize)]
pub struct Decisions {
    /// Fig-3-style random states are normalized complex Gaussian vectors.
    pub state_distribution: &'static str,
    /// GL(2) elements in the weight-state sweep are complex Gaussian matrices.
    pub m_distribution: &'static str,
    /// Purity normalization is fixed by the highest-weight expectation.
    pub purity_normalization: &'static str,
    /// Coherent states are exp(i sum a_i g_i)|HW> with Gaussian coefficients.
    pub coherent_state_distribution: &'static str,
    /// Hypergeometric argument convention for the norm series.
    pub norm_series_argument: &'static str,
}

impl Default for Decisions {
    fn default() -> Self {
        Self {
            state_distribution: "haar_gaussian",
            m_distribution: "ginibre_complex_gaussian",
            purity_normalization: "highest_weight_expectation",
            coherent_state_distribution: "exp_gaussian_algebra",
            norm_series_argument: "z=-exp(+2*alpha)*|eta|^2",
        }
    }
}

/// Wall-clock stamp; the only part of a JSON report that varies between
/// reruns with the same seed. Excluded from CSV output entirely.
#[derive(Clone, Debug, Serialize)]
pub struct RunStamp {
    pub timestamp_unix: f64,
    pub runtime_seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportMeta {
    pub schema_version: &'static str,
    pub experiment: String,
    pub seed: u64,
    pub rep: String,
    pub config: serde_json::Value,
    pub decisions: Decisions,
    pub run: RunStamp,
}

impl ReportMeta {
    pub fn new(experiment: &str, cfg: &ExperimentConfig, runtime_seconds: f64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            experiment: experiment.to_string(),
            seed: cfg.seed,
            rep: cfg.rep.label(),
            config: serde_json::to_value(cfg).expect("config serializes"),
            decisions: Decisions::default(),
            run: RunStamp {
                timestamp_unix: std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs_f64())
                    .unwrap_or(0.0),
                runtime_seconds,
            },
        }
    }

    /// The deterministic meta lines embedded in CSV output (no run stamp).
    pub fn csv_preamble(&self) -> Vec<(String, String)> {
        vec![
            ("schema_version".into(), self.schema_version.to_string()),
            ("experiment".into(), self.experiment.clone()),
            ("seed".into(), self.seed.to_string()),
            ("rep".into(), self.rep.clone()),
            (
                "config".into(),
                serde_json::to_string(&self.config).expect("config serializes"),
            ),
            ("state_distribution".into(), self.decisions.state_distribution.into()),
            ("m_distribution".into(), self.decisions.m_distribution.into()),
            (
                "purity_normalization".into(),
                self.decisions.purity_normalization.into(),
            ),
            (
                "coherent_state_distribution".into(),
                self.decisions.coherent_state_distribution.into(),
            ),
            ("norm_series_argument".into(), self.decisions.norm_series_argument.into()),
        ]
    }
}

/// A typed result row with a fixed column order.
pub trait ReportRow: Serialize {
    fn columns() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm1Row {
    pub trial: u64,
    pub purity_image: f64,
}

impl ReportRow for Thm1Row {
    fn columns() -> &'static [&'static str] {
        &["trial", "purity_image"]
    }

    fn cells(&self) -> Vec<String> {
        vec![self.trial.to_string(), self.purity_image.to_string()]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Fig2Row {
    pub m: f64,
    pub sample_index: u64,
    pub purity: f64,
}

impl ReportRow for Fig2Row {
    fn columns() -> &'static [&'static str] {
        &["m", "sample_index", "purity"]
    }

    fn cells(&self) -> Vec<String> {
        vec![self.m.to_string(), self.sample_index.to_string(), self.purity.to_string()]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Fig3Row {
    pub trial: u64,
    pub purity_before: f64,
    pub purity_after_avg: f64,
    pub margin: f64,
    pub min_pk: f64,
}

impl ReportRow for Fig3Row {
    fn columns() -> &'static [&'static str] {
        &["trial", "purity_before", "purity_after_avg", "margin", "min_pk"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.trial.to_string(),
            self.purity_before.to_string(),
            self.purity_after_avg.to_string(),
            self.margin.to_string(),
            self.min_pk.to_string(),
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub m: f64,
    pub alpha: f64,
    pub eta_abs: f64,
    pub p_closed: f64,
    pub p_direct: f64,
    pub abs_diff: f64,
}

impl ReportRow for ScanRow {
    fn columns() -> &'static [&'static str] {
        &["m", "alpha", "eta_abs", "p_closed", "p_direct", "abs_diff"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            self.alpha.to_string(),
            self.eta_abs.to_string(),
            self.p_closed.to_string(),
            self.p_direct.to_string(),
            self.abs_diff.to_string(),
        ]
    }
}

/// Pass/fail row for witness and verification suites.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl ReportRow for CheckRow {
    fn columns() -> &'static [&'static str] {
        &["check", "passed", "detail"]
    }

    fn cells(&self) -> Vec<String> {
        vec![self.check.clone(), self.passed.to_string(), self.detail.clone()]
    }
}

/// Aggregates derived from the rows when the report is assembled.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub rows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deviation_from_one: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_bound_violation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs_diff: Option<f64>,
    /// Count of rows breaching their hard invariant; derived from rows.
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_passed: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport<R: ReportRow> {
    pub meta: ReportMeta,
    pub rows: Vec<R>,
    pub summary: Summary,
}

impl<R: ReportRow> ExperimentReport<R> {
    /// True when some row breached a hard invariant; the caller maps this to
    /// the distinguished exit status.
    pub fn has_violations(&self) -> bool {
        self.summary.violations > 0 || self.summary.all_passed == Some(false)
    }

    /// One-line console summary.
    pub fn headline(&self) -> String {
        let mut parts = vec![
            format!("{}: {} rows", self.meta.experiment, self.rows.len()),
            format!("rep {}", self.meta.rep),
            format!("seed {}", self.meta.seed),
        ];
        if let Some(v) = self.summary.min_margin {
            parts.push(format!("min margin {v:.3e}"));
        }
        if let Some(v) = self.summary.max_deviation_from_one {
            parts.push(format!("max |P-1| {v:.3e}"));
        }
        if let Some(v) = self.summary.max_abs_diff {
            parts.push(format!("max |closed-direct| {v:.3e}"));
        }
        if let Some(v) = self.summary.all_passed {
            parts.push(format!("all passed: {v}"));
        }
        if self.summary.violations > 0 {
            parts.push(format!("VIOLATIONS: {}", self.summary.violations));
        }
        parts.push(format!("{:.2}s", self.meta.run.runtime_seconds));
        parts.join(" | ")
    }
}
