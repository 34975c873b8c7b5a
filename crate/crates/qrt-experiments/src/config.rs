//! Experiment configuration: representation choice, trial counts, channel
//! parameters, and scan grids.

use serde::{Deserialize, Serialize};

use qrt_core::reps::{so2n_rep, su2_rep, LieRep};

use crate::{Error, Result};

/// Which representation an experiment runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepChoice {
    Su2 { two_s: u32 },
    So2n { modes: u32 },
}

impl RepChoice {
    pub fn build(&self) -> Result<LieRep> {
        Ok(match self {
            RepChoice::Su2 { two_s } => su2_rep(*two_s)?,
            RepChoice::So2n { modes } => so2n_rep(*modes)?,
        })
    }

    pub fn label(&self) -> String {
        match self {
            RepChoice::Su2 { two_s } if two_s % 2 == 0 => format!("su2(s={})", two_s / 2),
            RepChoice::Su2 { two_s } => format!("su2(s={two_s}/2)"),
            RepChoice::So2n { modes } => format!("so({})", 2 * modes),
        }
    }
}

/// Inclusive grid lo:hi:count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::Config("grid needs at least one point".into()));
        }
        if count == 1 && lo != hi {
            return Err(Error::Config("single-point grid requires lo = hi".into()));
        }
        if !(lo.is_finite() && hi.is_finite()) || hi < lo {
            return Err(Error::Config(format!("bad grid range {lo}:{hi}")));
        }
        Ok(Self { lo, hi, count })
    }

    /// Parse "lo:hi:count".
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Config(format!(
                "grid '{text}' must have the form lo:hi:count"
            )));
        }
        let lo: f64 = parts[0]
            .parse()
            .map_err(|_| Error::Config(format!("bad grid bound '{}'", parts[0])))?;
        let hi: f64 = parts[1]
            .parse()
            .map_err(|_| Error::Config(format!("bad grid bound '{}'", parts[1])))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| Error::Config(format!("bad grid count '{}'", parts[2])))?;
        Self::new(lo, hi, count)
    }

    /// Grid points, endpoints included.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.lo + step * i as f64).collect()
    }
}

/// Shared experiment configuration; each driver reads the fields it needs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub rep: RepChoice,
    pub seed: u64,
    pub trials: u64,
    /// Weak-measurement strength.
    pub epsilon: f64,
    /// Number of measurement steps N (2^N Kraus operators).
    pub steps: u32,
    /// Coefficient range for sampled complexified group elements.
    pub cfo_scale: f64,
    /// Weights to sweep (doubled, so half-integers stay exact); `None` means
    /// every m >= 0 the spin admits.
    pub m_values: Option<Vec<i32>>,
    pub alpha_grid: GridSpec,
    pub eta_grid: GridSpec,
    /// Rayon worker count; 0 delegates to the global default.
    pub workers: usize,
}

impl ExperimentConfig {
    pub fn new(rep: RepChoice, seed: u64) -> Self {
        Self {
            rep,
            seed,
            trials: 150,
            epsilon: 0.02,
            steps: 5,
            cfo_scale: 0.5,
            m_values: None,
            alpha_grid: GridSpec { lo: -2.0, hi: 2.0, count: 41 },
            eta_grid: GridSpec { lo: 0.0, hi: 3.0, count: 61 },
            workers: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::Config(format!("epsilon must be >= 0, got {}", self.epsilon)));
        }
        if self.steps == 0 {
            return Err(Error::Config("steps must be positive".into()));
        }
        if !(self.cfo_scale >= 0.0) {
            return Err(Error::Config("cfo_scale must be >= 0".into()));
        }
        Ok(())
    }

    /// The nonnegative weights (doubled) this run sweeps: the explicit list,
    /// or every m >= 0 the spin admits.
    pub fn weights_for_su2(&self, two_s: u32) -> Result<Vec<i32>> {
        match &self.m_values {
            Some(values) => {
                for &two_m in values {
                    if two_m < 0 || two_m as u32 > two_s || (two_s as i32 - two_m) % 2 != 0 {
                        return Err(Error::Config(format!(
                            "weight 2m = {two_m} invalid for 2s = {two_s}"
                        )));
                    }
                }
                Ok(values.clone())
            }
            None => {
                let start = (two_s % 2) as i32;
                Ok((start..=two_s as i32).step_by(2).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing_and_points() {
        let grid = GridSpec::parse("-2:2:41").unwrap();
        assert_eq!(grid.count, 41);
        let points = grid.points();
        assert_eq!(points.len(), 41);
        assert!((points[0] - (-2.0)).abs() < 1e-15);
        assert!((points[40] - 2.0).abs() < 1e-15);
        assert!((points[20]).abs() < 1e-15);

        assert!(GridSpec::parse("0:3").is_err());
        assert!(GridSpec::parse("3:0:5").is_err());
        assert!(GridSpec::parse("0:3:0").is_err());
        let single = GridSpec::parse("1.5:1.5:1").unwrap();
        assert_eq!(single.points(), vec![1.5]);
    }

    #[test]
    fn default_weights_cover_zero_to_s() {
        let cfg = ExperimentConfig::new(RepChoice::Su2 { two_s: 10 }, 1);
        assert_eq!(cfg.weights_for_su2(10).unwrap(), vec![0, 2, 4, 6, 8, 10]);
        // Half-integer spin: 1/2, 3/2, 5/2.
        assert_eq!(cfg.weights_for_su2(5).unwrap(), vec![1, 3, 5]);
    }

    #[test]
    fn explicit_weights_validated() {
        let mut cfg = ExperimentConfig::new(RepChoice::Su2 { two_s: 10 }, 1);
        cfg.m_values = Some(vec![0, 2, 6, 10]);
        assert!(cfg.weights_for_su2(10).is_ok());
        cfg.m_values = Some(vec![1]);
        assert!(cfg.weights_for_su2(10).is_err()); // parity
        cfg.m_values = Some(vec![-2]);
        assert!(cfg.weights_for_su2(10).is_err()); // sign
    }
}
