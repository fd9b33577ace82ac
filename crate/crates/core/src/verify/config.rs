use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::field::is_prime;

const DEFAULT_CONFIG: &str = include_str!("../../config/default.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// Field size by intrinsic dimension; the first tier with n ≤ max_dim applies.
    pub q: Vec<QTier>,
    pub trials: usize,
    /// Largest chart q^n enumerated by the secant and fiber statistics.
    pub chart_budget: u64,
    /// Term cap for symbolic identity checks.
    pub term_budget: usize,
    /// Sample count for support comparisons over F_q.
    pub support_samples: u64,
    pub output: Option<PathBuf>,
    pub thresholds: Thresholds,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QTier {
    pub max_dim: Option<usize>,
    pub q: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    /// Largest passing multi-secant fraction; the first tier with q ≤ max_q applies.
    pub multi_secant_max: Vec<ThresholdTier>,
    /// Multi-secant fraction expected at least for non-OADP controls.
    pub control_multi_secant_min: f64,
    /// Smallest passing singleton fraction of the tangential projection.
    pub singleton_min: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdTier {
    pub max_q: Option<u64>,
    pub value: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::from_json(DEFAULT_CONFIG).expect("bundled config is valid")
    }
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: RunConfig = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.q.is_empty() || self.thresholds.multi_secant_max.is_empty() {
            return Err(Error::Invalid("q and multi_secant_max need at least one tier".into()));
        }
        if let Some(t) = self.q.iter().find(|t| !is_prime(t.q)) {
            return Err(Error::NotPrime(t.q));
        }
        if self.trials == 0 || self.chart_budget == 0 || self.term_budget == 0 || self.support_samples == 0 {
            return Err(Error::Invalid("trials and budgets must be positive".into()));
        }
        let t = &self.thresholds;
        let all = t.multi_secant_max.iter().map(|x| x.value).chain([t.control_multi_secant_min, t.singleton_min]);
        for v in all {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Invalid(format!("threshold {v} outside [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn q_for_dim(&self, n: usize) -> u64 {
        self.q.iter().find(|t| t.max_dim.is_none_or(|m| n <= m)).unwrap_or(self.q.last().expect("nonempty")).q
    }

    pub fn multi_secant_max(&self, q: u64) -> f64 {
        let tiers = &self.thresholds.multi_secant_max;
        tiers.iter().find(|t| t.max_q.is_none_or(|m| q <= m)).unwrap_or(tiers.last().expect("nonempty")).value
    }
}
