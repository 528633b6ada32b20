use serde::{Deserialize, Serialize};

use crate::dependent::{BoundsReport, SnappedT};

use super::config::ExperimentConfig;
use super::stats::{SampleSummary, Side};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not decidable at these parameters (out of regime, heuristic solver,
    /// unspecified constant); reported but never counted as a failure.
    Flagged,
}

/// One empirical quantity compared with its analytic counterpart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub equation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analytic: Option<f64>,
    pub empirical: f64,
    /// Statistical slack applied in the comparison.
    pub tolerance: f64,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: &str, equation: &str, analytic: Option<f64>, empirical: f64, tolerance: f64) -> Self {
        Check {
            name: name.to_owned(),
            equation: equation.to_owned(),
            analytic,
            empirical,
            tolerance,
            status: CheckStatus::Pass,
            note: None,
        }
    }

    pub fn status(mut self, status: CheckStatus) -> Self {
        self.status = status;
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailEntry {
    pub statistic: String,
    pub threshold: f64,
    pub side: Side,
    pub frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub config: ExperimentConfig,
    pub rng_algorithm: String,
    /// Segment size actually used, when `X_t` was computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segment: Option<SnappedT>,
    /// Moments of the primary statistic (`R_n` or `T_n`).
    pub sample_mean: f64,
    pub sample_variance: f64,
    pub standard_error: f64,
    pub statistics: Vec<SampleSummary>,
    pub empirical_tail: Vec<TailEntry>,
    pub bound_values: BoundsReport,
    pub checks: Vec<Check>,
}

impl ExperimentReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn statistic(&self, name: &str) -> Option<&SampleSummary> {
        self.statistics.iter().find(|s| s.statistic == name)
    }
}

/// Reports for several values of `n` under otherwise identical settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub reports: Vec<ExperimentReport>,
}

impl SweepReport {
    pub fn new(reports: Vec<ExperimentReport>) -> Self {
        SweepReport {
            schema_version: SCHEMA_VERSION,
            reports,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(ExperimentReport::all_passed)
    }
}
