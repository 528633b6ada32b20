use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Moments of one statistic over all trials, accumulated in trial order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub statistic: String,
    pub trials: usize,
    pub mean: f64,
    /// Unbiased sample variance; zero for a single trial.
    pub variance: f64,
    /// Standard error of the mean.
    pub standard_error: f64,
    /// Standard error of the sample variance (fourth-moment estimate).
    pub variance_standard_error: f64,
    pub min: f64,
    pub max: f64,
}

impl SampleSummary {
    pub fn from_samples(statistic: &str, samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid("summary of an empty sample"));
        }
        let count = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / count;
        let (mut m2, mut m4) = (0.0, 0.0);
        for &x in samples {
            let d = x - mean;
            m2 += d * d;
            m4 += d * d * d * d;
        }
        let variance = if samples.len() > 1 { m2 / (count - 1.0) } else { 0.0 };
        let variance_standard_error = if samples.len() > 3 {
            let central4 = m4 / count;
            let spread = central4 - variance * variance * (count - 3.0) / (count - 1.0);
            (spread.max(0.0) / count).sqrt()
        } else {
            0.0
        };
        Ok(SampleSummary {
            statistic: statistic.to_owned(),
            trials: samples.len(),
            mean,
            variance,
            standard_error: (variance / count).sqrt(),
            variance_standard_error,
            min: samples.iter().copied().fold(f64::INFINITY, f64::min),
            max: samples.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

/// Which side of a threshold counts as "in the tail".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "<")]
    Below,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = ">")]
    Above,
}

impl Side {
    pub fn holds(self, x: f64, threshold: f64) -> bool {
        match self {
            Side::AtMost => x <= threshold,
            Side::Below => x < threshold,
            Side::AtLeast => x >= threshold,
            Side::Above => x > threshold,
        }
    }
}

/// Fraction of samples on `side` of `threshold`.
pub fn empirical_tail(samples: &[f64], threshold: f64, side: Side) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::invalid("empirical tail of an empty sample"));
    }
    let hits = samples.iter().filter(|&&x| side.holds(x, threshold)).count();
    Ok(hits as f64 / samples.len() as f64)
}

/// Binomial standard error of a frequency estimate around `p` from `trials` draws.
pub fn frequency_standard_error(p: f64, trials: usize) -> f64 {
    (p * (1.0 - p) / trials as f64).max(0.0).sqrt()
}
