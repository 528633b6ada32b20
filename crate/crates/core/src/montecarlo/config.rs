use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rng::Seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rainbow,
    Dependent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Exact,
    Greedy,
    Lis,
}

/// Segment size: an explicit `t`, or `sqrt` for `round(sqrt(n))` snapped to
/// the nearest `t` with integral `k t / n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentSize {
    Fixed(usize),
    Sqrt,
}

impl FromStr for SegmentSize {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("sqrt") {
            return Ok(SegmentSize::Sqrt);
        }
        match s.parse::<usize>() {
            Ok(t) if t >= 1 => Ok(SegmentSize::Fixed(t)),
            _ => Err(format!("expected a positive integer or `sqrt`, got `{s}`")),
        }
    }
}

impl fmt::Display for SegmentSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SegmentSize::Fixed(t) => write!(f, "{t}"),
            SegmentSize::Sqrt => f.write_str("sqrt"),
        }
    }
}

impl Serialize for SegmentSize {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SegmentSize::Fixed(t) => ser.serialize_u64(*t as u64),
            SegmentSize::Sqrt => ser.serialize_str("sqrt"),
        }
    }
}

impl<'de> Deserialize<'de> for SegmentSize {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(usize),
            Text(String),
        }
        match Repr::deserialize(de)? {
            Repr::Num(t) if t >= 1 => Ok(SegmentSize::Fixed(t)),
            Repr::Num(t) => Err(serde::de::Error::custom(format!("segment size {t} < 1"))),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// One experiment: a model, its size parameters, and how many seeded trials to run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<SegmentSize>,
    pub trials: usize,
    pub seed: Seed,
    pub eps: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    pub solver: Solver,
}

pub const DEFAULT_EPS: f64 = 0.1;

impl ExperimentConfig {
    /// Rainbow experiment with `r` colours.
    pub fn rainbow(n: usize, r: u32, trials: usize, seed: u64, solver: Solver) -> Self {
        ExperimentConfig {
            mode: Mode::Rainbow,
            n,
            k: None,
            r: Some(r),
            alpha: None,
            t: None,
            trials,
            seed: Seed(seed),
            eps: DEFAULT_EPS,
            b: None,
            solver,
        }
    }

    /// Rainbow experiment with `r = round(alpha n)` colours.
    pub fn rainbow_alpha(n: usize, alpha: f64, trials: usize, seed: u64, solver: Solver) -> Self {
        ExperimentConfig {
            r: None,
            alpha: Some(alpha),
            ..Self::rainbow(n, 1, trials, seed, solver)
        }
    }

    pub fn dependent(n: usize, k: usize, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            mode: Mode::Dependent,
            n,
            k: Some(k),
            r: None,
            alpha: None,
            t: None,
            trials,
            seed: Seed(seed),
            eps: DEFAULT_EPS,
            b: None,
            solver: Solver::Lis,
        }
    }

    pub fn with_t(mut self, t: SegmentSize) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_b(mut self, b: f64) -> Self {
        self.b = Some(b);
        self
    }

    /// Colour count for rainbow runs: `r`, or `round(alpha n)`.
    pub fn colours(&self) -> Result<u32> {
        match (self.r, self.alpha) {
            (Some(r), None) => Ok(r),
            (None, Some(alpha)) => {
                let r = (alpha * self.n as f64).round();
                if !(r >= 1.0 && r <= u32::MAX as f64) {
                    return Err(Error::invalid(format!("alpha={alpha} gives r={r} at n={}", self.n)));
                }
                Ok(r as u32)
            }
            (Some(_), Some(_)) => Err(Error::invalid("give either r or alpha, not both")),
            (None, None) => Err(Error::invalid("rainbow runs need r or alpha")),
        }
    }

    /// Colour density `r / n` actually used.
    pub fn density(&self) -> Result<f64> {
        Ok(self.colours()? as f64 / self.n as f64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("n must be >= 1"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials must be >= 1"));
        }
        if !self.eps.is_finite() || self.eps < 0.0 {
            return Err(Error::invalid(format!("eps={} must be finite and >= 0", self.eps)));
        }
        match self.mode {
            Mode::Rainbow => {
                if self.k.is_some() || self.t.is_some() || self.b.is_some() {
                    return Err(Error::invalid("k, t and b apply to dependent runs only"));
                }
                if self.solver == Solver::Lis {
                    return Err(Error::invalid("rainbow runs use the exact or greedy solver"));
                }
                self.colours()?;
            }
            Mode::Dependent => {
                if self.r.is_some() || self.alpha.is_some() {
                    return Err(Error::invalid("r and alpha apply to rainbow runs only"));
                }
                if self.solver != Solver::Lis {
                    return Err(Error::invalid("dependent runs use the lis solver"));
                }
                match self.k {
                    Some(k) if k >= self.n => {}
                    Some(k) => return Err(Error::invalid(format!("dependent runs need k >= n (k={k}, n={})", self.n))),
                    None => return Err(Error::invalid("dependent runs need k")),
                }
                if let Some(SegmentSize::Fixed(t)) = self.t {
                    if t > self.n {
                        return Err(Error::invalid(format!("t={t} exceeds n={}", self.n)));
                    }
                }
                if let Some(b) = self.b {
                    if !b.is_finite() {
                        return Err(Error::invalid("b must be finite"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_size_parsing() {
        assert_eq!("sqrt".parse::<SegmentSize>().unwrap(), SegmentSize::Sqrt);
        assert_eq!("12".parse::<SegmentSize>().unwrap(), SegmentSize::Fixed(12));
        assert!("0".parse::<SegmentSize>().is_err());
        assert!("x".parse::<SegmentSize>().is_err());
    }

    #[test]
    fn segment_size_json() {
        let json = serde_json::to_string(&[SegmentSize::Sqrt, SegmentSize::Fixed(4)]).unwrap();
        assert_eq!(json, r#"["sqrt",4]"#);
        let back: Vec<SegmentSize> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![SegmentSize::Sqrt, SegmentSize::Fixed(4)]);
    }

    #[test]
    fn colours_from_alpha() {
        let c = ExperimentConfig::rainbow_alpha(8, 1.0, 10, 1, Solver::Exact);
        assert_eq!(c.colours().unwrap(), 8);
        let c = ExperimentConfig::rainbow_alpha(10, 0.25, 10, 1, Solver::Exact);
        assert_eq!(c.colours().unwrap(), 3);
    }

    #[test]
    fn validation() {
        assert!(ExperimentConfig::dependent(10, 9, 5, 0).validate().is_err());
        assert!(ExperimentConfig::dependent(10, 10, 0, 0).validate().is_err());
        assert!(ExperimentConfig::dependent(10, 10, 5, 0).validate().is_ok());
        let mut c = ExperimentConfig::rainbow(5, 5, 5, 0, Solver::Exact);
        assert!(c.validate().is_ok());
        c.k = Some(5);
        assert!(c.validate().is_err());
        let both = ExperimentConfig { alpha: Some(1.0), ..ExperimentConfig::rainbow(5, 5, 5, 0, Solver::Exact) };
        assert!(both.validate().is_err());
        assert!(ExperimentConfig::rainbow(5, 5, 5, 0, Solver::Lis).validate().is_err());
    }
}
