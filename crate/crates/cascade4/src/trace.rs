//! Time grids, initial-condition cases, and probability traces.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Named initial conditions: the atom starts in a single bare level.
///
/// I-IV drive the classical-field model from levels 1-4; V-VIII are the same
/// ladder of initial levels for the quantized field (and its coherent-state
/// average).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

impl CaseId {
    /// The level (1..4) that initially carries all population.
    pub fn initial_level(self) -> usize {
        match self {
            CaseId::I | CaseId::V => 1,
            CaseId::II | CaseId::VI => 2,
            CaseId::III | CaseId::VII => 3,
            CaseId::IV | CaseId::VIII => 4,
        }
    }

    /// True for cases I-IV (classical drive).
    pub fn is_semiclassical(self) -> bool {
        matches!(self, CaseId::I | CaseId::II | CaseId::III | CaseId::IV)
    }

    /// True for cases V-VIII (quantized field).
    pub fn is_quantized(self) -> bool {
        !self.is_semiclassical()
    }

    pub const ALL: [CaseId; 8] = [
        CaseId::I,
        CaseId::II,
        CaseId::III,
        CaseId::IV,
        CaseId::V,
        CaseId::VI,
        CaseId::VII,
        CaseId::VIII,
    ];
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseId::I => "I",
            CaseId::II => "II",
            CaseId::III => "III",
            CaseId::IV => "IV",
            CaseId::V => "V",
            CaseId::VI => "VI",
            CaseId::VII => "VII",
            CaseId::VIII => "VIII",
        };
        f.write_str(s)
    }
}

impl FromStr for CaseId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "I" => Ok(CaseId::I),
            "II" => Ok(CaseId::II),
            "III" => Ok(CaseId::III),
            "IV" => Ok(CaseId::IV),
            "V" => Ok(CaseId::V),
            "VI" => Ok(CaseId::VI),
            "VII" => Ok(CaseId::VII),
            "VIII" => Ok(CaseId::VIII),
            other => Err(format!("unknown case {other:?} (expected I..VIII)")),
        }
    }
}

/// A strictly increasing time grid starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
}

impl TimeGrid {
    /// `points` uniformly spaced samples on `[0, t_max]`.
    pub fn uniform(t_max: f64, points: usize) -> Result<Self, Error> {
        if points == 0 {
            return Err(Error::EmptyGrid);
        }
        if points < 2 || !(t_max > 0.0) {
            return Err(Error::InvalidGrid);
        }
        let dt = t_max / (points - 1) as f64;
        let times = (0..points)
            .map(|k| {
                if k + 1 == points {
                    t_max
                } else {
                    k as f64 * dt
                }
            })
            .collect();
        Ok(Self { times })
    }

    /// Wrap an explicit list of sample times.
    pub fn from_times(times: Vec<f64>) -> Result<Self, Error> {
        if times.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if times[0] != 0.0
            || !times.iter().all(|t| t.is_finite())
            || times.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(Error::InvalidGrid);
        }
        Ok(Self { times })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> f64 {
        *self.times.last().unwrap()
    }
}

/// Level populations sampled over a time grid.
///
/// `p[i]` holds the population of level `i + 1`; rows sum to 1 for unitary
/// evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTrace {
    pub times: Vec<f64>,
    pub p: [Vec<f64>; 4],
}

impl ProbabilityTrace {
    pub(crate) fn with_capacity(n: usize) -> Self {
        Self {
            times: Vec::with_capacity(n),
            p: std::array::from_fn(|_| Vec::with_capacity(n)),
        }
    }

    pub(crate) fn push(&mut self, t: f64, probs: [f64; 4]) {
        self.times.push(t);
        for (series, value) in self.p.iter_mut().zip(probs) {
            series.push(value);
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Population series of `level` (1-based).
    pub fn level(&self, level: usize) -> &[f64] {
        assert!((1..=4).contains(&level), "level must be 1..=4, got {level}");
        &self.p[level - 1]
    }

    /// Largest deviation of `p1 + p2 + p3 + p4` from 1 across the grid.
    pub fn normalization_defect(&self) -> f64 {
        (0..self.len())
            .map(|k| (self.p[0][k] + self.p[1][k] + self.p[2][k] + self.p[3][k] - 1.0).abs())
            .fold(0.0, f64::max)
    }
}
