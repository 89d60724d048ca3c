//! Coherent-state averaging over photon sectors.
//!
//! A coherent field of mean photon number `nbar` weights each sector by the
//! Poisson factor `w_n = exp(-nbar) nbar^n / n!`. Averaging the sector
//! populations with these weights dephases the many incommensurate Rabi
//! frequencies, collapsing the oscillation, and partially rephases it later:
//! the revival near `t = 2 pi sqrt(nbar) / g`.

use crate::error::Error;
use crate::quantized::{sector_probability_trace, SectorParams};
use crate::trace::{CaseId, ProbabilityTrace, TimeGrid};

/// How sector weights attach to the sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightingMode {
    /// Weight `w_n` multiplies sector `n` for every case.
    Paper,
    /// Weight indexed by the photon content of the initial state: a case
    /// starting in level `l` of sector `n` carries `w_{n + 3 - l}`.
    Physical,
}

impl WeightingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightingMode::Paper => "paper",
            WeightingMode::Physical => "physical",
        }
    }
}

/// Options for [`coherent_probability_trace_with`].
#[derive(Debug, Clone, Copy)]
pub struct CoherentOptions {
    pub weighting: WeightingMode,
    /// Divide the averaged series by the total applied weight.
    pub renormalize: bool,
}

impl Default for CoherentOptions {
    fn default() -> Self {
        Self {
            weighting: WeightingMode::Paper,
            renormalize: false,
        }
    }
}

/// A truncated Poisson weight table.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentField {
    /// Mean photon number.
    pub nbar: f64,
    /// Tail tolerance used for truncation.
    pub epsilon: f64,
    /// Largest photon index kept; `weights.len() == n_max + 1`.
    pub n_max: u32,
    weights: Vec<f64>,
}

impl CoherentField {
    /// Weight of photon number `n`, 0 beyond the table.
    pub fn weight(&self, n: u32) -> f64 {
        self.weights.get(n as usize).copied().unwrap_or(0.0)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Compensated sum of the table.
    pub fn total_weight(&self) -> f64 {
        let mut sum = NeumaierSum::default();
        for &w in &self.weights {
            sum.add(w);
        }
        sum.value()
    }
}

/// Build the Poisson weight table for mean photon number `nbar`, truncated
/// at the smallest `n_max` whose partial sum reaches `1 - epsilon`.
///
/// Weights are evaluated in log space (`n ln nbar - ln n!` with the
/// log-factorial accumulated as a running sum), so large `nbar` neither
/// overflows nor underflows term by term.
pub fn poisson_weights(nbar: f64, epsilon: f64) -> Result<CoherentField, Error> {
    if !(epsilon > 1e-16 && epsilon < 0.5) {
        return Err(Error::InvalidTolerance(epsilon));
    }
    if !(nbar >= 0.0) || !nbar.is_finite() {
        return Err(Error::InvalidMeanPhotonNumber(nbar));
    }
    if nbar == 0.0 {
        return Ok(CoherentField {
            nbar,
            epsilon,
            n_max: 0,
            weights: vec![1.0],
        });
    }
    let log_nbar = nbar.ln();
    let mut log_factorial = 0.0_f64;
    let mut weights = Vec::new();
    let mut cumulative = NeumaierSum::default();
    let mut n = 0_u64;
    loop {
        if n > 0 {
            log_factorial += (n as f64).ln();
        }
        let w = (-nbar + n as f64 * log_nbar - log_factorial).exp();
        weights.push(w);
        cumulative.add(w);
        if cumulative.value() >= 1.0 - epsilon {
            break;
        }
        n += 1;
    }
    Ok(CoherentField {
        nbar,
        epsilon,
        n_max: (weights.len() - 1) as u32,
        weights,
    })
}

/// Metadata describing how an averaged trace was produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentMeta {
    pub nbar: f64,
    pub epsilon: f64,
    pub n_max: u32,
    pub g: f64,
    pub weighting: WeightingMode,
    /// Table weight that could not be attached to a valid sector (the
    /// missing `|n-1, 4>` state at n = 0, or shifted indices that fall
    /// outside the table in physical weighting).
    pub skipped_weight: f64,
    pub renormalized: bool,
}

/// Sector-averaged populations with their provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct AveragedTrace {
    pub trace: ProbabilityTrace,
    pub meta: CoherentMeta,
}

/// Paper-order weighting, no renormalization; see
/// [`coherent_probability_trace_with`].
pub fn coherent_probability_trace(
    case: CaseId,
    field: &CoherentField,
    g: f64,
    grid: &TimeGrid,
) -> Result<AveragedTrace, Error> {
    coherent_probability_trace_with(case, field, g, grid, CoherentOptions::default())
}

/// Average the sector populations of `case` over the coherent weight table.
///
/// Sectors are accumulated in increasing `n` with compensated summation, so
/// the result is bit-identical from run to run. Invalid sector terms (case
/// VIII has no fourth state at n = 0) are skipped and their weight recorded
/// in the metadata.
pub fn coherent_probability_trace_with(
    case: CaseId,
    field: &CoherentField,
    g: f64,
    grid: &TimeGrid,
    options: CoherentOptions,
) -> Result<AveragedTrace, Error> {
    if !case.is_quantized() {
        return Err(Error::IncompatibleCase {
            case: case.to_string(),
            model: "coherent".into(),
        });
    }
    let npts = grid.len();
    let mut sums: [Vec<NeumaierSum>; 4] =
        std::array::from_fn(|_| vec![NeumaierSum::default(); npts]);
    let mut applied = NeumaierSum::default();
    let mut skipped = NeumaierSum::default();

    // in physical weighting, sector n carries the weight of its initial
    // photon content n + 3 - level
    let level_shift = 3_i64 - case.initial_level() as i64;

    for table_index in 0..=field.n_max {
        let w = field.weight(table_index);
        let sector = match options.weighting {
            WeightingMode::Paper => Some(table_index),
            WeightingMode::Physical => {
                let s = table_index as i64 - level_shift;
                if s < 0 {
                    None
                } else {
                    Some(s as u32)
                }
            }
        };
        let Some(n) = sector else {
            skipped.add(w);
            continue;
        };
        if case == CaseId::VIII && n == 0 {
            skipped.add(w);
            continue;
        }
        let params = SectorParams::resonant(n, g);
        let sector_trace = sector_probability_trace(case, &params, grid)?;
        for level in 0..4 {
            for (slot, &p) in sums[level].iter_mut().zip(&sector_trace.p[level]) {
                slot.add(w * p);
            }
        }
        applied.add(w);
    }

    let scale = if options.renormalize {
        1.0 / applied.value()
    } else {
        1.0
    };
    let trace = ProbabilityTrace {
        times: grid.times().to_vec(),
        p: std::array::from_fn(|level| {
            sums[level].iter().map(|s| s.value() * scale).collect()
        }),
    };
    Ok(AveragedTrace {
        trace,
        meta: CoherentMeta {
            nbar: field.nbar,
            epsilon: field.epsilon,
            n_max: field.n_max,
            g,
            weighting: options.weighting,
            skipped_weight: skipped.value(),
            renormalized: options.renormalize,
        },
    })
}

/// Where the revival is expected: `2 pi sqrt(nbar) / g`.
pub fn revival_time_estimate(nbar: f64, g: f64) -> f64 {
    2.0 * std::f64::consts::PI * nbar.sqrt() / g
}

/// Collapse-and-revival summary extracted from an averaged trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseRevival {
    /// Smallest envelope over the middle third of the pre-revival window.
    pub collapse_floor: f64,
    /// Location of the envelope maximum after the collapse window.
    pub revival_peak_time: f64,
    /// Envelope value at that maximum.
    pub revival_amplitude: f64,
}

/// Quantify collapse and revival of one level's averaged population.
///
/// The oscillation envelope is the sliding-window max minus min of the
/// de-meaned series; the window half-width is one fast Rabi period
/// `pi / (g sqrt(nbar))`. The collapse floor is the envelope minimum over
/// the middle third of `[0, t_r]` with `t_r = 2 pi sqrt(nbar) / g`, and the
/// revival is the envelope maximum at times past that window.
///
/// The trace must cover at least `[0, 1.5 t_r]`. *Panics* if `level` is not
/// in `1..=4` or the trace metadata has `nbar <= 0` or `g <= 0`.
pub fn collapse_revival_metrics(
    trace: &AveragedTrace,
    level: usize,
) -> Result<CollapseRevival, Error> {
    assert!((1..=4).contains(&level), "level must be 1..=4, got {level}");
    let nbar = trace.meta.nbar;
    let g = trace.meta.g;
    assert!(
        nbar > 0.0 && g > 0.0,
        "revival analysis needs nbar > 0 and g > 0"
    );
    let times = &trace.trace.times;
    let t_r = revival_time_estimate(nbar, g);
    let covered = *times.last().unwrap_or(&0.0);
    if times.len() < 2 || covered < 1.5 * t_r {
        return Err(Error::GridTooShort {
            covered,
            needed: 1.5 * t_r,
        });
    }

    let series = &trace.trace.p[level - 1];
    let mean = series.iter().sum::<f64>() / series.len() as f64;
    let s: Vec<f64> = series.iter().map(|p| p - mean).collect();

    let dt = times[1] - times[0];
    let fast_period = std::f64::consts::PI / (g * nbar.sqrt());
    let half_width = ((fast_period / dt).round() as usize).max(1);

    let envelope: Vec<f64> = (0..s.len())
        .map(|i| {
            let lo = i.saturating_sub(half_width);
            let hi = (i + half_width + 1).min(s.len());
            let window = &s[lo..hi];
            let max = window.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
            let min = window.iter().fold(f64::INFINITY, |a, &b| a.min(b));
            max - min
        })
        .collect();

    let mut collapse_floor = f64::INFINITY;
    for (i, &t) in times.iter().enumerate() {
        if t >= t_r / 3.0 && t <= 2.0 * t_r / 3.0 {
            collapse_floor = collapse_floor.min(envelope[i]);
        }
    }
    if !collapse_floor.is_finite() {
        return Err(Error::GridTooShort {
            covered,
            needed: 1.5 * t_r,
        });
    }

    let mut revival_peak_time = covered;
    let mut revival_amplitude = f64::NEG_INFINITY;
    for (i, &t) in times.iter().enumerate() {
        if t > 2.0 * t_r / 3.0 && envelope[i] > revival_amplitude {
            revival_amplitude = envelope[i];
            revival_peak_time = t;
        }
    }
    Ok(CollapseRevival {
        collapse_floor,
        revival_peak_time,
        revival_amplitude,
    })
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}
