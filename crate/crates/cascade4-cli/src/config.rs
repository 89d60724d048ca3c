//! Run configuration: defaults, optional key=value config file, and flag
//! precedence (flags beat the file, the file beats built-in defaults).

use std::fmt;
use std::path::PathBuf;

use cascade4::trace::CaseId;

/// A configuration error that exits with status 2, naming the field.
#[derive(Debug)]
pub struct ConfigError {
    pub field: &'static str,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: &'static str, message: impl Into<String>) -> Self {
        Self {
            field,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid `{}`: {}", self.field, self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Model {
    Semiclassical,
    Quantized,
    Coherent,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Semiclassical => "semiclassical",
            Model::Quantized => "quantized",
            Model::Coherent => "coherent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Weighting {
    Paper,
    Physical,
}

/// Flag values as given on the command line (None = not given).
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    pub case: Option<String>,
    pub kappa: Option<f64>,
    pub g: Option<f64>,
    pub delta: Option<f64>,
    pub n: Option<u32>,
    pub nbar: Option<f64>,
    pub epsilon: Option<f64>,
    pub tmax: Option<f64>,
    pub steps: Option<usize>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub weighting_mode: Option<Weighting>,
}

impl RawConfig {
    /// Fill in any unset field from `other` (lower precedence).
    fn or(self, other: RawConfig) -> RawConfig {
        RawConfig {
            case: self.case.or(other.case),
            kappa: self.kappa.or(other.kappa),
            g: self.g.or(other.g),
            delta: self.delta.or(other.delta),
            n: self.n.or(other.n),
            nbar: self.nbar.or(other.nbar),
            epsilon: self.epsilon.or(other.epsilon),
            tmax: self.tmax.or(other.tmax),
            steps: self.steps.or(other.steps),
            format: self.format.or(other.format),
            output: self.output.or(other.output),
            weighting_mode: self.weighting_mode.or(other.weighting_mode),
        }
    }
}

/// Parse a `key = value` config file (one pair per line, `#` comments).
pub fn parse_config_file(path: &PathBuf) -> Result<RawConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::new("config", format!("cannot read {}: {e}", path.display())))?;
    let mut raw = RawConfig::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::new(
                "config",
                format!("line {}: expected `key = value`", lineno + 1),
            ));
        };
        let key = key.trim();
        let value = value.trim();
        let parse_f64 = |field: &'static str| -> Result<f64, ConfigError> {
            value
                .parse()
                .map_err(|_| ConfigError::new(field, format!("{value:?} is not a number")))
        };
        match key {
            "case" => raw.case = Some(value.to_string()),
            "kappa" => raw.kappa = Some(parse_f64("kappa")?),
            "g" => raw.g = Some(parse_f64("g")?),
            "delta" => raw.delta = Some(parse_f64("delta")?),
            "n" => {
                raw.n = Some(value.parse().map_err(|_| {
                    ConfigError::new("n", format!("{value:?} is not a nonnegative integer"))
                })?)
            }
            "nbar" => raw.nbar = Some(parse_f64("nbar")?),
            "epsilon" => raw.epsilon = Some(parse_f64("epsilon")?),
            "tmax" => raw.tmax = Some(parse_f64("tmax")?),
            "steps" => {
                raw.steps = Some(value.parse().map_err(|_| {
                    ConfigError::new("steps", format!("{value:?} is not an integer"))
                })?)
            }
            "format" => {
                raw.format = Some(match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    other => {
                        return Err(ConfigError::new(
                            "format",
                            format!("{other:?} is not csv or json"),
                        ))
                    }
                })
            }
            "output" => raw.output = Some(PathBuf::from(value)),
            "weighting-mode" => {
                raw.weighting_mode = Some(match value {
                    "paper" => Weighting::Paper,
                    "physical" => Weighting::Physical,
                    other => {
                        return Err(ConfigError::new(
                            "weighting-mode",
                            format!("{other:?} is not paper or physical"),
                        ))
                    }
                })
            }
            other => {
                return Err(ConfigError::new(
                    "config",
                    format!("line {}: unknown key {other:?}", lineno + 1),
                ));
            }
        }
    }
    Ok(raw)
}

/// A fully validated simulation run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: Model,
    pub case: CaseId,
    pub kappa: f64,
    pub g: f64,
    pub delta: f64,
    pub n: u32,
    pub nbar: f64,
    pub epsilon: f64,
    pub tmax: f64,
    pub steps: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub weighting_mode: Weighting,
}

/// Merge flags over the optional config file, apply defaults, and validate.
pub fn resolve(
    model: Model,
    flags: RawConfig,
    config_file: Option<&PathBuf>,
) -> Result<RunConfig, ConfigError> {
    let base = match config_file {
        Some(path) => parse_config_file(path)?,
        None => RawConfig::default(),
    };
    let raw = flags.or(base);

    let case_str = raw
        .case
        .ok_or_else(|| ConfigError::new("case", "required (I..IV or V..VIII)"))?;
    let case: CaseId = case_str
        .parse()
        .map_err(|e: String| ConfigError::new("case", e))?;

    let kappa = raw.kappa.unwrap_or(1.0);
    let g = raw.g.unwrap_or(1.0);
    let delta = raw.delta.unwrap_or(0.0);
    let n = raw.n.unwrap_or(1);
    let nbar = raw.nbar.unwrap_or(48.0);
    let epsilon = raw.epsilon.unwrap_or(1e-8);

    match model {
        Model::Semiclassical => {
            if !case.is_semiclassical() {
                return Err(ConfigError::new(
                    "case",
                    format!("case {case} needs the quantized or coherent model; the semiclassical model takes I..IV"),
                ));
            }
            if !(kappa > 0.0) || !kappa.is_finite() {
                return Err(ConfigError::new("kappa", "coupling must be positive"));
            }
        }
        Model::Quantized | Model::Coherent => {
            if !case.is_quantized() {
                return Err(ConfigError::new(
                    "case",
                    format!("case {case} needs the semiclassical model; the {} model takes V..VIII", model.as_str()),
                ));
            }
            if !(g > 0.0) || !g.is_finite() {
                return Err(ConfigError::new("g", "coupling must be positive"));
            }
        }
    }
    if model == Model::Quantized && case == CaseId::VIII && n == 0 {
        return Err(ConfigError::new(
            "n",
            "sector n = 0 has no |n-1, 4> state, so case VIII is undefined there",
        ));
    }
    if model == Model::Coherent {
        if !(nbar >= 0.0) || !nbar.is_finite() {
            return Err(ConfigError::new("nbar", "mean photon number must be nonnegative"));
        }
        if !(epsilon > 1e-16 && epsilon < 0.5) {
            return Err(ConfigError::new("epsilon", "tail tolerance must lie in (1e-16, 0.5)"));
        }
    }
    if !delta.is_finite() {
        return Err(ConfigError::new("delta", "detuning must be finite"));
    }

    let coupling = if model == Model::Semiclassical { kappa } else { g };
    let tmax = raw.tmax.unwrap_or_else(|| match model {
        Model::Coherent => 3.0 * cascade4::coherent::revival_time_estimate(nbar, g),
        _ => 4.0 * std::f64::consts::PI / coupling,
    });
    if !(tmax > 0.0) || !tmax.is_finite() {
        return Err(ConfigError::new("tmax", "time range must be positive"));
    }
    let steps = raw.steps.unwrap_or(match model {
        Model::Coherent => 4001,
        _ => 2001,
    });
    if steps < 2 {
        return Err(ConfigError::new("steps", "need at least 2 grid points"));
    }

    Ok(RunConfig {
        model,
        case,
        kappa,
        g,
        delta,
        n,
        nbar,
        epsilon,
        tmax,
        steps,
        format: raw.format.unwrap_or(Format::Csv),
        output: raw.output,
        weighting_mode: raw.weighting_mode.unwrap_or(Weighting::Paper),
    })
}
