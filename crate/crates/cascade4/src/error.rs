use std::fmt;

use thiserror::Error;

/// Per-entry validation failures of a closed-form rotation matrix.
///
/// Each record is `(row, col, defect)` in 1-based matrix indices; the defect
/// is how far the offending entry pushed the orthogonality or diagonalization
/// residual past tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct FormulaReport {
    pub photon_index: u32,
    pub entries: Vec<(usize, usize, f64)>,
}

impl fmt::Display for FormulaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n = {}:", self.photon_index)?;
        for (i, j, defect) in &self.entries {
            write!(f, " ({i},{j}) residual {defect:.3e};")?;
        }
        Ok(())
    }
}

/// Errors reported by the simulation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max asymmetry {defect:.3e} exceeds {tol:.3e}")]
    NonHermitianInput { defect: f64, tol: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")]
    ConvergenceFailure { sweeps: usize, off: f64 },

    #[error("time grid is empty")]
    EmptyGrid,

    #[error("time grid must start at 0 and be strictly increasing")]
    InvalidGrid,

    #[error("adaptive integrator failed near t = {t:.6}: {reason}")]
    IntegratorFailure { t: f64, reason: String },

    #[error("invalid photon sector: {0}")]
    InvalidSector(String),

    #[error("sector n = 0 has no fourth basis state; its amplitude must be exactly 0")]
    NonPhysicalState,

    #[error("inverse-trig argument {value} lies outside [-1, 1] beyond tolerance")]
    DomainError { value: f64 },

    #[error("dressed rotation failed validation at {0}")]
    FormulaInconsistency(FormulaReport),

    #[error("tail tolerance must lie in (1e-16, 0.5), got {0}")]
    InvalidTolerance(f64),

    #[error("mean photon number must be nonnegative and finite, got {0}")]
    InvalidMeanPhotonNumber(f64),

    #[error("trace covers [0, {covered:.4}] but revival analysis needs at least [0, {needed:.4}]")]
    GridTooShort { covered: f64, needed: f64 },

    #[error("case {case} is not defined for the {model} model")]
    IncompatibleCase { case: String, model: String },
}
