//! Exact Rabi dynamics of an equidistant cascade four-level atom.
//!
//! The atom is a four-level ladder with equal spacing, nearest-neighbour
//! dipole couplings, and the spin-3/2 algebra underneath. Three drive models
//! are covered:
//!
//! * **semiclassical** — classical monochromatic field; the rotating frame
//!   makes the problem time-independent and, at resonance, solvable by a
//!   fixed six-angle rotation ([`semiclassical`]);
//! * **quantized** — single cavity mode in a number state; the dynamics
//!   split into 4x4 excitation sectors with closed-form dressed spectra and
//!   rotations ([`quantized`]);
//! * **coherent** — cavity mode in a coherent state; Poisson-weighted sector
//!   averages produce collapse and revival of the oscillation
//!   ([`coherent`]).
//!
//! Vectors and matrices are indexed in *level order*: index `i` refers to
//! level `i + 1` of the ladder. Planck's constant is 1 throughout, so
//! Hamiltonian entries are angular frequencies and times are in units of the
//! inverse coupling (`1/kappa` for the classical drive, `1/g` for the
//! quantized one).
//!
//! ```
//! use cascade4::prelude::*;
//!
//! // populations after a quarter Rabi period, starting from level 1
//! let params = SemiclassicalParams::resonant(1.0);
//! let probs = evolve_amplitudes(&Amplitudes::basis(1), &params, std::f64::consts::FRAC_PI_4)
//!     .probabilities();
//! assert!((probs[0] - 0.125).abs() < 1e-12);
//! assert!((probs[1] - 0.375).abs() < 1e-12);
//! ```

pub mod coherent;
pub mod error;
pub mod euler;
pub mod linalg;
pub mod quantized;
pub mod semiclassical;
pub mod spin;
pub mod trace;

pub use error::Error;

/// The commonly used types and operations in one import.
pub mod prelude {
    pub use crate::coherent::{
        coherent_probability_trace, coherent_probability_trace_with, collapse_revival_metrics,
        poisson_weights, revival_time_estimate, AveragedTrace, CoherentField, CoherentOptions,
        CollapseRevival, WeightingMode,
    };
    pub use crate::error::Error;
    pub use crate::euler::{angles_from_rotation, rotation_matrix, EulerAngles};
    pub use crate::linalg::{
        hermitian_eigensystem, matrix_exponential_propagate, orthogonality_defect, Amplitudes,
        CMat4, EigenSystem, Mat4, C64,
    };
    pub use crate::quantized::{
        dressed_matrix_elements, evolve_sector_amplitudes, quantized_euler_angles,
        sector_eigenvalues, sector_hamiltonian, sector_probability_trace, DressedSpectrum,
        SectorParams,
    };
    pub use crate::semiclassical::{
        evolve_amplitudes, integrate_lab_frame, lab_frame_hamiltonian, probability_trace,
        resonance_eigenvalues, resonance_rotation, rotating_frame_hamiltonian,
        semiclassical_euler_angles, SemiclassicalParams,
    };
    pub use crate::spin::{commutator_residual, spin32_generators, SpinOperators};
    pub use crate::trace::{CaseId, ProbabilityTrace, TimeGrid};
}

// The guide chapters double as doctests so their snippets cannot rot.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/semiclassical.md")]
    mod semiclassical {}
    #[doc = include_str!("../../../book/src/quantized.md")]
    mod quantized {}
    #[doc = include_str!("../../../book/src/coherent.md")]
    mod coherent {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    mod numerics {}
}
