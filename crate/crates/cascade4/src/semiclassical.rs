//! Four-level ladder driven by a classical monochromatic field.
//!
//! In the frame rotating with the drive the Hamiltonian is time-independent;
//! at resonance it is diagonalized in closed form by a fixed six-angle
//! rotation, which makes the level populations exact trigonometric
//! polynomials in `kappa * t` (binomial Rabi oscillations). Off resonance
//! the module falls back to the numerical eigensolver. A lab-frame adaptive
//! integrator is provided as an independent cross-check: the frame
//! transformation only changes amplitudes by phases, so populations agree.
//!
//! Everything is expressed in level order: index `i` of a vector or matrix
//! refers to level `i + 1` of the ladder, and `hbar = 1` so Hamiltonian
//! entries are angular frequencies.

use num_complex::Complex64 as C64;

use crate::error::Error;
use crate::euler::EulerAngles;
use crate::linalg::{hermitian_eigensystem, Amplitudes, CMat4, EigenSystem, Mat4};
use crate::trace::{CaseId, ProbabilityTrace, TimeGrid};

const SQRT3: f64 = 1.7320508075688772;

/// Drive and level-structure parameters of the classical-field model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiclassicalParams {
    /// Level spacing omega_0 (angular frequency, >= 0).
    pub level_spacing: f64,
    /// Drive frequency Omega (angular frequency, >= 0).
    pub drive_frequency: f64,
    /// Atom-field coupling kappa (angular frequency, > 0 for dynamics).
    pub coupling: f64,
}

impl SemiclassicalParams {
    pub fn new(level_spacing: f64, drive_frequency: f64, coupling: f64) -> Self {
        Self {
            level_spacing,
            drive_frequency,
            coupling,
        }
    }

    /// Resonant parameters: detuning 0 at the given coupling.
    pub fn resonant(coupling: f64) -> Self {
        Self::new(1.0, 1.0, coupling)
    }

    /// Detuning `omega_0 - Omega`.
    pub fn detuning(&self) -> f64 {
        self.level_spacing - self.drive_frequency
    }
}

/// Lab-frame Hamiltonian at time `t`, in level order.
///
/// Diagonal `(-3/2, -1/2, 1/2, 3/2) * omega_0`; nearest-neighbour couplings
/// `(sqrt(3), 2, sqrt(3)) * kappa * exp(i Omega t)` on the upper diagonal.
pub fn lab_frame_hamiltonian(p: &SemiclassicalParams, t: f64) -> CMat4 {
    let phase = C64::from_polar(1.0, p.drive_frequency * t);
    let w0 = p.level_spacing;
    let k = p.coupling;
    let mut h = CMat4::zero();
    h.entries[0][0] = C64::new(-1.5 * w0, 0.0);
    h.entries[1][1] = C64::new(-0.5 * w0, 0.0);
    h.entries[2][2] = C64::new(0.5 * w0, 0.0);
    h.entries[3][3] = C64::new(1.5 * w0, 0.0);
    let couplings = [SQRT3 * k, 2.0 * k, SQRT3 * k];
    for (i, g) in couplings.into_iter().enumerate() {
        h.entries[i][i + 1] = g * phase;
        h.entries[i + 1][i] = (g * phase).conj();
    }
    h
}

/// Rotating-frame Hamiltonian: real symmetric and time-independent.
///
/// Diagonal `(-3/2, -1/2, 1/2, 3/2) * delta`, off-diagonals
/// `(sqrt(3), 2, sqrt(3)) * kappa`.
pub fn rotating_frame_hamiltonian(p: &SemiclassicalParams) -> CMat4 {
    let d = p.detuning();
    let k = p.coupling;
    CMat4::from_real([
        [-1.5 * d, SQRT3 * k, 0.0, 0.0],
        [SQRT3 * k, -0.5 * d, 2.0 * k, 0.0],
        [0.0, 2.0 * k, 0.5 * d, SQRT3 * k],
        [0.0, 0.0, SQRT3 * k, 1.5 * d],
    ])
}

/// The six angles that diagonalize the resonant rotating-frame Hamiltonian
/// in closed form.
pub fn semiclassical_euler_angles() -> EulerAngles {
    EulerAngles {
        theta1: (-(2.0_f64 / 5.0).sqrt()).acos(),
        theta2: 3.0 * std::f64::consts::FRAC_PI_4,
        theta3: -std::f64::consts::FRAC_PI_2,
        theta4: -(3.0_f64 / 8.0).sqrt().asin(),
        theta5: (1.0_f64 / 5.0).sqrt().asin(),
        theta6: std::f64::consts::FRAC_PI_3,
    }
}

/// Build the rotation matrix of [`EulerAngles`]; see [`crate::euler`].
pub fn euler_rotation_matrix(angles: &EulerAngles) -> Mat4 {
    crate::euler::rotation_matrix(angles)
}

/// The resonant rotation written out exactly: every entry is
/// `+-sqrt(2)/4` or `+-sqrt(6)/4`.
///
/// Identical (to rounding) to
/// `euler_rotation_matrix(&semiclassical_euler_angles())`, but using the
/// same two magnitudes everywhere keeps mirror-image population traces
/// bit-for-bit equal. Row `k` pairs with eigenvalue `(-3, -1, 1, 3)[k] *
/// kappa`.
pub fn resonance_rotation() -> Mat4 {
    let a = 2.0_f64.sqrt() / 4.0;
    let b = 6.0_f64.sqrt() / 4.0;
    Mat4::from_rows([
        [-a, b, -b, a],
        [b, -a, -a, b],
        [-b, -a, a, b],
        [a, b, b, a],
    ])
}

/// Eigenvalues of the resonant rotating-frame Hamiltonian, ascending.
pub fn resonance_eigenvalues(kappa: f64) -> [f64; 4] {
    [-3.0 * kappa, -kappa, kappa, 3.0 * kappa]
}

enum Propagator {
    /// Closed-form route through the fixed resonance rotation.
    Resonance { kappa: f64 },
    /// Numerical eigendecomposition, used off resonance.
    General(EigenSystem),
}

impl Propagator {
    fn build(p: &SemiclassicalParams) -> Self {
        if p.detuning() == 0.0 {
            Propagator::Resonance { kappa: p.coupling }
        } else {
            let h = rotating_frame_hamiltonian(p);
            let eig = hermitian_eigensystem(&h)
                .expect("rotating-frame Hamiltonian is Hermitian by construction");
            Propagator::General(eig)
        }
    }

    fn evolve(&self, c0: &Amplitudes, t: f64) -> Amplitudes {
        if t == 0.0 {
            return *c0;
        }
        match self {
            Propagator::Resonance { kappa } => {
                let rot = resonance_rotation();
                let lam = resonance_eigenvalues(*kappa);
                // c(t) = R^t diag(exp(-i lam t)) R c0
                let mut proj = [C64::new(0.0, 0.0); 4];
                for (k, pk) in proj.iter_mut().enumerate() {
                    let mut acc = C64::new(0.0, 0.0);
                    for i in 0..4 {
                        acc += rot.entries[k][i] * c0.c[i];
                    }
                    *pk = C64::from_polar(1.0, -lam[k] * t) * acc;
                }
                let mut out = [C64::new(0.0, 0.0); 4];
                for (i, oi) in out.iter_mut().enumerate() {
                    let mut acc = C64::new(0.0, 0.0);
                    for k in 0..4 {
                        acc += rot.entries[k][i] * proj[k];
                    }
                    *oi = acc;
                }
                Amplitudes::new(out)
            }
            Propagator::General(eig) => eig.propagate(c0, t),
        }
    }
}

/// Amplitudes after evolving `c0` for time `t` in the rotating frame.
///
/// At resonance this is the closed-form rotation route; off resonance the
/// numerical eigensystem is used. The output stays normalized.
pub fn evolve_amplitudes(c0: &Amplitudes, p: &SemiclassicalParams, t: f64) -> Amplitudes {
    Propagator::build(p).evolve(c0, t)
}

/// Level populations over `grid` for one of the named initial conditions
/// (cases I-IV).
///
/// Each grid point is evaluated directly from t = 0 through the propagator;
/// there is no stepping, so points are independent.
pub fn probability_trace(
    case: CaseId,
    p: &SemiclassicalParams,
    grid: &TimeGrid,
) -> Result<ProbabilityTrace, Error> {
    if !case.is_semiclassical() {
        return Err(Error::IncompatibleCase {
            case: case.to_string(),
            model: "semiclassical".into(),
        });
    }
    let c0 = Amplitudes::basis(case.initial_level());
    let prop = Propagator::build(p);
    let mut trace = ProbabilityTrace::with_capacity(grid.len());
    for &t in grid.times() {
        trace.push(t, prop.evolve(&c0, t).probabilities());
    }
    Ok(trace)
}

// Dormand-Prince 5(4) coefficients.
const DP_C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// difference between the 5th- and 4th-order weights
const DP_E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const RTOL: f64 = 1e-10;
const ATOL: f64 = 1e-12;

type State = [C64; 4];

fn apply_h(h: &CMat4, y: &State) -> State {
    let mut out = [C64::new(0.0, 0.0); 4];
    for (i, oi) in out.iter_mut().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..4 {
            acc += h.entries[i][j] * y[j];
        }
        *oi = -C64::i() * acc;
    }
    out
}

/// Integrate the time-dependent lab-frame dynamics over `grid` with an
/// adaptive Dormand-Prince step (local tolerance 1e-10).
///
/// Populations are read from the normalized state at each grid point, so
/// rows of the trace sum to exactly 1. This route is the independent check
/// for the rotating-frame propagators: it never sees the frame
/// transformation.
pub fn integrate_lab_frame(
    c0: &Amplitudes,
    p: &SemiclassicalParams,
    grid: &TimeGrid,
) -> Result<ProbabilityTrace, Error> {
    let deriv = |t: f64, y: &State| apply_h(&lab_frame_hamiltonian(p, t), y);
    let t_end = grid.last();
    let h_min = 1e-14 * t_end.max(1.0);
    let mut trace = ProbabilityTrace::with_capacity(grid.len());

    let mut y = c0.c;
    let mut t = 0.0_f64;
    let mut h = (t_end / 100.0).min(0.1).max(1e-6);
    let mut k1 = deriv(t, &y);
    let mut steps: usize = 0;

    for (idx, &target) in grid.times().iter().enumerate() {
        if idx == 0 {
            trace.push(0.0, normalized_probs(&y));
            continue;
        }
        while t < target {
            let h_try = h.min(target - t);
            // stages
            let mut k = [[C64::new(0.0, 0.0); 4]; 7];
            k[0] = k1;
            for s in 1..7 {
                let mut ys = y;
                for (j, kj) in k.iter().enumerate().take(s) {
                    let a = DP_A[s - 1][j];
                    if a != 0.0 {
                        for i in 0..4 {
                            ys[i] += h_try * a * kj[i];
                        }
                    }
                }
                k[s] = deriv(t + DP_C[s] * h_try, &ys);
            }
            // 5th-order solution is the last stage's base point
            let mut y_new = y;
            for (j, kj) in k.iter().enumerate().take(6) {
                let a = DP_A[5][j];
                if a != 0.0 {
                    for i in 0..4 {
                        y_new[i] += h_try * a * kj[i];
                    }
                }
            }
            // embedded error estimate
            let mut err_norm = 0.0_f64;
            for i in 0..4 {
                let mut e = C64::new(0.0, 0.0);
                for (j, kj) in k.iter().enumerate() {
                    if DP_E[j] != 0.0 {
                        e += h_try * DP_E[j] * kj[i];
                    }
                }
                let sc = ATOL + RTOL * y[i].norm().max(y_new[i].norm());
                let r = e.norm() / sc;
                err_norm += r * r;
            }
            err_norm = (err_norm / 4.0).sqrt();

            if err_norm <= 1.0 {
                t += h_try;
                y = y_new;
                k1 = k[6]; // FSAL
            }
            let factor = if err_norm == 0.0 {
                5.0
            } else {
                (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
            };
            h = (h_try * factor).max(h_min);
            if h <= h_min && err_norm > 1.0 {
                return Err(Error::IntegratorFailure {
                    t,
                    reason: format!("step size underflow (local error {err_norm:.3e})"),
                });
            }
            steps += 1;
            if steps > 20_000_000 {
                return Err(Error::IntegratorFailure {
                    t,
                    reason: "step budget exhausted".into(),
                });
            }
        }
        trace.push(target, normalized_probs(&y));
    }
    Ok(trace)
}

fn normalized_probs(y: &State) -> [f64; 4] {
    let n: f64 = y.iter().map(|z| z.norm_sqr()).sum();
    [
        y[0].norm_sqr() / n,
        y[1].norm_sqr() / n,
        y[2].norm_sqr() / n,
        y[3].norm_sqr() / n,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{matrix_exponential_propagate, orthogonality_defect};

    fn grid(t_max: f64, n: usize) -> TimeGrid {
        TimeGrid::uniform(t_max, n).unwrap()
    }

    #[test]
    fn lab_frame_entries_at_t0() {
        let p = SemiclassicalParams::new(1.0, 1.0, 1.0);
        let h = lab_frame_hamiltonian(&p, 0.0);
        assert!((h[(0, 1)] - C64::new(SQRT3, 0.0)).norm() < 1e-15);
        assert!((h[(1, 2)] - C64::new(2.0, 0.0)).norm() < 1e-15);
        let diag: Vec<f64> = (0..4).map(|i| h[(i, i)].re).collect();
        assert_eq!(diag, vec![-1.5, -0.5, 0.5, 1.5]);
    }

    #[test]
    fn lab_frame_is_hermitian() {
        let p = SemiclassicalParams::new(0.9, 1.7, 0.4);
        for &t in &[0.0, 0.3, 2.9, 17.0] {
            assert!(lab_frame_hamiltonian(&p, t).hermitian_defect() < 1e-15);
        }
    }

    #[test]
    fn lab_frame_drive_phase() {
        // Omega = 2, t = pi/2: phase factor exp(i pi) = -1
        let p = SemiclassicalParams::new(1.0, 2.0, 1.0);
        let h = lab_frame_hamiltonian(&p, std::f64::consts::FRAC_PI_2);
        assert!((h[(0, 1)] - C64::new(-SQRT3, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn lab_frame_matches_spin_generator_form() {
        // omega_0 J3 + kappa (J+ e^{-i Omega t} + J- e^{+i Omega t}) in
        // descending-m coordinates, then flipped into level order
        let ops = crate::spin::spin32_generators();
        let p = SemiclassicalParams::new(1.3, 0.6, 0.8);
        let t = 2.1;
        let minus = C64::from_polar(1.0, -p.drive_frequency * t);
        let plus = C64::from_polar(1.0, p.drive_frequency * t);
        let mut coord = CMat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                coord.entries[i][j] = C64::new(p.level_spacing * ops.j3[(i, j)], 0.0)
                    + p.coupling * (ops.j_plus[(i, j)] * minus + ops.j_minus[(i, j)] * plus);
            }
        }
        let h = lab_frame_hamiltonian(&p, t);
        for i in 0..4 {
            for j in 0..4 {
                let flipped = coord.entries[3 - i][3 - j];
                assert!((h[(i, j)] - flipped).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn rotating_frame_resonance_spectrum() {
        let p = SemiclassicalParams::resonant(1.0);
        let h = rotating_frame_hamiltonian(&p);
        assert!((h[(0, 1)].re - SQRT3).abs() < 1e-15);
        assert!((h[(1, 2)].re - 2.0).abs() < 1e-15);
        for i in 0..4 {
            assert_eq!(h[(i, i)].re, 0.0);
        }
        let eig = hermitian_eigensystem(&h).unwrap();
        for (got, want) in eig.values.iter().zip([-3.0, -1.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn decoupled_levels_at_zero_coupling() {
        let p = SemiclassicalParams {
            level_spacing: 2.0,
            drive_frequency: 0.0,
            coupling: 0.0,
        };
        let h = rotating_frame_hamiltonian(&p);
        let eig = hermitian_eigensystem(&h).unwrap();
        for (got, want) in eig.values.iter().zip([-3.0, -1.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn euler_angle_values() {
        let a = semiclassical_euler_angles();
        assert!((a.theta1 - 2.2555155297971794).abs() < 1e-12);
        assert!((a.theta2 - 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!((a.theta6 - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
    }

    #[test]
    fn euler_matrix_diagonalizes_resonant_hamiltonian() {
        let t = euler_rotation_matrix(&semiclassical_euler_angles());
        assert!(orthogonality_defect(&t) < 1e-12);
        let h = rotating_frame_hamiltonian(&SemiclassicalParams::resonant(1.0));
        // T H T^t should be diag(-3, -1, 1, 3)
        let tc = t.to_complex();
        let d = tc.mul(&h).mul(&t.transpose().to_complex());
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { [-3.0, -1.0, 1.0, 3.0][i] } else { 0.0 };
                assert!(
                    (d[(i, j)] - C64::new(want, 0.0)).norm() < 1e-10,
                    "entry ({i},{j}) = {:?}",
                    d[(i, j)]
                );
            }
        }
    }

    #[test]
    fn exact_rotation_matches_angle_construction() {
        let from_angles = euler_rotation_matrix(&semiclassical_euler_angles());
        let exact = resonance_rotation();
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((from_angles[(i, j)] - exact[(i, j)]).abs());
            }
        }
        assert!(worst < 1e-15, "max difference {worst}");
        assert!(orthogonality_defect(&exact) < 1e-15);
    }

    #[test]
    fn evolve_identity_at_t0() {
        let c0 = Amplitudes::new([
            C64::new(0.5, 0.1),
            C64::new(-0.3, 0.4),
            C64::new(0.2, -0.6),
            C64::new(0.1, 0.25),
        ]);
        let n = c0.norm();
        let c0 = Amplitudes::new(c0.c.map(|z| z / n));
        let out = evolve_amplitudes(&c0, &SemiclassicalParams::resonant(1.0), 0.0);
        for (a, b) in out.c.iter().zip(c0.c) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn binomial_populations_at_resonance() {
        let p = SemiclassicalParams::resonant(1.0);
        let quarter = std::f64::consts::FRAC_PI_4;
        let probs = evolve_amplitudes(&Amplitudes::basis(1), &p, quarter).probabilities();
        for (got, want) in probs.iter().zip([0.125, 0.375, 0.375, 0.125]) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
        let full = evolve_amplitudes(&Amplitudes::basis(1), &p, std::f64::consts::PI)
            .probabilities();
        for (got, want) in full.iter().zip([1.0, 0.0, 0.0, 0.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn case_one_follows_cos_sixth() {
        let p = SemiclassicalParams::resonant(1.0);
        let g = grid(4.0 * std::f64::consts::PI, 2001);
        let trace = probability_trace(CaseId::I, &p, &g).unwrap();
        for (k, &t) in g.times().iter().enumerate() {
            let c = t.cos();
            let s = t.sin();
            let expect = [
                c.powi(6),
                3.0 * c.powi(4) * s * s,
                3.0 * c * c * s.powi(4),
                s.powi(6),
            ];
            for (lvl, want) in expect.iter().enumerate() {
                let got = trace.p[lvl][k];
                assert!(
                    (got - want).abs() < 1e-10,
                    "t = {t}, level {}: got {got}, want {want}",
                    lvl + 1
                );
            }
        }
        assert!(trace.normalization_defect() < 1e-10);
    }

    #[test]
    fn mirror_cases_are_bit_exact() {
        let p = SemiclassicalParams::resonant(1.0);
        let g = grid(4.0 * std::f64::consts::PI, 401);
        let one = probability_trace(CaseId::I, &p, &g).unwrap();
        let four = probability_trace(CaseId::IV, &p, &g).unwrap();
        let two = probability_trace(CaseId::II, &p, &g).unwrap();
        let three = probability_trace(CaseId::III, &p, &g).unwrap();
        for i in 0..4 {
            assert_eq!(one.p[i], four.p[3 - i], "case I level {} mirror", i + 1);
            assert_eq!(two.p[i], three.p[3 - i], "case II level {} mirror", i + 1);
        }
    }

    #[test]
    fn populations_are_periodic_at_resonance() {
        let p = SemiclassicalParams::resonant(1.0);
        let period = std::f64::consts::PI;
        for &t in &[0.17, 0.73, 1.9, 2.6] {
            let a = evolve_amplitudes(&Amplitudes::basis(2), &p, t).probabilities();
            let b = evolve_amplitudes(&Amplitudes::basis(2), &p, t + period).probabilities();
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn closed_form_matches_matrix_exponential() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for trial in 0..100 {
            // half the trials off resonance
            let delta = if trial % 2 == 0 {
                0.0
            } else {
                rng.gen_range(-2.0..2.0)
            };
            let p = SemiclassicalParams::new(1.0 + delta, 1.0, rng.gen_range(0.2..2.0));
            let h = rotating_frame_hamiltonian(&p);
            let mut c = [C64::new(0.0, 0.0); 4];
            for z in &mut c {
                *z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            let n = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let c0 = Amplitudes::new(c.map(|z| z / n));
            let t: f64 = rng.gen_range(0.0..10.0);
            let closed = evolve_amplitudes(&c0, &p, t);
            let oracle = matrix_exponential_propagate(&h, &c0, t).unwrap();
            for (x, y) in closed.c.iter().zip(oracle.c) {
                assert!((x - y).norm() < 1e-10);
            }
            assert!((closed.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn quantized_case_rejected() {
        let p = SemiclassicalParams::resonant(1.0);
        let g = grid(1.0, 3);
        assert!(matches!(
            probability_trace(CaseId::V, &p, &g),
            Err(Error::IncompatibleCase { .. })
        ));
    }

    #[test]
    fn integrator_constant_populations_without_coupling() {
        let p = SemiclassicalParams {
            level_spacing: 1.0,
            drive_frequency: 1.0,
            coupling: 0.0,
        };
        let g = grid(5.0, 11);
        let c0 = Amplitudes::new([
            C64::new(0.6, 0.0),
            C64::new(0.0, 0.8),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ]);
        let trace = integrate_lab_frame(&c0, &p, &g).unwrap();
        for k in 0..g.len() {
            assert!((trace.p[0][k] - 0.36).abs() < 1e-9);
            assert!((trace.p[1][k] - 0.64).abs() < 1e-9);
        }
    }

    #[test]
    fn integrator_agrees_with_rotating_frame() {
        let p = SemiclassicalParams::resonant(1.0);
        let g = grid(4.0 * std::f64::consts::PI, 201);
        let lab = integrate_lab_frame(&Amplitudes::basis(1), &p, &g).unwrap();
        let rot = probability_trace(CaseId::I, &p, &g).unwrap();
        for k in 0..g.len() {
            for i in 0..4 {
                assert!(
                    (lab.p[i][k] - rot.p[i][k]).abs() < 1e-8,
                    "t = {}, level {}",
                    g.times()[k],
                    i + 1
                );
            }
        }
    }

    #[test]
    fn integrator_exact_frame_coincidence() {
        // omega_0 = Omega = 0: the lab frame *is* the rotating frame
        let p = SemiclassicalParams::new(0.0, 0.0, 1.0);
        let g = grid(6.0, 61);
        let lab = integrate_lab_frame(&Amplitudes::basis(2), &p, &g).unwrap();
        let rot = probability_trace(CaseId::II, &p, &g).unwrap();
        for k in 0..g.len() {
            for i in 0..4 {
                assert!((lab.p[i][k] - rot.p[i][k]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn off_resonance_integrator_check() {
        let p = SemiclassicalParams::new(1.6, 1.0, 0.7);
        let g = grid(8.0, 81);
        let lab = integrate_lab_frame(&Amplitudes::basis(3), &p, &g).unwrap();
        let rot = probability_trace(CaseId::III, &p, &g).unwrap();
        for k in 0..g.len() {
            for i in 0..4 {
                assert!((lab.p[i][k] - rot.p[i][k]).abs() < 1e-8);
            }
        }
    }
}
