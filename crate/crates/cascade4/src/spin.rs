//! The spin-3/2 generators that define both the classical-drive and
//! cavity-sector Hamiltonians.
//!
//! The matrices follow the usual angular-momentum convention: the basis runs
//! from the m = +3/2 component down to m = -3/2. Level 1 of the ladder is the
//! *lowest* component, so it sits at the last coordinate here; every other
//! module of this crate indexes by level (1..4) instead and reverses the
//! coordinate order internally.

use crate::linalg::Mat4;

const SQRT3: f64 = 1.7320508075688772;

/// Raising/lowering/projection generators in the spin-3/2 representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinOperators {
    pub j_plus: Mat4,
    pub j_minus: Mat4,
    pub j3: Mat4,
}

/// Build the spin-3/2 generator triple.
///
/// `j_plus` carries the superdiagonal `(sqrt(3), 2, sqrt(3))`, `j_minus` is
/// its transpose, and `j3 = diag(3/2, 1/2, -1/2, -3/2)`.
pub fn spin32_generators() -> SpinOperators {
    let mut j_plus = Mat4::zero();
    j_plus.entries[0][1] = SQRT3;
    j_plus.entries[1][2] = 2.0;
    j_plus.entries[2][3] = SQRT3;
    let j_minus = j_plus.transpose();
    let mut j3 = Mat4::zero();
    j3.entries[0][0] = 1.5;
    j3.entries[1][1] = 0.5;
    j3.entries[2][2] = -0.5;
    j3.entries[3][3] = -1.5;
    SpinOperators { j_plus, j_minus, j3 }
}

/// Largest residual entry over the su(2) commutators
/// `[J+, J-] - 2 J3` and `[J3, J+] - J+`.
pub fn commutator_residual(ops: &SpinOperators) -> f64 {
    let comm = |a: &Mat4, b: &Mat4| {
        let ab = a.mul(b);
        let ba = b.mul(a);
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] = ab.entries[i][j] - ba.entries[i][j];
            }
        }
        out
    };
    let mut worst = 0.0_f64;
    let r1 = comm(&ops.j_plus, &ops.j_minus);
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((r1.entries[i][j] - 2.0 * ops.j3.entries[i][j]).abs());
        }
    }
    let r2 = comm(&ops.j3, &ops.j_plus);
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((r2.entries[i][j] - ops.j_plus.entries[i][j]).abs());
        }
    }
    worst
}
