//! Six-angle parametrization of 4x4 rotation matrices.
//!
//! A 4x4 rotation has six degrees of freedom. The parametrization used here
//! writes each matrix element as a fixed polynomial in the sines and cosines
//! of six angles; [`rotation_matrix`] evaluates those sixteen expressions and
//! is orthogonal by construction for *any* angle values. The inverse map
//! [`angles_from_rotation`] recovers the angles from a rotation matrix by
//! reading off rows and columns in which only a few angles survive:
//!
//! * row 4 is `(c4 s5, c4 c5 s6, -s4, c4 c5 c6)`, which pins `theta4`,
//!   `theta5`, `theta6` (taking `c4 > 0` and `c5 > 0`);
//! * column 3 is `c4 (s1 s3, c1 c2 s3 - s2 c3, c1 s2 s3 + c2 c3, -s4/c4 ...)`,
//!   whose top entry plus the `(1,1)` element pin `theta1` and `theta3`;
//! * entries `(2,3)` and `(3,3)` then rotate by exactly `theta2` in the plane
//!   spanned by `(c1 s3, c3)`, which pins `theta2` through a two-argument
//!   arctangent.
//!
//! The arctangent forms stay well-defined where naive `arccos`/`arcsin`
//! quotients degenerate (they divide by quantities that vanish on the dressed
//! family of rotations this crate produces).

use crate::error::Error;
use crate::linalg::Mat4;

/// How far an inverse-trig argument may fall outside `[-1, 1]` before it is
/// an error instead of floating-point spill to clamp.
pub const CLAMP_TOL: f64 = 1e-9;

/// Six rotation angles, radians, each in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    pub theta4: f64,
    pub theta5: f64,
    pub theta6: f64,
}

impl EulerAngles {
    pub fn to_array(self) -> [f64; 6] {
        [
            self.theta1,
            self.theta2,
            self.theta3,
            self.theta4,
            self.theta5,
            self.theta6,
        ]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        Self {
            theta1: a[0],
            theta2: a[1],
            theta3: a[2],
            theta4: a[3],
            theta5: a[4],
            theta6: a[5],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }
}

/// Assemble the rotation matrix from six angles.
///
/// Orthogonal for any input: the construction is a product of plane
/// rotations, so `orthogonality_defect` stays at rounding level.
pub fn rotation_matrix(angles: &EulerAngles) -> Mat4 {
    let [t1, t2, t3, t4, t5, t6] = angles.to_array();
    let (s1, c1) = t1.sin_cos();
    let (s2, c2) = t2.sin_cos();
    let (s3, c3) = t3.sin_cos();
    let (s4, c4) = t4.sin_cos();
    let (s5, c5) = t5.sin_cos();
    let (s6, c6) = t6.sin_cos();

    let mut a = Mat4::zero();
    a.entries[0][0] = c1 * c5 + s1 * s3 * s4 * s5;
    a.entries[0][1] = -c1 * s5 * s6 + s1 * c3 * c6 + s1 * s3 * s4 * c5 * s6;
    a.entries[0][2] = s1 * s3 * c4;
    a.entries[0][3] = -c1 * s5 * c6 - s1 * c3 * s6 + s1 * s3 * s4 * c5 * c6;

    a.entries[1][0] = -s1 * c2 * c5 + (c1 * c2 * s3 - s2 * c3) * s4 * s5;
    a.entries[1][1] = s1 * c2 * s5 * s6
        + (c1 * c2 * c3 + s2 * s3) * c6
        + (c1 * c2 * s3 - s2 * c3) * s4 * c5 * s6;
    a.entries[1][2] = (c1 * c2 * s3 - s2 * c3) * c4;
    a.entries[1][3] = s1 * c2 * s5 * c6 - (c1 * c2 * c3 + s2 * s3) * s6
        + (c1 * c2 * s3 - s2 * c3) * s4 * c5 * c6;

    a.entries[2][0] = -s1 * s2 * c5 + (c1 * s2 * s3 + c2 * c3) * s4 * s5;
    a.entries[2][1] = s1 * s2 * s5 * s6
        + (c1 * s2 * c3 - c2 * s3) * c6
        + (c1 * s2 * s3 + c2 * c3) * s4 * c5 * s6;
    a.entries[2][2] = (c1 * s2 * s3 + c2 * c3) * c4;
    a.entries[2][3] = s1 * s2 * s5 * c6 - (c1 * s2 * c3 - c2 * s3) * s6
        + (c1 * s2 * s3 + c2 * c3) * s4 * c5 * c6;

    a.entries[3][0] = c4 * s5;
    a.entries[3][1] = c4 * c5 * s6;
    a.entries[3][2] = -s4;
    a.entries[3][3] = c4 * c5 * c6;
    a
}

fn clamped_unit(value: f64) -> Result<f64, Error> {
    if value.abs() <= 1.0 {
        Ok(value)
    } else if value.abs() <= 1.0 + CLAMP_TOL {
        Ok(value.signum())
    } else {
        Err(Error::DomainError { value })
    }
}

/// Recover six angles from a rotation matrix produced by
/// [`rotation_matrix`]-style parametrizations with `c4 > 0`, `c5 > 0`, and
/// `s1 >= 0`.
///
/// Rebuilding through [`rotation_matrix`] reproduces the input to rounding
/// accuracy on the dressed rotations this crate generates. Arguments that
/// spill outside `[-1, 1]` by at most [`CLAMP_TOL`] are clamped; larger
/// violations return [`Error::DomainError`].
pub fn angles_from_rotation(t: &Mat4) -> Result<EulerAngles, Error> {
    let s4 = clamped_unit(-t[(3, 2)])?;
    let c4 = (1.0 - s4 * s4).sqrt();
    let theta4 = s4.asin();
    if c4 < 1e-12 {
        // row 4 and column 3 collapse; the parametrization is degenerate here
        return Err(Error::DomainError { value: s4 });
    }
    let s5 = clamped_unit(t[(3, 0)] / c4)?;
    let theta5 = s5.asin();
    let c5 = (1.0 - s5 * s5).sqrt();
    if c5 < 1e-12 {
        return Err(Error::DomainError { value: s5 });
    }
    let theta6 = t[(3, 1)].atan2(t[(3, 3)]);
    let (s6, c6) = theta6.sin_cos();

    // u = s1 s3, and the (1,1) entry isolates c1 once the known angles are
    // subtracted off
    let u = t[(0, 2)] / c4;
    let c1 = clamped_unit((t[(0, 0)] - u * s4 * s5) / c5)?;
    let theta1 = c1.acos();
    // s1 >= 0 by the arccos branch; theta3 comes from (u, s1 c3)
    let s1c3 = t[(0, 1)] * c6 - t[(0, 3)] * s6;
    let theta3 = u.atan2(s1c3);
    let (s3, c3) = theta3.sin_cos();

    // entries (2,3) and (3,3) are a plane rotation of (c1 s3, c3) by theta2
    let a = t[(1, 2)] / c4;
    let b = t[(2, 2)] / c4;
    let c1s3 = c1 * s3;
    let theta2 = (b * c1s3 - a * c3).atan2(a * c1s3 + b * c3);

    Ok(EulerAngles {
        theta1,
        theta2,
        theta3,
        theta4,
        theta5,
        theta6,
    })
}
