//! Dense 4x4 complex linear algebra: Hermitian eigensolver, unitary
//! propagation, and orthogonality diagnostics.
//!
//! Everything here is sized for the four-level problem. Matrices are stored
//! row-major as plain arrays; all operations are pure functions and safe to
//! call from any number of threads.

pub use num_complex::Complex64 as C64;

use crate::error::Error;

/// Hermiticity tolerance accepted by [`hermitian_eigensystem`], relative to
/// the largest entry magnitude (with a floor of 1 so small matrices are held
/// to the absolute figure).
pub const HERMITICITY_TOL: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 50;

/// A 4x4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat4 {
    pub entries: [[C64; 4]; 4],
}

impl CMat4 {
    pub fn zero() -> Self {
        Self { entries: [[C64::new(0.0, 0.0); 4]; 4] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.entries[i][i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: [[C64; 4]; 4]) -> Self {
        Self { entries: rows }
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = C64::new(rows[i][j], 0.0);
            }
        }
        m
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.entries[i][i] = C64::new(d[i], 0.0);
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.entries[j][i].conj();
            }
        }
        m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..4 {
                    acc += self.entries[i][k] * rhs.entries[k][j];
                }
                m.entries[i][j] = acc;
            }
        }
        m
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.entries[i][j] - rhs.entries[i][j];
            }
        }
        m
    }

    /// Largest entry magnitude (max norm).
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from `entry(i,j) = conj(entry(j,i))`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            worst = worst.max(self.entries[i][i].im.abs());
            for j in (i + 1)..4 {
                let d = (self.entries[i][j] - self.entries[j][i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for CMat4 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i][j]
    }
}

/// A 4x4 real matrix, row-major. Used for the rotation matrices that
/// diagonalize the real symmetric Hamiltonians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4 {
    pub entries: [[f64; 4]; 4],
}

impl Mat4 {
    pub fn zero() -> Self {
        Self { entries: [[0.0; 4]; 4] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.entries[i][i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Self {
        Self { entries: rows }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.entries[j][i];
            }
        }
        m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0.0;
                for k in 0..4 {
                    acc += self.entries[i][k] * rhs.entries[k][j];
                }
                m.entries[i][j] = acc;
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|x| x.abs())
            .fold(0.0, f64::max)
    }

    pub fn to_complex(&self) -> CMat4 {
        CMat4::from_real(self.entries)
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for Mat4 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.entries[i][j]
    }
}

/// Four complex probability amplitudes in level order: component `i` holds
/// the amplitude of level `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes {
    pub c: [C64; 4],
}

impl Amplitudes {
    pub fn new(c: [C64; 4]) -> Self {
        Self { c }
    }

    /// Unit amplitude on a single level.
    ///
    /// *Panics* if `level` is not in `1..=4`.
    pub fn basis(level: usize) -> Self {
        assert!((1..=4).contains(&level), "level must be 1..=4, got {level}");
        let mut c = [C64::new(0.0, 0.0); 4];
        c[level - 1] = C64::new(1.0, 0.0);
        Self { c }
    }

    pub fn norm(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|c_i|^2` for each level, in level order.
    pub fn probabilities(&self) -> [f64; 4] {
        [
            self.c[0].norm_sqr(),
            self.c[1].norm_sqr(),
            self.c[2].norm_sqr(),
            self.c[3].norm_sqr(),
        ]
    }

    /// `|c_level|^2`; `level` is 1-based.
    pub fn probability(&self, level: usize) -> f64 {
        assert!((1..=4).contains(&level), "level must be 1..=4, got {level}");
        self.c[level - 1].norm_sqr()
    }
}

/// Eigenvalues (ascending) and matching orthonormal eigenvector columns of a
/// Hermitian 4x4 matrix.
#[derive(Debug, Clone, Copy)]
pub struct EigenSystem {
    /// Eigenvalues sorted ascending.
    pub values: [f64; 4],
    /// Column `k` is the unit eigenvector paired with `values[k]`.
    pub vectors: CMat4,
}

impl EigenSystem {
    /// Rebuild `V diag(values) V^dagger`; used to bound the decomposition
    /// residual in tests.
    pub fn reconstruct(&self) -> CMat4 {
        let v = &self.vectors;
        let mut m = CMat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..4 {
                    acc += v.entries[i][k] * self.values[k] * v.entries[j][k].conj();
                }
                m.entries[i][j] = acc;
            }
        }
        m
    }

    /// Max-norm deviation of `V^dagger V` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        self.vectors
            .adjoint()
            .mul(&self.vectors)
            .sub(&CMat4::identity())
            .max_abs()
    }

    /// Apply `exp(-i H t)` through this decomposition of `H`.
    pub fn propagate(&self, psi0: &Amplitudes, t: f64) -> Amplitudes {
        let v = &self.vectors;
        // project onto the eigenbasis, phase, and project back
        let mut proj = [C64::new(0.0, 0.0); 4];
        for k in 0..4 {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..4 {
                acc += v.entries[i][k].conj() * psi0.c[i];
            }
            proj[k] = acc;
        }
        for (k, p) in proj.iter_mut().enumerate() {
            *p *= C64::from_polar(1.0, -self.values[k] * t);
        }
        let mut out = [C64::new(0.0, 0.0); 4];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..4 {
                acc += v.entries[i][k] * proj[k];
            }
            *o = acc;
        }
        Amplitudes::new(out)
    }
}

/// Diagonalize a Hermitian 4x4 matrix by cyclic complex Jacobi rotations.
///
/// Output is deterministic: eigenvalues ascend, and each eigenvector is
/// phase-fixed so that its largest-magnitude component is real and positive
/// (ties broken by lowest index).
pub fn hermitian_eigensystem(m: &CMat4) -> Result<EigenSystem, Error> {
    if !m.is_finite() {
        return Err(Error::NonHermitianInput { defect: f64::INFINITY, tol: HERMITICITY_TOL });
    }
    let scale = m.max_abs().max(1.0);
    let defect = m.hermitian_defect();
    if defect > HERMITICITY_TOL * scale {
        return Err(Error::NonHermitianInput { defect, tol: HERMITICITY_TOL * scale });
    }

    // Work on the symmetrized copy so the iteration sees an exactly
    // Hermitian matrix.
    let mut w = *m;
    for i in 0..4 {
        w.entries[i][i] = C64::new(w.entries[i][i].re, 0.0);
        for j in (i + 1)..4 {
            let avg = 0.5 * (w.entries[i][j] + w.entries[j][i].conj());
            w.entries[i][j] = avg;
            w.entries[j][i] = avg.conj();
        }
    }

    let mut v = CMat4::identity();
    let target = 1e-15 * scale;
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < JACOBI_MAX_SWEEPS {
        let off = off_diag_max(&w);
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                jacobi_rotate(&mut w, &mut v, p, q);
            }
        }
        sweeps += 1;
    }
    if !converged && off_diag_max(&w) > target {
        return Err(Error::ConvergenceFailure { sweeps, off: off_diag_max(&w) });
    }

    // sort ascending, carrying columns along
    let mut order = [0usize, 1, 2, 3];
    let diag = [
        w.entries[0][0].re,
        w.entries[1][1].re,
        w.entries[2][2].re,
        w.entries[3][3].re,
    ];
    order.sort_by(|&a, &b| diag[a].partial_cmp(&diag[b]).unwrap());

    let mut values = [0.0; 4];
    let mut vectors = CMat4::zero();
    for (k, &src) in order.iter().enumerate() {
        values[k] = diag[src];
        for i in 0..4 {
            vectors.entries[i][k] = v.entries[i][src];
        }
    }

    // sign convention: largest-magnitude component real positive
    for k in 0..4 {
        let mut best = 0usize;
        let mut best_mag = vectors.entries[0][k].norm();
        for i in 1..4 {
            let mag = vectors.entries[i][k].norm();
            if mag > best_mag {
                best_mag = mag;
                best = i;
            }
        }
        if best_mag > 0.0 {
            let phase = vectors.entries[best][k].conj() / best_mag;
            for i in 0..4 {
                vectors.entries[i][k] *= phase;
            }
        }
    }

    Ok(EigenSystem { values, vectors })
}

fn off_diag_max(w: &CMat4) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..4 {
        for j in (i + 1)..4 {
            worst = worst.max(w.entries[i][j].norm());
        }
    }
    worst
}

/// One Jacobi rotation zeroing `w[p][q]`, accumulated into `v`.
fn jacobi_rotate(w: &mut CMat4, v: &mut CMat4, p: usize, q: usize) {
    let h = w.entries[p][q];
    let m = h.norm();
    if m == 0.0 {
        return;
    }
    let phase = h / m;
    let tau = (w.entries[q][q].re - w.entries[p][p].re) / (2.0 * m);
    // smaller root of t^2 - 2 tau t - 1 = 0
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // unitary U: U[p][p]=c, U[p][q]=-s*phase, U[q][p]=s*conj(phase), U[q][q]=c
    let se = s * phase;
    let se_conj = s * phase.conj();

    // columns: W <- W U
    for i in 0..4 {
        let wp = w.entries[i][p];
        let wq = w.entries[i][q];
        w.entries[i][p] = c * wp + se_conj * wq;
        w.entries[i][q] = -se * wp + c * wq;
    }
    // rows: W <- U^dagger W
    for j in 0..4 {
        let wp = w.entries[p][j];
        let wq = w.entries[q][j];
        w.entries[p][j] = c * wp + se * wq;
        w.entries[q][j] = -se_conj * wp + c * wq;
    }
    // keep the pivot exactly zero and the diagonal exactly real
    w.entries[p][q] = C64::new(0.0, 0.0);
    w.entries[q][p] = C64::new(0.0, 0.0);
    w.entries[p][p] = C64::new(w.entries[p][p].re, 0.0);
    w.entries[q][q] = C64::new(w.entries[q][q].re, 0.0);

    // eigenvector columns: V <- V U
    for i in 0..4 {
        let vp = v.entries[i][p];
        let vq = v.entries[i][q];
        v.entries[i][p] = c * vp + se_conj * vq;
        v.entries[i][q] = -se * vp + c * vq;
    }
}

/// Evolve `psi0` under a Hermitian `h` for time `t`: `exp(-i h t) psi0`.
///
/// Exact up to the eigendecomposition; negative `t` evolves backward.
pub fn matrix_exponential_propagate(
    h: &CMat4,
    psi0: &Amplitudes,
    t: f64,
) -> Result<Amplitudes, Error> {
    let eig = hermitian_eigensystem(h)?;
    Ok(eig.propagate(psi0, t))
}

/// Max-norm deviation of `T^t T` from the identity.
pub fn orthogonality_defect(t: &Mat4) -> f64 {
    let gram = t.transpose().mul(t);
    let mut worst = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram.entries[i][j] - target).abs());
        }
    }
    worst
}
