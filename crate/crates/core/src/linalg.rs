//! Dense complex linear algebra on 2×2 and 4×4 matrices.
//!
//! Everything here is sized for one or two qubits. Matrices are stored inline
//! (no heap allocation) in row-major order; the two-qubit basis index is
//! `2a + b` with `a` the first qubit and `b` the second, i.e. the
//! computational basis `|00>, |01>, |10>, |11>`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_DIM: usize = 4;

/// Maximum number of cyclic Jacobi sweeps before giving up.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Off-diagonal Frobenius norm (relative to `max(1, ||A||_F)`) at which Jacobi stops.
pub const JACOBI_TOLERANCE: f64 = 1e-13;

/// Hermiticity tolerance accepted by [`hermitian_eigensystem`].
pub const EIGEN_HERMITIAN_TOL: f64 = 1e-10;
/// Hermiticity tolerance of a [`DensityMatrix`].
pub const DENSITY_HERMITIAN_TOL: f64 = 1e-12;
/// Trace tolerance of a [`DensityMatrix`].
pub const DENSITY_TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue tolerated in a [`DensityMatrix`].
pub const DENSITY_PSD_TOL: f64 = 1e-10;
/// Eigenvalues at or below this magnitude contribute nothing to entropies.
pub const ENTROPY_ZERO_CUTOFF: f64 = 1e-14;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A dense square complex matrix of dimension 2 or 4.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [Complex64; MAX_DIM * MAX_DIM],
}

impl ComplexMatrix {
    fn check_dim(dim: usize) -> Result<()> {
        if dim == 2 || dim == 4 {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "matrix dimension must be 2 or 4, got {dim}"
            )))
        }
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::check_dim(dim)?;
        Ok(Self {
            dim,
            data: [Complex64::default(); MAX_DIM * MAX_DIM],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = c(1.0, 0.0);
        }
        Ok(m)
    }

    /// Build from `dim²` entries in row-major order.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        Self::check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let mut m = Self::zeros(dim)?;
        m.data[..dim * dim].copy_from_slice(entries);
        Ok(m)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = c(d, 0.0);
        }
        Ok(m)
    }

    /// `|v><v|` for a (not necessarily normalized) vector of length 2 or 4.
    pub fn outer(v: &[Complex64]) -> Result<Self> {
        let mut m = Self::zeros(v.len())?;
        for (i, a) in v.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                m[(i, j)] = a * b.conj();
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major view of the `dim²` entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data[..self.dim * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)];
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = *self;
        out.data.iter_mut().for_each(|z| *z *= s);
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |m[i][j] - conj(m[j][i])|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Largest entrywise modulus of `self - other`; infinite on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Unitary conjugation `u · self · u†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }

    /// Product of the eigenvalues of a Hermitian matrix.
    pub fn hermitian_determinant(&self) -> Result<f64> {
        Ok(hermitian_eigensystem(self)?.values.iter().product())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.dim && j < self.dim);
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.dim && j < self.dim);
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut out = *self;
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n).map(|k| self[(i, k)] * rhs[(k, j)]).sum();
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let mut out = *self;
        out.data
            .iter_mut()
            .zip(rhs.data.iter())
            .for_each(|(a, b)| *a += b);
        out
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let mut out = *self;
        out.data
            .iter_mut()
            .zip(rhs.data.iter())
            .for_each(|(a, b)| *a -= b);
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_row_major(2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
        .expect("2x2")
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_row_major(2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
        .expect("2x2")
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[1.0, -1.0]).expect("2x2")
}

/// Tensor product of two single-qubit operators; entry `(2i+k, 2j+l) = a[i][j]·b[k][l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim != 2 || b.dim != 2 {
        return Err(Error::InvalidArgument(format!(
            "kron expects two 2x2 operands, got {}x{} and {}x{}",
            a.dim, a.dim, b.dim, b.dim
        )));
    }
    let mut out = ComplexMatrix::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Eigenvalues (ascending) and matching orthonormal eigenvectors (as columns).
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigensystem {
    /// `V · diag(f(λ)) · V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mut out = ComplexMatrix::zeros(n).expect("valid dim");
        for (k, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += self.vectors[(i, k)] * self.vectors[(j, k)].conj() * w;
                }
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.
///
/// Each eigenvector's global phase is fixed so that its first nonzero
/// component is real and positive.
pub fn hermitian_eigensystem(m: &ComplexMatrix) -> Result<Eigensystem> {
    let dev = m.hermitian_deviation();
    if dev.is_nan() || dev > EIGEN_HERMITIAN_TOL {
        return Err(Error::InvalidArgument(format!(
            "matrix is not Hermitian (deviation {dev:e})"
        )));
    }
    let n = m.dim();
    // Symmetrize so round-off in the input cannot stall the sweep.
    let mut a = m.adjoint();
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (a[(i, j)] + m[(i, j)]) * 0.5;
        }
        a[(i, i)] = c(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n)?;
    let threshold = JACOBI_TOLERANCE * m.frobenius_norm().max(1.0);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::Numeric(format!(
            "Jacobi eigensolver did not converge within {JACOBI_MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n)?;
    for (col, &k) in order.iter().enumerate() {
        let pivot = (0..n)
            .map(|i| v[(i, k)])
            .find(|z| z.norm() > 1e-12)
            .unwrap_or(c(1.0, 0.0));
        let phase = pivot.conj() / pivot.norm();
        for i in 0..n {
            vectors[(i, col)] = v[(i, k)] * phase;
        }
    }
    Ok(Eigensystem { values, vectors })
}

/// One rotation zeroing `a[p][q]`: `a ← R† a R`, `v ← v R` with
/// `R = diag-phase · Givens`, `R_pp = c, R_pq = s, R_qp = -s·e*, R_qq = c·e*`,
/// where `e` is the phase of `a[p][q]`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let e = apq / g;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    let r_pp = c(cs, 0.0);
    let r_pq = c(sn, 0.0);
    let r_qp = e.conj() * -sn;
    let r_qq = e.conj() * cs;

    let n = a.dim();
    // a ← a R
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * r_pp + akq * r_qp;
        a[(k, q)] = akp * r_pq + akq * r_qq;
    }
    // a ← R† a
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = r_pp.conj() * apk + r_qp.conj() * aqk;
        a[(q, k)] = r_pq.conj() * apk + r_qq.conj() * aqk;
    }
    a[(p, q)] = c(0.0, 0.0);
    a[(q, p)] = c(0.0, 0.0);
    a[(p, p)] = c(a[(p, p)].re, 0.0);
    a[(q, q)] = c(a[(q, q)].re, 0.0);
    // v ← v R
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * r_pp + vkq * r_qp;
        v[(k, q)] = vkp * r_pq + vkq * r_qq;
    }
}

fn require_two_qubit(m: &ComplexMatrix, op: &str) -> Result<()> {
    if m.dim() != 4 {
        return Err(Error::InvalidArgument(format!(
            "{op} expects a 4x4 matrix, got {}x{}",
            m.dim(),
            m.dim()
        )));
    }
    Ok(())
}

/// Partial transpose over the first qubit: `out[2a+b][2c+d] = m[2c+b][2a+d]`.
pub fn partial_transpose_first(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_two_qubit(m, "partial_transpose_first")?;
    let mut out = *m;
    for a in 0..2 {
        for b in 0..2 {
            for cc in 0..2 {
                for d in 0..2 {
                    out[(2 * a + b, 2 * cc + d)] = m[(2 * cc + b, 2 * a + d)];
                }
            }
        }
    }
    Ok(out)
}

/// Partial transpose over the second qubit: `out[2a+b][2c+d] = m[2a+d][2c+b]`.
pub fn partial_transpose_second(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_two_qubit(m, "partial_transpose_second")?;
    let mut out = *m;
    for a in 0..2 {
        for b in 0..2 {
            for cc in 0..2 {
                for d in 0..2 {
                    out[(2 * a + b, 2 * cc + d)] = m[(2 * a + d, 2 * cc + b)];
                }
            }
        }
    }
    Ok(out)
}

/// Which qubit survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

pub fn partial_trace(m: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    require_two_qubit(m, "partial_trace")?;
    let mut out = ComplexMatrix::zeros(2)?;
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = (0..2)
                .map(|k| match keep {
                    Subsystem::First => m[(2 * i + k, 2 * j + k)],
                    Subsystem::Second => m[(2 * k + i, 2 * k + j)],
                })
                .sum();
        }
    }
    Ok(out)
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let dev = mat.hermitian_deviation();
        if dev.is_nan() || dev > DENSITY_HERMITIAN_TOL {
            return Err(Error::InvalidArgument(format!(
                "density matrix is not Hermitian (deviation {dev:e})"
            )));
        }
        let tr = mat.trace();
        let trace_err = (tr - c(1.0, 0.0)).norm();
        if trace_err.is_nan() || trace_err > DENSITY_TRACE_TOL {
            return Err(Error::InvalidArgument(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        let eig = hermitian_eigensystem(&mat)?;
        let min = eig.values[0];
        if min < -DENSITY_PSD_TOL {
            return Err(Error::InvalidArgument(format!(
                "density matrix is not positive semidefinite (min eigenvalue {min:e})"
            )));
        }
        Ok(Self { mat })
    }

    /// Pure state `|ψ><ψ|`; the vector is normalized first.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let normalized: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&normalized)?)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let m = ComplexMatrix::identity(dim)?.scale(c(1.0 / dim as f64, 0.0));
        Self::new(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

/// Von Neumann entropy `-Tr[ρ log₂ ρ]` in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eig = hermitian_eigensystem(rho.matrix())?;
    entropy_of_spectrum(&eig.values)
}

/// Shannon entropy (bits) of a density-matrix spectrum with round-off clipping.
pub(crate) fn entropy_of_spectrum(values: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in values {
        if lambda < -DENSITY_PSD_TOL {
            return Err(Error::InvalidArgument(format!(
                "negative eigenvalue {lambda:e} in entropy"
            )));
        }
        if lambda > ENTROPY_ZERO_CUTOFF {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s.max(0.0))
}
