//! Dense complex linear algebra on small Hilbert spaces.
//!
//! Everything operates on row-major [`CMatrix`] values over `Complex64`.
//! Composite bases follow the Kronecker convention used across the crate:
//! the two-site basis state |λμ⟩ sits at index λ·n + μ, and
//! `kron(a, b)` places `a[(i, j)] * b[(k, l)]` at row `i * b.rows + k`,
//! column `j * b.cols + l`.
//!
//! The eigensolver is a cyclic Jacobi iteration restricted to Hermitian
//! input. At the dimensions used here (at most a few dozen) it reaches
//! near machine precision in a handful of sweeps and keeps the crate free
//! of external linear-algebra backends.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex double-precision scalar used across the crate.
pub type C64 = Complex64;

/// Off-diagonal Frobenius mass, relative to the input norm, at which the
/// Jacobi sweep is considered converged.
const JACOBI_OFF_TOL: f64 = 1e-14;

/// Hard cap on Jacobi sweeps before reporting non-convergence.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Relative Hermiticity gate applied to eigensolver input.
const HERMITICITY_TOL: f64 = 1e-10;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    /// Builds a matrix from row-major data, checking shape and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries cannot fill a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Numeric("matrix entry is not finite".into()));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm of A - A†.
    pub fn hermiticity_residual(&self) -> f64 {
        assert!(self.is_square());
        let mut sum = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                sum += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        sum.sqrt()
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Kronecker product, row-major block convention.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = CMatrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl std::ops::Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Kronecker product of two matrices (free-function form of [`CMatrix::kron`]).
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kron(b)
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Inner product ⟨u|v⟩ with the left argument conjugated.
pub fn vec_inner(u: &[C64], v: &[C64]) -> C64 {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Outer product |u⟩⟨v|.
pub fn outer(u: &[C64], v: &[C64]) -> CMatrix {
    CMatrix::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
}

/// Which factor of a bipartite space survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    A,
    B,
}

/// Partial trace of a density matrix on a bipartite space of shape
/// `dims = (n_a, n_b)`. `Keep::A` traces out the second factor and
/// returns an `n_a` x `n_a` matrix; `Keep::B` the other way around.
pub fn partial_trace(rho: &CMatrix, dims: (usize, usize), keep: Keep) -> Result<CMatrix> {
    let (na, nb) = dims;
    if !rho.is_square() || rho.rows() != na * nb {
        return Err(Error::DimensionMismatch(format!(
            "partial trace expects a {}x{} matrix, got {}x{}",
            na * nb,
            na * nb,
            rho.rows(),
            rho.cols()
        )));
    }
    let out = match keep {
        Keep::A => CMatrix::from_fn(na, na, |i, j| {
            (0..nb).map(|k| rho[(i * nb + k, j * nb + k)]).sum()
        }),
        Keep::B => CMatrix::from_fn(nb, nb, |k, l| {
            (0..na).map(|i| rho[(i * nb + k, i * nb + l)]).sum()
        }),
    };
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix: `values` ascending and real,
/// `vectors` unitary with the j-th column the eigenvector of `values[j]`.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Sweeps annihilate each off-diagonal entry in turn with a complex Givens
/// rotation; the iteration stops once the off-diagonal Frobenius mass drops
/// below 1e-14 of the input norm. Deterministic for identical input.
pub fn hermitian_eig(a: &CMatrix) -> Result<HermEig> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigensolver expects a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let scale = a.frobenius_norm();
    let asym = a.hermiticity_residual();
    if asym > HERMITICITY_TOL * scale {
        return Err(Error::NotHermitian {
            residual: asym,
            tol: HERMITICITY_TOL * scale,
        });
    }

    // Iterate on the Hermitian part so roundoff asymmetry in the input
    // cannot bias the rotations.
    let mut m = CMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut v = CMatrix::identity(n);
    let target = JACOBI_OFF_TOL * scale;

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / r;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                // Smaller root of t^2 - 2 tau t - 1 = 0 for a bounded angle.
                let t = -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = phase * s;
                let spc = phase.conj() * s;

                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * c + akq * spc;
                    m[(k, q)] = -akp * sp + akq * c;
                }
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = apk * c + aqk * sp;
                    m[(q, k)] = -apk * spc + aqk * c;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c + vkq * spc;
                    v[(k, q)] = -vkp * sp + vkq * c;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > target {
        return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermEig { values, vectors })
}

fn off_diagonal_norm(m: &CMatrix) -> f64 {
    let n = m.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Applies a spectral function to a Hermitian matrix: V f(Λ) V†.
pub fn func_hermitian(a: &CMatrix, f: impl Fn(f64) -> C64) -> Result<CMatrix> {
    let eig = hermitian_eig(a)?;
    let n = a.rows();
    let v = &eig.vectors;
    // Scale columns of V by f(λ_j), then close with V†.
    let scaled = CMatrix::from_fn(n, n, |i, j| v[(i, j)] * f(eig.values[j]));
    Ok(&scaled * &v.dagger())
}

/// exp(scale * A) for Hermitian A, via eigendecomposition.
pub fn mat_exp_hermitian(a: &CMatrix, scale: f64) -> Result<CMatrix> {
    func_hermitian(a, |lambda| C64::new((scale * lambda).exp(), 0.0))
}
