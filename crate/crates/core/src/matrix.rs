//! Dense real square matrices with explicit multiplication-cost accounting.
//!
//! Matrix-matrix products are the only ledgered operation; additions, scalings,
//! norms and linear solves are free. This matches the cost model of the solver,
//! which reports work purely in matrix multiplications.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Which side of the cost split a multiplication is charged to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostCategory {
    /// Products performed by the outer fixed-point iteration itself.
    FixedPoint,
    /// Products performed while evaluating matrix exponentials.
    Exp,
}

/// Counts matrix-matrix multiplications, split between the fixed-point
/// iteration and the exponential evaluations it drives.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CostLedger {
    pub fixed_point_muls: u64,
    pub exp_muls: u64,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge(&mut self, category: CostCategory) {
        match category {
            CostCategory::FixedPoint => self.fixed_point_muls += 1,
            CostCategory::Exp => self.exp_muls += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.fixed_point_muls + self.exp_muls
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixError {
    /// Operand dimensions do not agree.
    DimMismatch { left: usize, right: usize },
    /// A constructor received a NaN or infinite entry.
    NonFinite,
    /// Entry count does not form a square matrix.
    NotSquare { len: usize },
    /// Elimination hit a pivot below the singularity floor.
    Singular { column: usize },
    /// Householder vector is not normalized.
    NonUnitVector { norm_sq: f64 },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::DimMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            MatrixError::NonFinite => write!(f, "matrix entries must be finite"),
            MatrixError::NotSquare { len } => {
                write!(f, "{len} entries do not form a square matrix")
            }
            MatrixError::Singular { column } => {
                write!(f, "matrix is singular (pivot underflow in column {column})")
            }
            MatrixError::NonUnitVector { norm_sq } => {
                write!(f, "reflector vector must be unit length (|v|^2 = {norm_sq})")
            }
        }
    }
}

impl core::error::Error for MatrixError {}

/// Dense real square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries. Rejects non-square data and
    /// non-finite entries.
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self, MatrixError> {
        if data.len() != dim * dim {
            return Err(MatrixError::NotSquare { len: data.len() });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(MatrixError::NonFinite);
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let dim = entries.len();
        let mut m = Self::zeros(dim);
        for (i, &x) in entries.iter().enumerate() {
            m.data[i * dim + i] = x;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    fn check_dim(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }
}

/// Raw product without cost accounting. Internal building block; everything
/// that belongs to the measured algorithm must go through [`multiply`].
pub(crate) fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.dim;
    debug_assert_eq!(n, b.dim);
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a.data[i * n + k];
            if aik == 0.0 {
                continue;
            }
            let brow = &b.data[k * n..(k + 1) * n];
            let orow = &mut out.data[i * n..(i + 1) * n];
            for j in 0..n {
                orow[j] += aik * brow[j];
            }
        }
    }
    out
}

/// Matrix product, charging exactly one multiplication to `category`.
pub fn multiply(
    a: &Matrix,
    b: &Matrix,
    ledger: &mut CostLedger,
    category: CostCategory,
) -> Result<Matrix, MatrixError> {
    a.check_dim(b)?;
    ledger.charge(category);
    Ok(matmul(a, b))
}

/// Entrywise sum. Ledger-free.
pub fn add(a: &Matrix, b: &Matrix) -> Result<Matrix, MatrixError> {
    a.check_dim(b)?;
    let data = a.data.iter().zip(&b.data).map(|(x, y)| x + y).collect();
    Ok(Matrix { dim: a.dim, data })
}

/// Entrywise difference. Ledger-free.
pub fn subtract(a: &Matrix, b: &Matrix) -> Result<Matrix, MatrixError> {
    a.check_dim(b)?;
    let data = a.data.iter().zip(&b.data).map(|(x, y)| x - y).collect();
    Ok(Matrix { dim: a.dim, data })
}

/// Scalar multiple. Ledger-free.
pub fn scale(a: &Matrix, factor: f64) -> Matrix {
    let data = a.data.iter().map(|x| x * factor).collect();
    Matrix { dim: a.dim, data }
}

/// `a + c*I`. Ledger-free.
pub fn add_scaled_identity(a: &Matrix, c: f64) -> Matrix {
    let mut out = a.clone();
    for i in 0..out.dim {
        out.data[i * out.dim + i] += c;
    }
    out
}

pub fn frobenius_norm(a: &Matrix) -> f64 {
    libm::sqrt(a.data.iter().map(|x| x * x).sum())
}

/// `||ab - ba||_F`, a probe for how well two matrices commute.
pub fn commutator_residual(a: &Matrix, b: &Matrix) -> Result<f64, MatrixError> {
    a.check_dim(b)?;
    let ab = matmul(a, b);
    let ba = matmul(b, a);
    Ok(frobenius_norm(&subtract(&ab, &ba)?))
}

// A pivot is declared singular when its magnitude drops below this floor
// scaled by the row's norm.
const PIVOT_FLOOR: f64 = 1e-300;

/// Solves `a X = rhs` for square `rhs` by row elimination with partial
/// pivoting. Ledger-free.
pub fn solve(a: &Matrix, rhs: &Matrix) -> Result<Matrix, MatrixError> {
    a.check_dim(rhs)?;
    let n = a.dim;
    let mut lhs = a.clone();
    let mut out = rhs.clone();
    let row_scale: Vec<f64> = (0..n)
        .map(|i| {
            let s = lhs.data[i * n..(i + 1) * n].iter().map(|x| x * x).sum();
            libm::sqrt(s).max(1.0)
        })
        .collect();
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = libm::fabs(lhs.get(col, col));
        for r in col + 1..n {
            let mag = libm::fabs(lhs.get(r, col));
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag <= PIVOT_FLOOR * row_scale[pivot_row] {
            return Err(MatrixError::Singular { column: col });
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = lhs.get(col, j);
                lhs.set(col, j, lhs.get(pivot_row, j));
                lhs.set(pivot_row, j, tmp);
                let tmp = out.get(col, j);
                out.set(col, j, out.get(pivot_row, j));
                out.set(pivot_row, j, tmp);
            }
        }
        let pivot = lhs.get(col, col);
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = lhs.get(r, col) / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                let v = lhs.get(r, j) - factor * lhs.get(col, j);
                lhs.set(r, j, v);
            }
            for j in 0..n {
                let v = out.get(r, j) - factor * out.get(col, j);
                out.set(r, j, v);
            }
        }
    }
    for r in 0..n {
        let pivot = lhs.get(r, r);
        for j in 0..n {
            let v = out.get(r, j) / pivot;
            out.set(r, j, v);
        }
    }
    Ok(out)
}

/// Matrix inverse via [`solve`] against the identity. Ledger-free.
pub fn inverse(a: &Matrix) -> Result<Matrix, MatrixError> {
    solve(a, &Matrix::identity(a.dim))
}

const UNIT_VECTOR_TOL: f64 = 1e-12;

/// `Q^T D Q` with the Householder reflector `Q = I - 2 v v^T`, `|v| = 1`.
///
/// Since `Q` is orthogonal the result has exactly the spectrum of `d`;
/// for diagonal `d` it is symmetric.
pub fn householder_similarity(d: &Matrix, v: &[f64]) -> Result<Matrix, MatrixError> {
    if v.len() != d.dim {
        return Err(MatrixError::DimMismatch { left: d.dim, right: v.len() });
    }
    let norm_sq: f64 = v.iter().map(|x| x * x).sum();
    if libm::fabs(norm_sq - 1.0) > UNIT_VECTOR_TOL {
        return Err(MatrixError::NonUnitVector { norm_sq });
    }
    let n = d.dim;
    let mut q = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let x = q.get(i, j) - 2.0 * v[i] * v[j];
            q.set(i, j, x);
        }
    }
    // Q is symmetric, so Q^T D Q = Q D Q.
    Ok(matmul(&q, &matmul(d, &q)))
}
