//! Independent reference implementations used to check the solver: a cyclic
//! Jacobi eigendecomposition for symmetric matrices, the logarithm and
//! exponential through that decomposition, and the near-identity Taylor log
//! series. None of these touch a [`crate::CostLedger`].

use alloc::vec::Vec;
use core::fmt;

use crate::matrix::{frobenius_norm, matmul, scale, subtract, Matrix, MatrixError};

#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    Matrix(MatrixError),
    /// Input is not symmetric to the required tolerance.
    Asymmetric { residual: f64 },
    /// Jacobi sweeps did not reduce the off-diagonal mass in budget.
    NoConvergence { sweeps: u32 },
    /// Logarithm requested for a non-positive eigenvalue.
    NonPositiveEigenvalue { value: f64 },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Matrix(e) => write!(f, "{e}"),
            OracleError::Asymmetric { residual } => {
                write!(f, "matrix is not symmetric (residual {residual})")
            }
            OracleError::NoConvergence { sweeps } => {
                write!(f, "Jacobi did not converge within {sweeps} sweeps")
            }
            OracleError::NonPositiveEigenvalue { value } => {
                write!(f, "non-positive eigenvalue {value}")
            }
        }
    }
}

impl core::error::Error for OracleError {}

impl From<MatrixError> for OracleError {
    fn from(e: MatrixError) -> Self {
        OracleError::Matrix(e)
    }
}

/// `A = V diag(eigenvalues) V^T` with orthogonal `V` (eigenvectors in
/// columns, eigenvalues ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    /// Reassembles `V diag(g(λ)) V^T`.
    pub fn apply(&self, g: impl Fn(f64) -> f64) -> Matrix {
        let n = self.eigenvalues.len();
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut sum = 0.0;
                for (k, &lam) in self.eigenvalues.iter().enumerate() {
                    sum += self.eigenvectors.get(i, k) * g(lam) * self.eigenvectors.get(j, k);
                }
                out.set(i, j, sum);
            }
        }
        out
    }
}

const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TARGET: f64 = 1e-14;
const MAX_SWEEPS: u32 = 50;

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let x = a.get(i, j);
                sum += x * x;
            }
        }
    }
    libm::sqrt(sum)
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass drops below
/// `1e-14 * |A|_F`.
pub fn jacobi_eigendecomposition(a: &Matrix) -> Result<EigenDecomposition, OracleError> {
    let norm = frobenius_norm(a);
    let asym = frobenius_norm(&subtract(&a.transpose(), a)?);
    if asym > SYMMETRY_TOL * norm.max(1.0) {
        return Err(OracleError::Asymmetric { residual: asym });
    }
    let n = a.dim();
    let mut work = a.clone();
    let mut vectors = Matrix::identity(n);
    let target = OFF_DIAGONAL_TARGET * norm.max(f64::MIN_POSITIVE);

    let mut sweeps = 0;
    while off_diagonal_norm(&work) > target {
        if sweeps >= MAX_SWEEPS {
            return Err(OracleError::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = work.get(p, q);
                if libm::fabs(apq) <= target / (n as f64) {
                    continue;
                }
                let app = work.get(p, p);
                let aqq = work.get(q, q);
                // standard stable rotation choice
                let theta = (aqq - app) / (2.0 * apq);
                let t = {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = work.get(k, p);
                    let akq = work.get(k, q);
                    work.set(k, p, c * akp - s * akq);
                    work.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = work.get(p, k);
                    let aqk = work.get(q, k);
                    work.set(p, k, c * apk - s * aqk);
                    work.set(q, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = vectors.get(k, p);
                    let vkq = vectors.get(k, q);
                    vectors.set(k, p, c * vkp - s * vkq);
                    vectors.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work.get(i, i).partial_cmp(&work.get(j, j)).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| work.get(i, i)).collect();
    let mut sorted_vectors = Matrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            sorted_vectors.set(row, col, vectors.get(row, src));
        }
    }
    Ok(EigenDecomposition { eigenvalues, eigenvectors: sorted_vectors })
}

/// `ln A` for symmetric positive definite `A` via eigendecomposition.
pub fn logm_oracle(a: &Matrix) -> Result<Matrix, OracleError> {
    let decomp = jacobi_eigendecomposition(a)?;
    if let Some(&bad) = decomp.eigenvalues.iter().find(|&&x| x <= 0.0) {
        return Err(OracleError::NonPositiveEigenvalue { value: bad });
    }
    Ok(decomp.apply(libm::log))
}

/// `e^A` for symmetric `A` via eigendecomposition.
pub fn expm_oracle(a: &Matrix) -> Result<Matrix, OracleError> {
    Ok(jacobi_eigendecomposition(a)?.apply(libm::exp))
}

/// Truncated Taylor log series `-Σ (I-A)^n / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorLog {
    pub value: Matrix,
    /// False when `|I - A|_F >= 1`, i.e. outside the series' convergence
    /// domain.
    pub in_domain: bool,
}

pub fn taylor_log_series(a: &Matrix, terms: u32) -> Result<TaylorLog, MatrixError> {
    debug_assert!(terms >= 1);
    let m = subtract(&Matrix::identity(a.dim()), a)?;
    let in_domain = frobenius_norm(&m) < 1.0;
    let mut power = m.clone();
    let mut sum = m.clone();
    for n in 2..=terms {
        power = matmul(&power, &m);
        sum = crate::matrix::add(&sum, &scale(&power, 1.0 / f64::from(n)))?;
    }
    Ok(TaylorLog { value: scale(&sum, -1.0), in_domain })
}
