//! Fixed-point matrix-logarithm solver.
//!
//! Iterates the coupled recurrence
//!
//! ```text
//! X_{n+1} = A Y_n - I + X_n
//! Y_{n+1} = Y_n exp(-(A Y_n - I))
//! ```
//!
//! starting from an initializer that commutes with `A`. `X_n` converges to
//! `ln A` and `Y_n` to `A^{-1}` when the initial deviation lies in the
//! convergence region; each step costs two ledgered fixed-point products
//! plus the inner exponential's multiplications.

use core::fmt;

use crate::expm::expm;
use crate::matrix::{add, add_scaled_identity, frobenius_norm, inverse, matmul, multiply, scale,
    subtract, CostCategory, CostLedger, Matrix, MatrixError};

/// Interval certified to contain the (real, positive) spectrum of `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralBounds {
    pub lambda_min: f64,
    pub lambda_max: f64,
}

/// Choice of starting matrix `X_0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Initializer {
    /// `X_0 = 2A - (1 + ln 2) I`, the linear initializer specialized to a
    /// spectrum in (0, 1].
    PaperDefault,
    /// Linear initializer from spectral bounds; `None` derives bounds from
    /// Gershgorin discs.
    LinearFromBounds(Option<SpectralBounds>),
    /// Caller-supplied `X_0`; must commute with `A` for the convergence
    /// guarantees to apply.
    UserMatrix(Matrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointConfig {
    /// Stopping threshold for `|X_n| * |X_{n+1} - X_n|`.
    pub eps: f64,
    /// Truncation threshold for the inner exponentials.
    pub eps_exp: f64,
    pub max_iter: u32,
    pub init: Initializer,
    /// Pre-scaling factor: the solver works on `A / sigma` and adds
    /// `ln(sigma) I` back at the end.
    pub sigma: f64,
    /// Apply one refinement step after convergence.
    pub refine: bool,
    pub refine_eps: f64,
}

impl FixedPointConfig {
    /// Defaults for a given stopping threshold: `eps_exp = eps / 10`,
    /// 500 iterations, paper-default initializer, no scaling, no refinement.
    pub fn new(eps: f64) -> Self {
        Self {
            eps,
            eps_exp: eps / 10.0,
            max_iter: 500,
            init: Initializer::PaperDefault,
            sigma: 1.0,
            refine: false,
            refine_eps: 1e-16,
        }
    }
}

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationReport {
    pub iterations: u32,
    pub converged: bool,
    /// Last evaluated `|X_n| * |X_{n+1} - X_n|`.
    pub stop_value: f64,
    pub ledger: CostLedger,
    pub refinement_applied: bool,
    /// `|A' Y_final - I|_F` where `A' = A / sigma` is the iterated matrix.
    pub inverse_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogmResult {
    pub x: Matrix,
    pub report: IterationReport,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LogmError {
    Matrix(MatrixError),
    /// Gershgorin discs do not certify a positive spectrum.
    NoPositiveSpectrum { lambda_max: f64 },
    /// Step sizes grew for five consecutive iterations above the initial
    /// step; the deviation left the convergence region.
    Diverged { iterations: u32, last_step: f64 },
}

impl fmt::Display for LogmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogmError::Matrix(e) => write!(f, "{e}"),
            LogmError::NoPositiveSpectrum { lambda_max } => {
                write!(f, "no positive-spectrum certificate (upper bound {lambda_max})")
            }
            LogmError::Diverged { iterations, last_step } => {
                write!(f, "iteration diverged after {iterations} steps (step size {last_step})")
            }
        }
    }
}

impl core::error::Error for LogmError {}

impl From<MatrixError> for LogmError {
    fn from(e: MatrixError) -> Self {
        LogmError::Matrix(e)
    }
}

/// Fraction of `lambda_max` used as a floor when the lower disc edge is
/// not positive.
const GERSHGORIN_FLOOR: f64 = 1e-8;

/// Encloses the spectrum with Gershgorin discs, clamping the lower edge to
/// a positive floor. Errors when even the upper edge is non-positive.
pub fn gershgorin_bounds(a: &Matrix) -> Result<SpectralBounds, LogmError> {
    let n = a.dim();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let radius: f64 = (0..n)
            .filter(|&j| j != i)
            .map(|j| libm::fabs(a.get(i, j)))
            .sum();
        let center = a.get(i, i);
        lo = lo.min(center - radius);
        hi = hi.max(center + radius);
    }
    if hi <= 0.0 {
        return Err(LogmError::NoPositiveSpectrum { lambda_max: hi });
    }
    let floor = GERSHGORIN_FLOOR * hi;
    Ok(SpectralBounds { lambda_min: lo.max(floor), lambda_max: hi })
}

/// Linear initializer `X_0 = [ln((l+u)/2) - 1] I + 2/(l+u) A`, the tangent
/// approximation of the logarithm at the midpoint of the spectral interval.
/// Commutes with `A` by construction.
pub fn init_linear(a: &Matrix, bounds: &SpectralBounds) -> Matrix {
    let mid = 0.5 * (bounds.lambda_min + bounds.lambda_max);
    add_scaled_identity(&scale(a, 1.0 / mid), libm::log(mid) - 1.0)
}

fn paper_default_init(a: &Matrix) -> Matrix {
    // Linear initializer specialized to bounds [~0, 1]: 2A - (1 + ln 2) I.
    add_scaled_identity(&scale(a, 2.0), -(1.0 + core::f64::consts::LN_2))
}

const DIVERGENCE_STREAK: u32 = 5;

/// Computes `ln A` by the fixed-point iteration.
///
/// Non-convergence within `max_iter` is not an error: the best iterate is
/// returned with `converged = false`. Sustained step-size growth is reported
/// as [`LogmError::Diverged`].
pub fn fixed_point_logm(a: &Matrix, config: &FixedPointConfig) -> Result<LogmResult, LogmError> {
    let a_scaled = if config.sigma == 1.0 { a.clone() } else { scale(a, 1.0 / config.sigma) };
    let mut ledger = CostLedger::new();

    let x0 = match &config.init {
        Initializer::PaperDefault => paper_default_init(&a_scaled),
        Initializer::LinearFromBounds(Some(bounds)) => init_linear(&a_scaled, bounds),
        Initializer::LinearFromBounds(None) => {
            let bounds = gershgorin_bounds(&a_scaled)?;
            init_linear(&a_scaled, &bounds)
        }
        Initializer::UserMatrix(m) => {
            if m.dim() != a.dim() {
                return Err(MatrixError::DimMismatch { left: a.dim(), right: m.dim() }.into());
            }
            m.clone()
        }
    };

    let mut x = x0;
    let mut y = expm(&scale(&x, -1.0), config.eps_exp, &mut ledger)?;

    let mut iterations = 0u32;
    let mut converged = false;
    let mut stop_value = f64::INFINITY;
    let mut initial_step: Option<f64> = None;
    let mut prev_step = f64::INFINITY;
    let mut growth_streak = 0u32;

    while iterations < config.max_iter {
        let ay = multiply(&a_scaled, &y, &mut ledger, CostCategory::FixedPoint)?;
        let ay_minus_i = add_scaled_identity(&ay, -1.0);
        let x_next = add(&x, &ay_minus_i)?;
        let step = frobenius_norm(&ay_minus_i);
        stop_value = frobenius_norm(&x) * step;
        if !step.is_finite() {
            return Err(LogmError::Diverged { iterations, last_step: step });
        }

        let e = expm(&scale(&ay_minus_i, -1.0), config.eps_exp, &mut ledger)?;
        y = multiply(&y, &e, &mut ledger, CostCategory::FixedPoint)?;
        x = x_next;
        iterations += 1;

        if stop_value <= config.eps {
            converged = true;
            break;
        }
        match initial_step {
            None => initial_step = Some(step),
            Some(s0) => {
                if step > prev_step && step > s0 {
                    growth_streak += 1;
                    if growth_streak >= DIVERGENCE_STREAK {
                        return Err(LogmError::Diverged { iterations, last_step: step });
                    }
                } else {
                    growth_streak = 0;
                }
            }
        }
        prev_step = step;
    }

    let inverse_residual =
        frobenius_norm(&add_scaled_identity(&matmul(&a_scaled, &y), -1.0));

    let mut x_final = if config.sigma == 1.0 {
        x
    } else {
        add_scaled_identity(&x, libm::log(config.sigma))
    };

    let mut refinement_applied = false;
    if config.refine && converged {
        x_final = refine(a, &x_final, config.refine_eps, &mut ledger)?;
        refinement_applied = true;
    }

    Ok(LogmResult {
        x: x_final,
        report: IterationReport {
            iterations,
            converged,
            stop_value,
            ledger,
            refinement_applied,
            inverse_residual,
        },
    })
}

/// One step of `X - (1/2)[A^{-1} e^X - A e^{-X}]`, a locally higher-order
/// correction. Only valid near `ln A`.
pub fn refine(
    a: &Matrix,
    x: &Matrix,
    refine_eps: f64,
    ledger: &mut CostLedger,
) -> Result<Matrix, LogmError> {
    let a_inv = inverse(a)?;
    let e_pos = expm(x, refine_eps, ledger)?;
    let e_neg = expm(&scale(x, -1.0), refine_eps, ledger)?;
    let t1 = multiply(&a_inv, &e_pos, ledger, CostCategory::FixedPoint)?;
    let t2 = multiply(a, &e_neg, ledger, CostCategory::FixedPoint)?;
    let correction = scale(&subtract(&t1, &t2)?, 0.5);
    Ok(subtract(x, &correction)?)
}

/// Round-trip error `|exp(X) - A|_F / |A|_F`, with the exponential taken at
/// full precision. Does not touch the solver's ledger.
pub fn error_estimate(a: &Matrix, x: &Matrix) -> Result<f64, MatrixError> {
    let mut scratch = CostLedger::new();
    let e = expm(x, 1e-16, &mut scratch)?;
    Ok(frobenius_norm(&subtract(&e, a)?) / frobenius_norm(a))
}
