//! Matrix exponential by scaling and squaring with truncated Taylor
//! approximants.
//!
//! `e^B` is computed as `[exp(B/2^j)]^(2^j)` with a degree-`k` Taylor
//! approximant on the scaled matrix, costing exactly `k + j - 1` matrix
//! multiplications: `k - 1` for the incremental Taylor terms plus `j`
//! squarings.

use crate::matrix::{add, add_scaled_identity, frobenius_norm, multiply, scale, CostCategory,
    CostLedger, Matrix, MatrixError};

/// Scaling target: `j` is chosen so the scaled norm drops below this.
pub const DEFAULT_THETA: f64 = 0.5;

/// Scaling depth and Taylor order for one exponential evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpPlan {
    /// Number of squarings.
    pub j: u32,
    /// Taylor order (highest retained power), at least 2.
    pub k: u32,
    /// Frobenius norm of the scaled matrix `B / 2^j`.
    pub scaled_norm: f64,
}

impl ExpPlan {
    /// Matrix multiplications this plan will spend.
    pub fn cost(&self) -> u64 {
        u64::from(self.k) + u64::from(self.j) - 1
    }
}

/// Chooses the scaling depth and Taylor order for a matrix of norm `norm_b`:
/// `j` is the smallest depth with `|B|/2^j <= theta`, and `k` the smallest
/// order whose leading remainder term `s^(k+1)/(k+1)!` drops below `eps`.
///
/// Keeping the factorial in the truncation test makes the actual truncation
/// error track `eps` instead of collapsing to machine precision, which is
/// what lets the solver's round-trip error scale linearly with the stopping
/// threshold.
pub fn plan_exp(norm_b: f64, eps: f64) -> ExpPlan {
    plan_exp_with_theta(norm_b, eps, DEFAULT_THETA)
}

pub fn plan_exp_with_theta(norm_b: f64, eps: f64, theta: f64) -> ExpPlan {
    debug_assert!(norm_b.is_finite() && norm_b >= 0.0);
    debug_assert!(eps > 0.0 && eps < 1.0);
    let mut j = 0u32;
    let mut scaled = norm_b;
    while scaled > theta {
        scaled *= 0.5;
        j += 1;
    }
    let mut k = 1u32;
    let mut remainder = scaled * scaled / 2.0;
    while remainder > eps {
        k += 1;
        remainder *= scaled / f64::from(k + 1);
    }
    ExpPlan { j, k: k.max(2), scaled_norm: scaled }
}

/// Matrix exponential. Charges exactly `plan.cost()` multiplications to the
/// ledger's exponential category.
pub fn expm(b: &Matrix, eps: f64, ledger: &mut CostLedger) -> Result<Matrix, MatrixError> {
    let plan = plan_exp(frobenius_norm(b), eps);
    expm_with_plan(b, plan, ledger)
}

/// Exponential with an explicitly chosen plan (tests force `j = 0` through
/// this to check the squaring identity).
pub fn expm_with_plan(
    b: &Matrix,
    plan: ExpPlan,
    ledger: &mut CostLedger,
) -> Result<Matrix, MatrixError> {
    let scaled = scale(b, libm::exp2(-f64::from(plan.j)));
    // result = I + B' + sum_{m=2..k} B'^m / m!
    let mut result = add_scaled_identity(&scaled, 1.0);
    let mut term = scaled.clone();
    for m in 2..=plan.k {
        term = multiply(&term, &scaled, ledger, CostCategory::Exp)?;
        term = scale(&term, 1.0 / f64::from(m));
        result = add(&result, &term)?;
    }
    for _ in 0..plan.j {
        result = multiply(&result, &result, ledger, CostCategory::Exp)?;
    }
    Ok(result)
}
