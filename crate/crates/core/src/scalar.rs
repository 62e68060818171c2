//! Complex-scalar convergence analysis of the deviation map
//! `λ ↦ e^{-λ} + λ - 1`.
//!
//! When the iterate commutes with `A`, the eigenvalues of the deviation from
//! `ln A` evolve under this scalar map; its basin of per-step contraction is
//! the region `V = {λ : |e^{-λ} + λ - 1| ≤ |λ|}`.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

/// One step of the deviation recurrence: `e^{-λ} + λ - 1`.
pub fn deviation_map(lambda: Complex64) -> Complex64 {
    (-lambda).exp() + lambda - Complex64::new(1.0, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarError {
    /// λ = 0 is the fixed point; membership and the indicator are undefined
    /// there.
    ZeroLambda,
    /// The orbit overflowed (`e^{-Δ}` left the representable range).
    Overflow { step: usize },
    /// Range with `min >= max`.
    EmptyRange,
    /// Grid resolution below 2.
    ResolutionTooSmall { resolution: usize },
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::ZeroLambda => write!(f, "lambda = 0 is the fixed point"),
            ScalarError::Overflow { step } => write!(f, "orbit overflowed at step {step}"),
            ScalarError::EmptyRange => write!(f, "range is empty or inverted"),
            ScalarError::ResolutionTooSmall { resolution } => {
                write!(f, "grid resolution {resolution} below minimum of 2")
            }
        }
    }
}

impl core::error::Error for ScalarError {}

/// Whether λ lies in the contraction region `V` (boundary inclusive).
pub fn in_region_v(lambda: Complex64) -> Result<bool, ScalarError> {
    if lambda == Complex64::new(0.0, 0.0) {
        return Err(ScalarError::ZeroLambda);
    }
    Ok(deviation_map(lambda).norm_sqr() <= lambda.norm_sqr())
}

/// The density-plot indicator `f(λ) = ln|e^{-λ}+λ-1|² - ln|λ|²`; negative
/// strictly inside `V`, zero on its boundary. Returns `-inf` at λ = 0 where
/// the true limit is `-∞`.
pub fn f_indicator(lambda: Complex64) -> f64 {
    if lambda == Complex64::new(0.0, 0.0) {
        return f64::NEG_INFINITY;
    }
    libm::log(deviation_map(lambda).norm_sqr()) - libm::log(lambda.norm_sqr())
}

/// Uniformly sampled `f(λ)` over a complex-plane rectangle, row-major with
/// the imaginary axis ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionGrid {
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    pub resolution: usize,
    /// `resolution²` values, index `row * resolution + col` with `row` along
    /// the imaginary axis.
    pub values: Vec<f64>,
}

impl RegionGrid {
    pub fn re_at(&self, col: usize) -> f64 {
        grid_coord(self.re_range, self.resolution, col)
    }

    pub fn im_at(&self, row: usize) -> f64 {
        grid_coord(self.im_range, self.resolution, row)
    }
}

// Symmetric interpolation so a centered symmetric range hits 0.0 exactly.
fn grid_coord(range: (f64, f64), resolution: usize, index: usize) -> f64 {
    let steps = (resolution - 1) as f64;
    let i = index as f64;
    (range.0 * (steps - i) + range.1 * i) / steps
}

pub fn region_grid(
    re_range: (f64, f64),
    im_range: (f64, f64),
    resolution: usize,
) -> Result<RegionGrid, ScalarError> {
    if resolution < 2 {
        return Err(ScalarError::ResolutionTooSmall { resolution });
    }
    if !(re_range.0 < re_range.1) || !(im_range.0 < im_range.1) {
        return Err(ScalarError::EmptyRange);
    }
    let mut values = Vec::with_capacity(resolution * resolution);
    for row in 0..resolution {
        let im = grid_coord(im_range, resolution, row);
        for col in 0..resolution {
            let re = grid_coord(re_range, resolution, col);
            values.push(f_indicator(Complex64::new(re, im)));
        }
    }
    Ok(RegionGrid { re_range, im_range, resolution, values })
}

/// Iterates the deviation map from `λ₀`; errors with the completed step count
/// when the orbit leaves the representable range.
pub fn scalar_orbit(lambda0: Complex64, n_steps: usize) -> Result<Vec<Complex64>, ScalarError> {
    let mut orbit = Vec::with_capacity(n_steps + 1);
    orbit.push(lambda0);
    let mut current = lambda0;
    for step in 0..n_steps {
        current = deviation_map(current);
        if !current.re.is_finite() || !current.im.is_finite() {
            return Err(ScalarError::Overflow { step });
        }
        orbit.push(current);
    }
    Ok(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn deviation_map_cases() {
        assert_eq!(deviation_map(c(0.0, 0.0)), c(0.0, 0.0));
        let d = deviation_map(c(1.0, 0.0));
        assert!((d.re - (-1f64).exp()).abs() < 1e-15);
        assert!(d.im.abs() < 1e-15);
        // branch fixed points of the shifted map: 2kπi -> 2kπi
        for k in [1.0, -2.0] {
            let lam = c(0.0, 2.0 * k * PI);
            let d = deviation_map(lam);
            assert!((d - lam).norm() < 1e-13);
        }
    }

    #[test]
    fn region_membership() {
        assert!(in_region_v(c(1.0, 0.0)).unwrap());
        assert!(in_region_v(c(-1.2564, 0.0)).unwrap());
        assert!(!in_region_v(c(0.0, PI)).unwrap());
        assert!(matches!(in_region_v(c(0.0, 0.0)), Err(ScalarError::ZeroLambda)));
    }

    #[test]
    fn indicator_values() {
        assert!((f_indicator(c(1.0, 0.0)) + 2.0).abs() < 1e-12);
        let e = core::f64::consts::E;
        let want = 2.0 * (e - 2.0).ln();
        assert!((f_indicator(c(-1.0, 0.0)) - want).abs() < 1e-12);
        assert!((want + 0.6621).abs() < 1e-3);
        assert_eq!(f_indicator(c(0.0, 0.0)), f64::NEG_INFINITY);
    }

    #[test]
    fn grid_center_sentinel() {
        let g = region_grid((-PI, PI), (-PI, PI), 3).unwrap();
        assert_eq!(g.values.len(), 9);
        assert_eq!(g.values[4], f64::NEG_INFINITY);
        assert_eq!(g.re_at(1), 0.0);
        assert_eq!(g.im_at(1), 0.0);
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert!(matches!(
            region_grid((1.0, -1.0), (-1.0, 1.0), 3),
            Err(ScalarError::EmptyRange)
        ));
        assert!(matches!(
            region_grid((-1.0, 1.0), (-1.0, 1.0), 1),
            Err(ScalarError::ResolutionTooSmall { resolution: 1 })
        ));
    }

    #[test]
    fn orbit_cases() {
        let zero = scalar_orbit(c(0.0, 0.0), 4).unwrap();
        assert!(zero.iter().all(|z| *z == c(0.0, 0.0)));

        // independent real-scalar route for the expected orbit
        let orbit = scalar_orbit(c(1.0, 0.0), 4).unwrap();
        let mut want = 1.0f64;
        for got in &orbit {
            assert!((got.re - want).abs() < 1e-12, "{got} vs {want}");
            assert!(got.im.abs() < 1e-15);
            want = (-want).exp() + want - 1.0;
        }
        assert!((orbit[1].re - 0.36787944117144233).abs() < 1e-15);
        // quadratic tail: each deviation is about half the square of the last
        assert!(orbit[2].re < 0.5 * orbit[1].re * orbit[1].re);

        // large real deviations shrink by about 1 per step
        let orbit = scalar_orbit(c(17.0, 0.0), 3).unwrap();
        for (i, z) in orbit.iter().enumerate() {
            assert!((z.re - (17.0 - i as f64)).abs() < 1e-4);
        }
    }

    #[test]
    fn orbit_overflow_reported() {
        let r = scalar_orbit(c(-800.0, 0.0), 3);
        assert!(matches!(r, Err(ScalarError::Overflow { step: 0 })));
    }
}
