//! Benchmark harness: random symmetric test matrices with a prescribed
//! eigenvalue distribution, a sweep over stopping thresholds, and cost/error
//! statistics per (dimension, threshold) cell.
//!
//! Sampling is driven by per-sample ChaCha streams derived from
//! `(master_seed, dim, sample_index)`, so results are reproducible and
//! independent of execution order.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::logm::{error_estimate, fixed_point_logm, refine, FixedPointConfig};
use crate::matrix::{householder_similarity, CostLedger, Matrix};

/// Eigenvalue law for the random test matrices.
#[derive(Debug, Clone, PartialEq)]
pub enum EigenvalueDistribution {
    /// Uniform on `[a, b]`.
    Uniform { interval: (f64, f64) },
    /// `rate * e^(-rate x)` truncated to `[a, b]`.
    Exponential { interval: (f64, f64), rate: f64 },
}

impl EigenvalueDistribution {
    pub const DEFAULT_INTERVAL: (f64, f64) = (1e-8, 1.0);
    pub const DEFAULT_RATE: f64 = 10.0;

    pub fn uniform_default() -> Self {
        Self::Uniform { interval: Self::DEFAULT_INTERVAL }
    }

    pub fn exponential_default() -> Self {
        Self::Exponential { interval: Self::DEFAULT_INTERVAL, rate: Self::DEFAULT_RATE }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub dims: Vec<usize>,
    pub samples: u32,
    pub eps_values: Vec<f64>,
    pub distribution: EigenvalueDistribution,
    pub master_seed: u64,
    pub refine: bool,
}

impl BenchConfig {
    /// Desk-scale defaults: 100 samples, dims {4, 8, 16}, uniform spectra.
    pub fn desk_scale() -> Self {
        Self {
            dims: alloc::vec![4, 8, 16],
            samples: 100,
            eps_values: alloc::vec![1e-2, 1e-4, 1e-6, 1e-8, 1e-10],
            distribution: EigenvalueDistribution::uniform_default(),
            master_seed: 0,
            refine: false,
        }
    }
}

/// One solver run on one sample matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub dim: usize,
    pub eps: f64,
    pub sample_index: u32,
    pub converged: bool,
    pub iterations: u32,
    pub fixed_point_muls: u64,
    pub exp_muls: u64,
    pub total_muls: u64,
    pub error_estimate: f64,
    pub error_after_refine: Option<f64>,
}

/// Aggregate over converged samples of one (dim, eps) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub dim: usize,
    pub eps: f64,
    pub mean_total_muls: f64,
    pub std_total_muls: f64,
    pub mean_fp_muls: f64,
    pub std_fp_muls: f64,
    pub median_error: f64,
    pub median_ci_low: f64,
    pub median_ci_high: f64,
    pub convergence_rate: f64,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Derives the per-sample RNG stream for `(master_seed, dim, sample_index)`.
pub fn sample_stream(master_seed: u64, dim: usize, sample_index: u32) -> ChaCha8Rng {
    let mut state = master_seed;
    let a = splitmix64(&mut state);
    state ^= dim as u64;
    let b = splitmix64(&mut state);
    state ^= u64::from(sample_index);
    let c = splitmix64(&mut state);
    ChaCha8Rng::seed_from_u64(a ^ b.rotate_left(17) ^ c.rotate_left(43))
}

/// Uniform draw in (0, 1).
fn next_unit(rng: &mut ChaCha8Rng) -> f64 {
    (((rng.next_u64() >> 11) as f64) + 0.5) * (1.0 / 9007199254740992.0)
}

/// Draws `dim` eigenvalues from the distribution. Truncated inverse-CDF
/// sampling for the exponential law.
pub fn sample_spectrum(
    dist: &EigenvalueDistribution,
    dim: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    (0..dim)
        .map(|_| {
            let u = next_unit(rng);
            match dist {
                EigenvalueDistribution::Uniform { interval: (a, b) } => a + u * (b - a),
                EigenvalueDistribution::Exponential { interval: (a, b), rate } => {
                    let tail = 1.0 - libm::exp(-rate * (b - a));
                    a - libm::log(1.0 - u * tail) / rate
                }
            }
        })
        .collect()
}

/// Unit vector of normalized standard normals (Box-Muller).
fn random_unit_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let mut v = Vec::with_capacity(dim);
        while v.len() < dim {
            let u1 = next_unit(rng);
            let u2 = next_unit(rng);
            let r = libm::sqrt(-2.0 * libm::log(u1));
            let angle = 2.0 * core::f64::consts::PI * u2;
            v.push(r * libm::cos(angle));
            if v.len() < dim {
                v.push(r * libm::sin(angle));
            }
        }
        let norm = libm::sqrt(v.iter().map(|x| x * x).sum());
        if norm > 1e-8 {
            for x in &mut v {
                *x /= norm;
            }
            return v;
        }
    }
}

/// Symmetric matrix with exactly the given spectrum, via a random
/// Householder similarity `Q^T diag(spectrum) Q`.
pub fn build_test_matrix(spectrum: &[f64], rng: &mut ChaCha8Rng) -> Matrix {
    let v = random_unit_vector(spectrum.len(), rng);
    householder_similarity(&Matrix::diagonal(spectrum), &v)
        .expect("unit vector by construction")
}

/// Sample median with order-statistic (binomial method) confidence bounds.
pub fn median_ci(values: &[f64], _level: f64) -> Option<(f64, f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    let z = 1.96;
    let nf = n as f64;
    let lo_rank = libm::floor((nf - z * libm::sqrt(nf)) / 2.0).max(1.0) as usize;
    let hi_rank = (libm::ceil(1.0 + (nf + z * libm::sqrt(nf)) / 2.0) as usize).min(n).max(1);
    Some((median, sorted[lo_rank - 1], sorted[hi_rank - 1]))
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, libm::sqrt(var))
}

/// Runs the full sweep. The same sample matrix is reused across the eps
/// sweep so cost/error trends are comparable cell to cell. Non-converged
/// runs are kept in the records but excluded from the summary statistics.
pub fn run_experiment(config: &BenchConfig) -> (Vec<SampleRecord>, Vec<SummaryRow>) {
    let mut records = Vec::new();
    for &dim in &config.dims {
        for sample_index in 0..config.samples {
            let mut rng = sample_stream(config.master_seed, dim, sample_index);
            let spectrum = sample_spectrum(&config.distribution, dim, &mut rng);
            let a = build_test_matrix(&spectrum, &mut rng);
            for &eps in &config.eps_values {
                let solver_config = FixedPointConfig::new(eps);
                let result = fixed_point_logm(&a, &solver_config);
                let record = match result {
                    Ok(r) => {
                        let error = error_estimate(&a, &r.x).unwrap_or(f64::NAN);
                        let error_after_refine = if config.refine && r.report.converged {
                            let mut scratch = CostLedger::new();
                            refine(&a, &r.x, 1e-16, &mut scratch)
                                .ok()
                                .and_then(|x| error_estimate(&a, &x).ok())
                        } else {
                            None
                        };
                        SampleRecord {
                            dim,
                            eps,
                            sample_index,
                            converged: r.report.converged,
                            iterations: r.report.iterations,
                            fixed_point_muls: r.report.ledger.fixed_point_muls,
                            exp_muls: r.report.ledger.exp_muls,
                            total_muls: r.report.ledger.total(),
                            error_estimate: error,
                            error_after_refine,
                        }
                    }
                    Err(_) => SampleRecord {
                        dim,
                        eps,
                        sample_index,
                        converged: false,
                        iterations: 0,
                        fixed_point_muls: 0,
                        exp_muls: 0,
                        total_muls: 0,
                        error_estimate: f64::NAN,
                        error_after_refine: None,
                    },
                };
                records.push(record);
            }
        }
    }
    records.sort_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then(b.eps.partial_cmp(&a.eps).unwrap())
            .then(a.sample_index.cmp(&b.sample_index))
    });

    let mut summary = Vec::new();
    for &dim in &config.dims {
        for &eps in &config.eps_values {
            let cell: Vec<&SampleRecord> = records
                .iter()
                .filter(|r| r.dim == dim && r.eps == eps)
                .collect();
            let converged: Vec<&&SampleRecord> =
                cell.iter().filter(|r| r.converged).collect();
            let totals: Vec<f64> = converged.iter().map(|r| r.total_muls as f64).collect();
            let fps: Vec<f64> = converged.iter().map(|r| r.fixed_point_muls as f64).collect();
            let errors: Vec<f64> = converged.iter().map(|r| r.error_estimate).collect();
            let (mean_total, std_total) = mean_std(&totals);
            let (mean_fp, std_fp) = mean_std(&fps);
            let (median, lo, hi) =
                median_ci(&errors, 0.95).unwrap_or((f64::NAN, f64::NAN, f64::NAN));
            summary.push(SummaryRow {
                dim,
                eps,
                mean_total_muls: mean_total,
                std_total_muls: std_total,
                mean_fp_muls: mean_fp,
                std_fp_muls: std_fp,
                median_error: median,
                median_ci_low: lo,
                median_ci_high: hi,
                convergence_rate: converged.len() as f64 / cell.len().max(1) as f64,
            });
        }
    }
    summary.sort_by(|a, b| a.dim.cmp(&b.dim).then(b.eps.partial_cmp(&a.eps).unwrap()));
    (records, summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::frobenius_norm;
    use crate::oracle::jacobi_eigendecomposition;

    #[test]
    fn uniform_midpoint() {
        // u = 0.5 maps to the interval midpoint; checked through the law
        // directly rather than the RNG.
        let dist = EigenvalueDistribution::Uniform { interval: (1e-8, 1.0) };
        if let EigenvalueDistribution::Uniform { interval: (a, b) } = dist {
            let x = a + 0.5 * (b - a);
            assert!((x - 0.500000005).abs() < 1e-12);
        }
    }

    #[test]
    fn exponential_inverse_cdf() {
        // u = 0.5, rate 10 on [0, 1]; expected value from the inverse CDF
        // evaluated independently.
        let (a, b, rate) = (0.0f64, 1.0f64, 10.0f64);
        let u = 0.5f64;
        let tail = 1.0 - (-rate * (b - a)).exp();
        let x = a - (1.0 - u * tail).ln() / rate;
        assert!((x - 0.06931017816607285).abs() < 1e-12);

        // sampled values stay in the interval
        let mut rng = sample_stream(7, 8, 0);
        let dist = EigenvalueDistribution::Exponential { interval: (a, b), rate };
        for x in sample_spectrum(&dist, 1000, &mut rng) {
            assert!(x >= a && x <= b);
        }
    }

    #[test]
    fn spectrum_in_interval() {
        let mut rng = sample_stream(1, 4, 0);
        let dist = EigenvalueDistribution::uniform_default();
        for x in sample_spectrum(&dist, 100, &mut rng) {
            assert!(x >= 1e-8 && x <= 1.0);
        }
    }

    #[test]
    fn test_matrix_scalar_spectrum() {
        let mut rng = sample_stream(3, 3, 0);
        let a = build_test_matrix(&[2.0, 2.0, 2.0], &mut rng);
        let diff = frobenius_norm(
            &crate::matrix::subtract(&a, &crate::matrix::scale(&Matrix::identity(3), 2.0))
                .unwrap(),
        );
        assert!(diff < 1e-13);
    }

    #[test]
    fn test_matrix_preserves_spectrum_and_symmetry() {
        let mut rng = sample_stream(11, 6, 2);
        let spectrum = [0.1, 0.2, 0.5, 0.7, 0.9, 1.0];
        let a = build_test_matrix(&spectrum, &mut rng);
        let asym = frobenius_norm(&crate::matrix::subtract(&a.transpose(), &a).unwrap());
        assert!(asym <= 1e-13 * frobenius_norm(&a));
        let eig = jacobi_eigendecomposition(&a).unwrap();
        for (got, want) in eig.eigenvalues.iter().zip(spectrum) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn median_ci_cases() {
        assert_eq!(median_ci(&[5.0], 0.95), Some((5.0, 5.0, 5.0)));
        assert_eq!(median_ci(&[], 0.95), None);

        let values: Vec<f64> = (1..=100).map(|x| x as f64).collect();
        let (median, lo, hi) = median_ci(&values, 0.95).unwrap();
        assert_eq!(median, 50.5);
        assert_eq!(lo, 40.0);
        assert_eq!(hi, 61.0);

        let same = [3.0; 9];
        assert_eq!(median_ci(&same, 0.95), Some((3.0, 3.0, 3.0)));
    }

    #[test]
    fn single_identity_like_sample_converges() {
        let config = BenchConfig {
            dims: alloc::vec![4],
            samples: 1,
            eps_values: alloc::vec![1e-6],
            distribution: EigenvalueDistribution::Uniform { interval: (0.5, 1.0) },
            master_seed: 42,
            refine: false,
        };
        let (records, summary) = run_experiment(&config);
        assert_eq!(records.len(), 1);
        assert!(records[0].converged);
        assert_eq!(records[0].fixed_point_muls, 2 * u64::from(records[0].iterations));
        assert_eq!(summary.len(), 1);
        assert_eq!(summary[0].convergence_rate, 1.0);
    }

    #[test]
    fn deterministic_across_runs() {
        let config = BenchConfig {
            dims: alloc::vec![4, 8],
            samples: 3,
            eps_values: alloc::vec![1e-4, 1e-8],
            distribution: EigenvalueDistribution::exponential_default(),
            master_seed: 9,
            refine: true,
        };
        let (r1, s1) = run_experiment(&config);
        let (r2, s2) = run_experiment(&config);
        assert_eq!(r1, r2);
        assert_eq!(s1, s2);
    }
}
