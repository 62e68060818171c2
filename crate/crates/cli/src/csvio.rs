//! CSV layouts for the benchmark harness and the convergence-region grid.
//! All floats carry 17 significant digits so repeated runs diff cleanly.

use crate::format_full;
use matlog::bench::{SampleRecord, SummaryRow};
use matlog::scalar::RegionGrid;
use std::fmt::Write as _;

pub const RECORDS_HEADER: &str =
    "dim,eps,sample,converged,iterations,fp_muls,exp_muls,total_muls,error,error_refined";
pub const SUMMARY_HEADER: &str =
    "dim,eps,mean_total,std_total,mean_fp,std_fp,median_err,ci_lo,ci_hi,conv_rate";
pub const GRID_HEADER: &str = "re,im,f";

pub fn records_csv(records: &[SampleRecord]) -> String {
    let mut out = String::from(RECORDS_HEADER);
    out.push('\n');
    for r in records {
        let refined = r.error_after_refine.map(format_full).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.dim,
            format_full(r.eps),
            r.sample_index,
            r.converged,
            r.iterations,
            r.fixed_point_muls,
            r.exp_muls,
            r.total_muls,
            format_full(r.error_estimate),
            refined
        )
        .unwrap();
    }
    out
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.dim,
            format_full(r.eps),
            format_full(r.mean_total_muls),
            format_full(r.std_total_muls),
            format_full(r.mean_fp_muls),
            format_full(r.std_fp_muls),
            format_full(r.median_error),
            format_full(r.median_ci_low),
            format_full(r.median_ci_high),
            format_full(r.convergence_rate)
        )
        .unwrap();
    }
    out
}

/// Row-major emission, imaginary axis ascending; the λ = 0 sentinel is
/// written as `-inf`.
pub fn grid_csv(grid: &RegionGrid) -> String {
    let mut out = String::from(GRID_HEADER);
    out.push('\n');
    for row in 0..grid.resolution {
        let im = grid.im_at(row);
        for col in 0..grid.resolution {
            let re = grid.re_at(col);
            let f = grid.values[row * grid.resolution + col];
            writeln!(out, "{},{},{}", format_full(re), format_full(im), format_full(f)).unwrap();
        }
    }
    out
}
