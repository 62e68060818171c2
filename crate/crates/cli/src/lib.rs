//! IO companion to the `matlog` core: the matrix text format, the benchmark
//! and region-grid CSV layouts, and helpers shared with the `matlog` binary.

pub mod csvio;
pub mod matrixio;

/// Formats a float with 17 significant digits, enough to round-trip f64.
pub fn format_full(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        return "-inf".to_string();
    }
    format!("{x:.16e}")
}
