//! Matrix text format: optional `#` comment lines, one line with the
//! dimension `n`, then `n` lines of `n` whitespace-separated floats.
//! Written values use the shortest representation that round-trips.

use matlog::matrix::{Matrix, MatrixError};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("missing dimension line")]
    MissingDimension,
    #[error("invalid dimension {0:?}")]
    InvalidDimension(String),
    #[error("expected {expected} rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("invalid number {0:?}")]
    InvalidNumber(String),
    #[error("{0}")]
    Matrix(#[from] MatrixError),
}

pub fn parse_matrix(text: &str) -> Result<Matrix, FormatError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let dim_line = lines.next().ok_or(FormatError::MissingDimension)?;
    let dim: usize = dim_line
        .parse()
        .map_err(|_| FormatError::InvalidDimension(dim_line.to_string()))?;
    if dim == 0 {
        return Err(FormatError::InvalidDimension(dim_line.to_string()));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        let line = lines.next().ok_or(FormatError::MissingRows { expected: dim, found: row })?;
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != dim {
            return Err(FormatError::RowLength { row, expected: dim, found: entries.len() });
        }
        for e in entries {
            data.push(e.parse::<f64>().map_err(|_| FormatError::InvalidNumber(e.to_string()))?);
        }
    }
    Ok(Matrix::from_row_major(dim, data)?)
}

pub fn format_matrix(m: &Matrix) -> String {
    let n = m.dim();
    let mut out = String::new();
    writeln!(out, "{n}").unwrap();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format!("{}", m.get(i, j))).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn read_matrix(path: &Path) -> Result<Matrix, FormatError> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

pub fn write_matrix(path: &Path, m: &Matrix) -> Result<(), FormatError> {
    Ok(std::fs::write(path, format_matrix(m))?)
}
