//! Observation matrices with one row per variable.

use nalgebra::DMatrix;

use crate::error::{LingamError, Result};
use crate::stats;

/// A row whose mean is within this fraction of its largest absolute value is
/// treated as already centered and left untouched, which makes centering
/// bit-idempotent.
pub const CENTERED_TOLERANCE: f64 = 1e-13;

/// A p x n observation matrix, stored row-major with one row per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    p: usize,
    n: usize,
    labels: Vec<String>,
    centered: bool,
}

/// Default labels `x1 .. xp`.
pub fn default_labels(p: usize) -> Vec<String> {
    (1..=p).map(|i| format!("x{i}")).collect()
}

impl Dataset {
    /// Validates raw rows without centering them.
    ///
    /// Rejects `p = 0`, `n < 2`, ragged rows, non-finite values and constant
    /// rows.
    pub fn from_rows(rows: Vec<Vec<f64>>, labels: Option<Vec<String>>) -> Result<Self> {
        let p = rows.len();
        if p == 0 {
            return Err(LingamError::DimensionError("dataset has no variables".into()));
        }
        let n = rows[0].len();
        if n < 2 {
            return Err(LingamError::DimensionError(format!(
                "at least 2 observations required, found {n}"
            )));
        }
        let labels = match labels {
            Some(l) if l.len() != p => {
                return Err(LingamError::DimensionMismatch {
                    expected: format!("{p} labels"),
                    found: format!("{} labels", l.len()),
                })
            }
            Some(l) => l,
            None => default_labels(p),
        };
        let mut values = Vec::with_capacity(p * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(LingamError::DimensionMismatch {
                    expected: format!("{n} observations in row {i}"),
                    found: row.len().to_string(),
                });
            }
            if let Some(column) = row.iter().position(|v| !v.is_finite()) {
                return Err(LingamError::NonFiniteValue { row: i, column });
            }
            if row.iter().all(|&v| v == row[0]) {
                return Err(LingamError::ZeroVarianceRow(i));
            }
            values.extend(row);
        }
        Ok(Dataset { values, p, n, labels, centered: false })
    }

    /// Builds a p x n dataset from a row-major buffer, then centers it.
    pub fn from_row_major(values: Vec<f64>, p: usize, n: usize) -> Result<Self> {
        if values.len() != p * n {
            return Err(LingamError::DimensionMismatch {
                expected: format!("{} values", p * n),
                found: values.len().to_string(),
            });
        }
        let rows = values.chunks(n.max(1)).map(<[f64]>::to_vec).collect();
        center(rows)
    }

    /// Returns a copy with every row shifted to zero sample mean.
    pub fn centered(&self) -> Dataset {
        let mut out = self.clone();
        for row in out.values.chunks_mut(self.n) {
            center_row(row);
        }
        out.centered = true;
        out
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_centered(&self) -> bool {
        self.centered
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    /// Row-major values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.p, self.n, &self.values)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.p {
            return Err(LingamError::DimensionMismatch {
                expected: format!("{} labels", self.p),
                found: format!("{} labels", labels.len()),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Gathers the given observation columns (repeats allowed) into a new,
    /// re-centered dataset.
    pub fn resample_columns(&self, columns: &[usize]) -> Result<Dataset> {
        let rows = self
            .rows()
            .map(|row| columns.iter().map(|&c| row[c]).collect())
            .collect();
        Ok(Dataset::from_rows(rows, Some(self.labels.clone()))?.centered())
    }
}

/// Validates and centers raw variable rows; labels default to `x1 .. xp`.
pub fn center(rows: Vec<Vec<f64>>) -> Result<Dataset> {
    Ok(Dataset::from_rows(rows, None)?.centered())
}

pub(crate) fn center_row(row: &mut [f64]) {
    let scale = row.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for _ in 0..2 {
        let m = stats::mean(row);
        if m.abs() <= CENTERED_TOLERANCE * scale {
            return;
        }
        row.iter_mut().for_each(|v| *v -= m);
    }
}
