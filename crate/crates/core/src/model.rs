//! Connection matrices, causal orders and the permutation machinery that
//! relates them.
//!
//! Entry `(i, j)` of a [`ConnectionMatrix`] is the strength of the edge
//! `x_j -> x_i`. A [`CausalOrder`] lists zero-based variable subscripts from
//! the top of the order to the bottom; a matrix is consistent with an order
//! when permuting it by that order makes it strictly lower triangular.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{LingamError, Result};

/// Square matrix of connection strengths, `b_ij` = effect of `x_j` on `x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionMatrix(DMatrix<f64>);

impl ConnectionMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(LingamError::DimensionMismatch {
                expected: "square matrix".into(),
                found: format!("{} x {}", entries.nrows(), entries.ncols()),
            });
        }
        Ok(ConnectionMatrix(entries))
    }

    pub fn zeros(p: usize) -> Self {
        ConnectionMatrix(DMatrix::zeros(p, p))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let p = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != p) {
            return Err(LingamError::DimensionMismatch {
                expected: format!("{p} columns"),
                found: bad.len().to_string(),
            });
        }
        Ok(ConnectionMatrix(DMatrix::from_fn(p, p, |i, j| rows[i][j])))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.0[(i, j)] = value;
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim()).map(|i| self.0.row(i).iter().copied().collect()).collect()
    }

    /// Lower triangular with an all-zero diagonal, compared exactly.
    pub fn is_strictly_lower(&self) -> bool {
        let p = self.dim();
        (0..p).all(|i| (i..p).all(|j| self.0[(i, j)] == 0.0))
    }

    /// Number of exactly nonzero entries strictly above the diagonal.
    pub fn upper_nonzeros(&self) -> usize {
        let p = self.dim();
        (0..p).map(|i| (i + 1..p).filter(|&j| self.0[(i, j)] != 0.0).count()).sum()
    }
}

/// A permutation of `0..p`, listing variables from the top of the causal
/// order to the bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CausalOrder(Vec<usize>);

impl CausalOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let p = order.len();
        let mut seen = vec![false; p];
        for &k in &order {
            if k >= p || std::mem::replace(&mut seen[k], true) {
                return Err(LingamError::InvalidPermutation(p));
            }
        }
        Ok(CausalOrder(order))
    }

    /// Builds an order from one-based subscripts.
    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        let zero_based = order
            .iter()
            .map(|&k| k.checked_sub(1).ok_or(LingamError::InvalidPermutation(order.len())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(zero_based)
    }

    pub fn identity(p: usize) -> Self {
        CausalOrder((0..p).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|k| k + 1).collect()
    }

    /// `inverse()[v]` is the position of variable `v` in this order.
    pub fn inverse(&self) -> CausalOrder {
        let mut inv = vec![0; self.0.len()];
        for (pos, &v) in self.0.iter().enumerate() {
            inv[v] = pos;
        }
        CausalOrder(inv)
    }
}

impl fmt::Display for CausalOrder {
    /// One-based, comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", k + 1)?;
        }
        Ok(())
    }
}

/// `A = (I - B)^-1`, mapping external influences to observations.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingMatrix(DMatrix<f64>);

impl MixingMatrix {
    pub fn from_connection(b: &ConnectionMatrix) -> Result<Self> {
        let p = b.dim();
        let w = DMatrix::identity(p, p) - b.as_matrix();
        w.try_inverse()
            .map(MixingMatrix)
            .ok_or(LingamError::SingularDesign { rcond: 0.0 })
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }
}

/// Simultaneous row and column permutation: `out(i, j) = B(perm[i], perm[j])`.
pub fn permute_matrix(b: &ConnectionMatrix, perm: &CausalOrder) -> Result<ConnectionMatrix> {
    let p = b.dim();
    if perm.len() != p {
        return Err(LingamError::InvalidPermutation(p));
    }
    let k = perm.as_slice();
    Ok(ConnectionMatrix(DMatrix::from_fn(p, p, |i, j| b.get(k[i], k[j]))))
}

/// Finds an order that makes `b` strictly lower triangular, if one exists.
///
/// Repeatedly emits the lowest-indexed remaining variable whose row is
/// exactly zero over the remaining columns (including its own diagonal), then
/// deletes that row and column. The result is the lexicographically smallest
/// valid order.
pub fn find_strict_lower_permutation(b: &ConnectionMatrix) -> Option<CausalOrder> {
    let p = b.dim();
    let mut remaining = vec![true; p];
    let mut order = Vec::with_capacity(p);
    for _ in 0..p {
        let next = (0..p).find(|&i| {
            remaining[i] && (0..p).all(|j| !remaining[j] || b.get(i, j) == 0.0)
        })?;
        remaining[next] = false;
        order.push(next);
    }
    Some(CausalOrder(order))
}
