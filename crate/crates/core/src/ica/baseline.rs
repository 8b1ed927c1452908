//! ICA-based LiNGAM: unmix with FastICA, fix the row permutation and scale,
//! read off B, then prune it to something permutable to strictly lower
//! triangular form.

use nalgebra::DMatrix;

use super::assignment::diagonal_permutation;
use super::fastica::{fastica, FastIcaConfig};
use crate::dataset::Dataset;
use crate::error::{LingamError, Result};
use crate::model::{find_strict_lower_permutation, CausalOrder, ConnectionMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineModel {
    pub order: CausalOrder,
    /// Estimate before pruning.
    pub strengths: ConnectionMatrix,
    /// Estimate with the pruned entries set to zero; strictly lower
    /// triangular under `order`.
    pub pruned: ConnectionMatrix,
    pub converged: bool,
}

/// `B = I - D^-1 W~` with `D = diag(W~)`; the diagonal of the result is
/// exactly zero.
pub fn b_from_unmixing(w: &DMatrix<f64>) -> Result<ConnectionMatrix> {
    let p = w.nrows();
    if let Some(i) = (0..p).find(|&i| w[(i, i)] == 0.0) {
        return Err(LingamError::ZeroDiagonal(i));
    }
    let b = DMatrix::from_fn(p, p, |i, j| if i == j { 0.0 } else { -w[(i, j)] / w[(i, i)] });
    ConnectionMatrix::new(b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pruning {
    pub order: CausalOrder,
    pub pruned: ConnectionMatrix,
    /// Number of permutability tests run (one more than the extra zeroings).
    pub iterations: usize,
}

/// Entries of `b` ordered by absolute value, ties broken by (row, column).
fn entries_by_magnitude(b: &ConnectionMatrix) -> Vec<(usize, usize)> {
    let p = b.dim();
    let mut idx: Vec<(usize, usize)> = (0..p).flat_map(|i| (0..p).map(move |j| (i, j))).collect();
    idx.sort_by(|&(i1, j1), &(i2, j2)| {
        b.get(i1, j1).abs().total_cmp(&b.get(i2, j2).abs()).then((i1, j1).cmp(&(i2, j2)))
    });
    idx
}

/// Zeroes the `p(p+1)/2` smallest entries, then keeps zeroing the next
/// smallest until the matrix can be permuted to strictly lower triangular.
pub fn prune_and_order(b: &ConnectionMatrix) -> Pruning {
    let p = b.dim();
    let ranked = entries_by_magnitude(b);
    let mut pruned = b.clone();
    let initial = (p * (p + 1) / 2).min(ranked.len());
    for &(i, j) in &ranked[..initial] {
        pruned.set(i, j, 0.0);
    }
    let mut next = initial;
    let mut iterations = 0;
    loop {
        iterations += 1;
        if let Some(order) = find_strict_lower_permutation(&pruned) {
            return Pruning { order, pruned, iterations };
        }
        // The all-zero matrix is always permutable, so `ranked` never runs out.
        let (i, j) = ranked[next];
        pruned.set(i, j, 0.0);
        next += 1;
    }
}

/// Full ICA-LiNGAM pipeline.
pub fn ica_lingam_fit(data: &Dataset, cfg: &FastIcaConfig) -> Result<BaselineModel> {
    let ica = fastica(data, cfg)?;
    let permuted = diagonal_permutation(&ica.unmixing)?;
    let strengths = b_from_unmixing(&permuted.matrix)?;
    let Pruning { order, pruned, .. } = prune_and_order(&strengths);
    Ok(BaselineModel { order, strengths, pruned, converged: ica.converged })
}
