//! Row permutation of an unmixing matrix that keeps its diagonal away from
//! zero, found as a minimum-cost assignment.

use nalgebra::DMatrix;

use crate::error::{LingamError, Result};

/// Minimum-cost perfect assignment on a square matrix of finite costs.
///
/// Returns `assignment[row] = column`. Dense O(n^3) Hungarian method with
/// row/column potentials.
pub fn hungarian(costs: &DMatrix<f64>) -> Vec<usize> {
    let n = costs.nrows();
    debug_assert!(costs.is_square());
    if n == 0 {
        return Vec::new();
    }

    // One-based internals; index 0 is the virtual start column.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = costs[(i0 - 1, j - 1)] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Unmixing matrix with rows reordered so the diagonal has no zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalPermutation {
    pub matrix: DMatrix<f64>,
    /// `rows[i]` is the original row placed at position `i`.
    pub rows: Vec<usize>,
}

/// Cost of placing row `r` on diagonal slot `i`: `1 / |W(r, i)|`, infinite
/// for an exact zero.
pub fn assignment_costs(w: &DMatrix<f64>) -> DMatrix<f64> {
    w.map(|x| 1.0 / x.abs())
}

/// Row permutation minimizing `sum_i 1 / |W~_ii|`.
pub fn diagonal_permutation(w: &DMatrix<f64>) -> Result<DiagonalPermutation> {
    if !w.is_square() {
        return Err(LingamError::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{} x {}", w.nrows(), w.ncols()),
        });
    }
    let p = w.nrows();
    let costs = assignment_costs(w);
    let max_finite = costs.iter().copied().filter(|c| c.is_finite()).fold(0.0f64, f64::max);
    // Any assignment touching the sentinel costs more than every all-finite one.
    let sentinel = (max_finite * (p as f64 + 1.0) + 1.0).min(f64::MAX / (4.0 * (p * p) as f64));
    let bounded = costs.map(|c| if c.is_finite() { c } else { sentinel });

    let assignment = hungarian(&bounded);
    if assignment.iter().enumerate().any(|(r, &i)| !costs[(r, i)].is_finite()) {
        return Err(LingamError::NoFeasibleAssignment);
    }
    let mut rows = vec![0; p];
    for (r, &slot) in assignment.iter().enumerate() {
        rows[slot] = r;
    }
    let matrix = DMatrix::from_fn(p, p, |i, j| w[(rows[i], j)]);
    Ok(DiagonalPermutation { matrix, rows })
}
