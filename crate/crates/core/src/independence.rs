//! Nonlinear-correlation measure of dependence between a variable and the
//! residuals of the other variables regressed on it, and the selector that
//! picks the most independent (most likely exogenous) variable.

use crate::dataset::Dataset;
use crate::error::{LingamError, Result};
use crate::regression;
use crate::stats;

/// Bounded, non-quadratic function applied elementwise inside the statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Nonlinearity {
    #[default]
    Tanh,
}

impl Nonlinearity {
    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Nonlinearity::Tanh => x.tanh(),
        }
    }
}

/// Settings for the independence statistic.
///
/// Correlations whose argument has exactly zero sample variance contribute 0;
/// that policy is fixed. Variables are used as given after centering, with no
/// standardization, so the statistic depends on variable scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IndependenceConfig {
    pub nonlinearity: Nonlinearity,
}

fn abs_corr_or_zero(a: &[f64], b: &[f64]) -> f64 {
    stats::correlation(a, b).map_or(0.0, f64::abs)
}

/// Sum over the `others` rows of
/// `|corr(g(r_i), x_j)| + |corr(r_i, g(x_j))|`, where `r_i` is the residual of
/// row i regressed on `xj`.
pub(crate) fn t_value<'a>(
    xj: &[f64],
    others: impl Iterator<Item = &'a [f64]>,
    g: Nonlinearity,
) -> f64 {
    let n = xj.len();
    let gx: Vec<f64> = xj.iter().map(|&v| g.apply(v)).collect();
    let mut residual = vec![0.0; n];
    let mut g_residual = vec![0.0; n];
    let mut total = 0.0;
    for xi in others {
        let coef = match regression::simple_coefficient(xi, xj) {
            Ok(c) => c,
            // x_j constant: every correlation has a zero-variance argument.
            Err(_) => return 0.0,
        };
        for t in 0..n {
            let r = xi[t] - coef * xj[t];
            residual[t] = r;
            g_residual[t] = g.apply(r);
        }
        total += abs_corr_or_zero(&g_residual, xj) + abs_corr_or_zero(&residual, &gx);
    }
    total
}

fn sorted_active(active: &[usize], p: usize) -> Result<Vec<usize>> {
    let mut sorted = active.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != active.len() {
        return Err(LingamError::InvalidConfig("active set has duplicate subscripts".into()));
    }
    if let Some(&bad) = sorted.iter().find(|&&k| k >= p) {
        return Err(LingamError::NotInActiveSet(bad));
    }
    if sorted.len() < 2 {
        return Err(LingamError::DimensionError(
            "independence statistic needs at least two active variables".into(),
        ));
    }
    Ok(sorted)
}

/// Dependence statistic of variable `j` against the residuals of every other
/// active variable regressed on it. Zero when all pairs look independent.
pub fn t_statistic(
    j: usize,
    active: &[usize],
    data: &Dataset,
    cfg: &IndependenceConfig,
) -> Result<f64> {
    let active = sorted_active(active, data.p())?;
    if !active.contains(&j) {
        return Err(LingamError::NotInActiveSet(j));
    }
    let others = active.iter().filter(|&&i| i != j).map(|&i| data.row(i));
    Ok(t_value(data.row(j), others, cfg.nonlinearity))
}

/// Statistic for every active variable, in ascending subscript order.
pub fn score_candidates(
    active: &[usize],
    data: &Dataset,
    cfg: &IndependenceConfig,
) -> Result<Vec<(usize, f64)>> {
    let active = sorted_active(active, data.p())?;
    Ok(active
        .iter()
        .map(|&j| {
            let others = active.iter().filter(|&&i| i != j).map(|&i| data.row(i));
            (j, t_value(data.row(j), others, cfg.nonlinearity))
        })
        .collect())
}

/// Lowest subscript among the minimizers of the score list.
pub(crate) fn argmin(scores: &[(usize, f64)]) -> usize {
    let mut best = scores[0];
    for &(j, t) in &scores[1..] {
        if t < best.1 || (t == best.1 && j < best.0) {
            best = (j, t);
        }
    }
    best.0
}

/// The active variable with the smallest statistic; ties go to the lowest
/// subscript.
pub fn find_most_independent(
    active: &[usize],
    data: &Dataset,
    cfg: &IndependenceConfig,
) -> Result<usize> {
    Ok(argmin(&score_candidates(active, data, cfg)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::center;

    #[test]
    fn exact_proportionality_gives_zero_for_cause() {
        let x1 = vec![-1.0, 0.5, 2.0, -1.5];
        let x2: Vec<f64> = x1.iter().map(|v| 1.5 * v).collect();
        let data = center(vec![x1, x2]).unwrap();
        let cfg = IndependenceConfig::default();
        assert_eq!(t_statistic(0, &[0, 1], &data, &cfg).unwrap(), 0.0);
        assert_eq!(find_most_independent(&[0, 1], &data, &cfg).unwrap(), 0);
    }

    #[test]
    fn identical_rows_tie_to_lowest_subscript() {
        let x = vec![-1.0, 0.3, 2.0, -1.3];
        let data = center(vec![vec![3.0, 1.0, -2.0, -2.0], x.clone(), x]).unwrap();
        let cfg = IndependenceConfig::default();
        let a = t_statistic(1, &[1, 2], &data, &cfg).unwrap();
        let b = t_statistic(2, &[1, 2], &data, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(find_most_independent(&[2, 1], &data, &cfg).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_active_sets() {
        let data = center(vec![vec![1.0, 2.0, 4.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let cfg = IndependenceConfig::default();
        assert!(matches!(t_statistic(0, &[1, 1], &data, &cfg), Err(LingamError::InvalidConfig(_))));
        assert!(matches!(t_statistic(0, &[1, 5], &data, &cfg), Err(LingamError::NotInActiveSet(5))));
        assert!(matches!(t_statistic(0, &[1], &data, &cfg), Err(LingamError::DimensionError(_))));
        let three = center(vec![vec![1.0, 2.0, 4.0], vec![0.0, 1.0, 0.0], vec![2.0, 1.0, 0.0]])
            .unwrap();
        assert!(matches!(
            t_statistic(0, &[1, 2], &three, &cfg),
            Err(LingamError::NotInActiveSet(0))
        ));
    }

    #[test]
    fn invariant_to_active_order() {
        let data = center(vec![
            vec![0.1, -2.0, 1.3, 0.4, 2.2],
            vec![1.0, 0.2, -0.7, 0.9, -1.1],
            vec![-0.5, 0.6, 0.6, -2.0, 0.3],
        ])
        .unwrap();
        let cfg = IndependenceConfig::default();
        let a = t_statistic(1, &[0, 1, 2], &data, &cfg).unwrap();
        let b = t_statistic(1, &[2, 0, 1], &data, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a >= 0.0);
    }
}
