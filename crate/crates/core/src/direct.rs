//! DirectLiNGAM: estimate a causal order by repeatedly extracting the most
//! exogenous-looking variable and regressing it out of the rest, then estimate
//! connection strengths by least squares along that order.
//!
//! The ordering loop always runs exactly `p - 1` selection steps; there is no
//! iteration limit, step size or initial guess to configure.

use crate::dataset::{center_row, Dataset};
use crate::error::{LingamError, Result};
use crate::independence::{self, IndependenceConfig};
use crate::model::{CausalOrder, ConnectionMatrix};
use crate::regression;

/// Statistic of every candidate at one selection step, ascending by subscript.
pub type StepScores = Vec<(usize, f64)>;

#[derive(Debug, Clone, PartialEq)]
pub struct FittedModel {
    pub order: CausalOrder,
    pub strengths: ConnectionMatrix,
    /// One entry per selection step; step `m` (zero-based) scores `p - m`
    /// candidates.
    pub diagnostics: Vec<StepScores>,
}

/// Runs the ordering loop and returns the order with per-step scores.
///
/// The working copy keeps one row per original variable, so the residual row
/// of variable `i` is always row `i` and the order holds original subscripts.
/// Centered data with `n` observations span at most `n - 1` dimensions, so
/// once that many variables are extracted every remaining residual is zero up
/// to rounding. A selected residual that is exactly zero before that point
/// means the data are exactly collinear and fails with
/// [`LingamError::ZeroVariance`]; after it, the zero regressor is skipped.
pub fn estimate_order(
    data: &Dataset,
    cfg: &IndependenceConfig,
) -> Result<(CausalOrder, Vec<StepScores>)> {
    let p = data.p();
    let mut work = data.centered();
    let mut active: Vec<usize> = (0..p).collect();
    let mut order = Vec::with_capacity(p);
    let mut diagnostics = Vec::with_capacity(p.saturating_sub(1));

    while active.len() > 1 {
        let scores = independence::score_candidates(&active, &work, cfg)?;
        let m = independence::argmin(&scores);
        diagnostics.push(scores);
        order.push(m);
        active.retain(|&i| i != m);

        let xm = work.row(m).to_vec();
        if xm.iter().all(|&v| v == 0.0) {
            if order.len() < data.n() {
                return Err(LingamError::ZeroVariance);
            }
            continue;
        }
        for &i in &active {
            let row = work.row_mut(i);
            regression::residualize_in_place(row, &xm)?;
            center_row(row);
        }
    }
    order.extend(active);
    Ok((CausalOrder::new(order)?, diagnostics))
}

/// Regresses each variable on all of its predecessors in `order` and returns
/// the coefficients as a connection matrix; every entry at or above the
/// permuted diagonal is exactly zero.
pub fn estimate_strengths(data: &Dataset, order: &CausalOrder) -> Result<ConnectionMatrix> {
    let p = data.p();
    if order.len() != p {
        return Err(LingamError::DimensionMismatch {
            expected: format!("order of length {p}"),
            found: order.len().to_string(),
        });
    }
    let data = if data.is_centered() { data.clone() } else { data.centered() };
    let k = order.as_slice();
    let mut b = ConnectionMatrix::zeros(p);
    for pos in 1..p {
        let predictors: Vec<&[f64]> = k[..pos].iter().map(|&j| data.row(j)).collect();
        let coefs = regression::multi_least_squares(data.row(k[pos]), &predictors)?;
        for (&j, c) in k[..pos].iter().zip(coefs) {
            b.set(k[pos], j, c);
        }
    }
    Ok(b)
}

/// Estimates the order from the data, then the strengths on the original
/// (not residualized) data.
pub fn fit(data: &Dataset, cfg: &IndependenceConfig) -> Result<FittedModel> {
    let (order, diagnostics) = estimate_order(data, cfg)?;
    let strengths = estimate_strengths(data, &order)?;
    Ok(FittedModel { order, strengths, diagnostics })
}
