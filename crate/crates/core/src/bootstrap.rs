//! Percentile bootstrap intervals for connection strengths under a fixed
//! causal order.

use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::direct::estimate_strengths;
use crate::error::{LingamError, Result};
use crate::model::{CausalOrder, ConnectionMatrix};
use crate::seed::{stream, SimRng};
use crate::stats::{quantile_sorted, sorted_copy};

/// Draws allowed per resample before it counts as exhausted.
pub const MAX_REDRAWS: usize = 10;

pub const MIN_RESAMPLES: usize = 100;

/// Interval for the coefficient of the edge `x_j -> x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeInterval {
    pub i: usize,
    pub j: usize,
    pub point: f64,
    pub lower: f64,
    pub upper: f64,
    pub significant: bool,
}

/// Full-sample estimate and every bootstrap replicate.
#[derive(Debug, Clone)]
pub struct BootstrapDistribution {
    pub order: CausalOrder,
    pub point: ConnectionMatrix,
    pub replicates: Vec<ConnectionMatrix>,
    /// Resample draws thrown away because the regression was singular.
    pub singular_redraws: usize,
}

fn check_level(level: f64) -> Result<()> {
    if !(level > 0.0 && level < 1.0) {
        return Err(LingamError::InvalidConfig(format!("level must be in (0, 1), got {level}")));
    }
    Ok(())
}

/// One replicate; `Err(redraws)` when every draw was singular.
fn replicate(
    data: &Dataset,
    order: &CausalOrder,
    rng: &mut SimRng,
    max_draws: usize,
) -> Result<(ConnectionMatrix, usize), usize> {
    let n = data.n();
    let mut redraws = 0;
    while redraws < max_draws {
        let columns: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        let fitted = data.resample_columns(&columns).and_then(|d| estimate_strengths(&d, order));
        match fitted {
            Ok(b) => return Ok((b, redraws)),
            Err(_) => redraws += 1,
        }
    }
    Err(redraws)
}

/// Re-estimates the strengths on `resamples` column resamples of `data`.
///
/// Resample `b` draws from stream `b` under a base seed taken from `rng`, so
/// the result does not depend on the thread count.
pub fn bootstrap_distribution(
    data: &Dataset,
    order: &CausalOrder,
    resamples: usize,
    rng: &mut SimRng,
) -> Result<BootstrapDistribution> {
    distribution_with_cap(data, order, resamples, rng, MAX_REDRAWS)
}

fn distribution_with_cap(
    data: &Dataset,
    order: &CausalOrder,
    resamples: usize,
    rng: &mut SimRng,
    max_draws: usize,
) -> Result<BootstrapDistribution> {
    if resamples < MIN_RESAMPLES {
        return Err(LingamError::InvalidConfig(format!(
            "need at least {MIN_RESAMPLES} resamples, got {resamples}"
        )));
    }
    let point = estimate_strengths(data, order)?;
    let base: u64 = rng.random();
    let outcomes: Vec<Result<(ConnectionMatrix, usize), usize>> = (0..resamples)
        .into_par_iter()
        .map(|b| replicate(data, order, &mut stream(base, b as u64), max_draws))
        .collect();

    let mut replicates = Vec::with_capacity(resamples);
    let mut singular_redraws = 0;
    let mut exhausted = false;
    for outcome in outcomes {
        match outcome {
            Ok((b, r)) => {
                singular_redraws += r;
                replicates.push(b);
            }
            Err(r) => {
                singular_redraws += r;
                exhausted = true;
            }
        }
    }
    if exhausted {
        return Err(LingamError::TooManySingularResamples { singular: singular_redraws });
    }
    Ok(BootstrapDistribution { order: order.clone(), point, replicates, singular_redraws })
}

impl BootstrapDistribution {
    /// Percentile intervals for every coefficient below the diagonal under
    /// the order, listed by effect then cause position. Endpoints are
    /// widened when needed so the interval contains the point estimate.
    pub fn intervals(&self, level: f64) -> Result<Vec<EdgeInterval>> {
        check_level(level)?;
        let tail = (1.0 - level) / 2.0;
        let k = self.order.as_slice();
        let mut out = Vec::new();
        for (a, &i) in k.iter().enumerate() {
            for &j in &k[..a] {
                let draws: Vec<f64> = self.replicates.iter().map(|b| b.get(i, j)).collect();
                let sorted = sorted_copy(&draws);
                let point = self.point.get(i, j);
                let lower = quantile_sorted(&sorted, tail).min(point);
                let upper = quantile_sorted(&sorted, 1.0 - tail).max(point);
                out.push(EdgeInterval {
                    i,
                    j,
                    point,
                    lower,
                    upper,
                    significant: !(lower <= 0.0 && 0.0 <= upper),
                });
            }
        }
        Ok(out)
    }
}

/// Bootstrap intervals at `level` from `resamples` resamples.
pub fn bootstrap_cis(
    data: &Dataset,
    order: &CausalOrder,
    level: f64,
    resamples: usize,
    rng: &mut SimRng,
) -> Result<Vec<EdgeInterval>> {
    check_level(level)?;
    if order.len() != data.p() {
        return Err(LingamError::DimensionMismatch {
            expected: format!("order of length {}", data.p()),
            found: order.len().to_string(),
        });
    }
    bootstrap_distribution(data, order, resamples, rng)?.intervals(level)
}

/// One line per edge: `cause -> effect : point [lower, upper] sig|ns`.
pub fn format_edges(edges: &[EdgeInterval], labels: &[String]) -> String {
    let mut out = String::new();
    for e in edges {
        let _ = writeln!(
            out,
            "{} -> {} : {} [{}, {}] {}",
            labels[e.j],
            labels[e.i],
            e.point,
            e.lower,
            e.upper,
            if e.significant { "sig" } else { "ns" }
        );
    }
    out
}
