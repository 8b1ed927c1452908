//! Accuracy metrics and the synthetic benchmark sweep.

use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::direct;
use crate::error::{LingamError, Result};
use crate::ica::{ica_lingam_fit, FastIcaConfig};
use crate::independence::IndependenceConfig;
use crate::model::{permute_matrix, CausalOrder, ConnectionMatrix};
use crate::seed::{stream, stream_index};
use crate::stats::{quantile_sorted, sorted_copy};
use crate::synth::{generate_with_rng, GroundTruthModel, Network, SynthConfig};

/// Nonzero entries strictly above the diagonal of the true matrix after
/// permuting it by the estimated order; 0 iff the order is consistent with
/// the true graph.
pub fn order_errors(b_true: &ConnectionMatrix, order: &CausalOrder) -> Result<usize> {
    if b_true.dim() != order.len() {
        return Err(LingamError::DimensionMismatch {
            expected: format!("order of length {}", b_true.dim()),
            found: order.len().to_string(),
        });
    }
    Ok(permute_matrix(b_true, order)?.upper_nonzeros())
}

/// `sqrt(trace((B_true - B_hat)' (B_true - B_hat)))`.
pub fn frobenius_distance(b_true: &ConnectionMatrix, b_hat: &ConnectionMatrix) -> Result<f64> {
    if b_true.dim() != b_hat.dim() {
        return Err(LingamError::DimensionMismatch {
            expected: format!("{0} x {0}", b_true.dim()),
            found: format!("{0} x {0}", b_hat.dim()),
        });
    }
    let d = b_true.as_matrix() - b_hat.as_matrix();
    Ok((d.transpose() * &d).trace().sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    Direct,
    IcaBaseline,
}

impl Estimator {
    pub fn name(self) -> &'static str {
        match self {
            Estimator::Direct => "direct",
            Estimator::IcaBaseline => "ica_baseline",
        }
    }
}

fn default_estimators() -> Vec<Estimator> {
    vec![Estimator::Direct, Estimator::IcaBaseline]
}

fn default_network() -> Network {
    Network::Random
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkGrid {
    pub p_values: Vec<usize>,
    pub n_values: Vec<usize>,
    pub trials: usize,
    #[serde(default = "default_estimators")]
    pub estimators: Vec<Estimator>,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_network")]
    pub network: Network,
    /// Wall times vary between runs; leaving them out keeps reports
    /// byte-reproducible.
    #[serde(default)]
    pub record_timings: bool,
}

impl BenchmarkGrid {
    /// The full sweep: p in {10, 20, 50, 100}, n in {30, ..., 5000},
    /// 501 trials per cell.
    pub fn full_protocol(master_seed: u64) -> Self {
        BenchmarkGrid {
            p_values: vec![10, 20, 50, 100],
            n_values: vec![30, 50, 80, 200, 500, 1000, 2000, 5000],
            trials: 501,
            estimators: default_estimators(),
            master_seed,
            network: Network::Random,
            record_timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_values.is_empty() || self.n_values.is_empty() {
            return Err(LingamError::InvalidConfig("grid needs at least one p and one n".into()));
        }
        if self.trials == 0 {
            return Err(LingamError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.p_values.contains(&0) || self.n_values.iter().any(|&n| n < 2) {
            return Err(LingamError::InvalidConfig("need p >= 1 and n >= 2".into()));
        }
        Ok(())
    }
}

/// Box-plot statistics; whiskers sit 1.5 interquartile ranges beyond the
/// quartiles, clamped to the observed extremes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxStats {
    pub count: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
}

impl BoxStats {
    pub fn from_values(values: &[f64]) -> Option<BoxStats> {
        if values.is_empty() {
            return None;
        }
        let s = sorted_copy(values);
        let (min, max) = (s[0], s[s.len() - 1]);
        let q1 = quantile_sorted(&s, 0.25);
        let q3 = quantile_sorted(&s, 0.75);
        let iqr = q3 - q1;
        Some(BoxStats {
            count: s.len(),
            min,
            q1,
            median: quantile_sorted(&s, 0.5),
            q3,
            max,
            whisker_low: (q1 - 1.5 * iqr).max(min),
            whisker_high: (q3 + 1.5 * iqr).min(max),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub order_errors: Option<usize>,
    pub frobenius: Option<f64>,
    pub wall_time_secs: Option<f64>,
    /// FastICA convergence flag; absent for the direct estimator.
    pub converged: Option<bool>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub order_errors: Option<BoxStats>,
    pub frobenius: Option<BoxStats>,
    pub wall_time_secs: Option<BoxStats>,
}

impl MetricSummary {
    pub fn from_trials(trials: &[TrialRecord]) -> Self {
        let collect = |f: &dyn Fn(&TrialRecord) -> Option<f64>| -> Vec<f64> {
            trials.iter().filter_map(f).collect()
        };
        MetricSummary {
            order_errors: BoxStats::from_values(&collect(&|t| t.order_errors.map(|e| e as f64))),
            frobenius: BoxStats::from_values(&collect(&|t| t.frobenius)),
            wall_time_secs: BoxStats::from_values(&collect(&|t| t.wall_time_secs)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorResults {
    pub estimator: Estimator,
    pub trials: Vec<TrialRecord>,
    /// Trials in which the estimator reported an error.
    pub failures: usize,
    pub summary: MetricSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub p: usize,
    pub n: usize,
    pub results: Vec<EstimatorResults>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub grid: BenchmarkGrid,
    pub cells: Vec<CellReport>,
}

fn run_direct(data: &crate::Dataset, truth: &ConnectionMatrix, timed: bool) -> TrialRecord {
    let start = Instant::now();
    let mut record = TrialRecord {
        trial: 0,
        order_errors: None,
        frobenius: None,
        wall_time_secs: None,
        converged: None,
        error: None,
    };
    let cfg = IndependenceConfig::default();
    match direct::estimate_order(data, &cfg) {
        Ok((order, _)) => {
            record.order_errors = order_errors(truth, &order).ok();
            match direct::estimate_strengths(data, &order) {
                Ok(b) => record.frobenius = frobenius_distance(truth, &b).ok(),
                Err(e) => record.error = Some(e.to_string()),
            }
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    if timed {
        record.wall_time_secs = Some(start.elapsed().as_secs_f64());
    }
    record
}

fn run_ica(data: &crate::Dataset, truth: &ConnectionMatrix, seed: u64, timed: bool) -> TrialRecord {
    let start = Instant::now();
    let fitted = ica_lingam_fit(data, &FastIcaConfig::with_seed(seed));
    let elapsed = start.elapsed().as_secs_f64();
    let mut record = TrialRecord {
        trial: 0,
        order_errors: None,
        frobenius: None,
        wall_time_secs: timed.then_some(elapsed),
        converged: None,
        error: None,
    };
    match fitted {
        Ok(m) => {
            record.order_errors = order_errors(truth, &m.order).ok();
            record.frobenius = frobenius_distance(truth, &m.pruned).ok();
            record.converged = Some(m.converged);
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    record
}

/// Outcome of one generated dataset under every selected estimator.
fn run_trial(
    grid: &BenchmarkGrid,
    cell: usize,
    p: usize,
    n: usize,
    trial: usize,
) -> Result<Vec<TrialRecord>> {
    let mut rng = stream(grid.master_seed, stream_index(cell as u32, trial as u32));
    let cfg = SynthConfig { p, n, network: grid.network, ..SynthConfig::default() };
    let (data, model): (_, GroundTruthModel) = generate_with_rng(&cfg, &mut rng)?;
    let ica_seed: u64 = rng.random();
    let truth = model.observed_b();
    Ok(grid
        .estimators
        .iter()
        .map(|est| {
            let mut rec = match est {
                Estimator::Direct => run_direct(&data, &truth, grid.record_timings),
                Estimator::IcaBaseline => run_ica(&data, &truth, ica_seed, grid.record_timings),
            };
            rec.trial = trial;
            rec
        })
        .collect())
}

/// Runs every (p, n) cell of the grid. Trials run in parallel on the current
/// rayon pool; each draws from its own stream under `master_seed`, so the
/// report does not depend on the thread count.
pub fn run_benchmark(grid: &BenchmarkGrid) -> Result<EvaluationReport> {
    grid.validate()?;
    let mut cells = Vec::new();
    let pairs = grid.p_values.iter().flat_map(|&p| grid.n_values.iter().map(move |&n| (p, n)));
    for (cell, (p, n)) in pairs.enumerate() {
        let per_trial: Vec<Vec<TrialRecord>> = (0..grid.trials)
            .into_par_iter()
            .map(|t| run_trial(grid, cell, p, n, t))
            .collect::<Result<_>>()?;
        let results = grid
            .estimators
            .iter()
            .enumerate()
            .map(|(k, &estimator)| {
                let trials: Vec<TrialRecord> = per_trial.iter().map(|r| r[k].clone()).collect();
                EstimatorResults {
                    estimator,
                    failures: trials.iter().filter(|t| t.error.is_some()).count(),
                    summary: MetricSummary::from_trials(&trials),
                    trials,
                }
            })
            .collect();
        cells.push(CellReport { p, n, results });
    }
    Ok(EvaluationReport { grid: grid.clone(), cells })
}

/// Plain-text table of medians per cell and estimator.
pub fn summary_table(report: &EvaluationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>5} {:>6} {:<13} {:>8} {:>14} {:>12} {:>9}",
        "p", "n", "estimator", "trials", "median_errors", "median_frob", "failures"
    );
    let fmt = |s: &Option<BoxStats>, prec: usize| {
        s.map_or_else(|| "-".to_string(), |b| format!("{:.*}", prec, b.median))
    };
    for cell in &report.cells {
        for r in &cell.results {
            let _ = writeln!(
                out,
                "{:>5} {:>6} {:<13} {:>8} {:>14} {:>12} {:>9}",
                cell.p,
                cell.n,
                r.estimator.name(),
                r.trials.len(),
                fmt(&r.summary.order_errors, 1),
                fmt(&r.summary.frobenius, 4),
                r.failures
            );
        }
    }
    out
}
