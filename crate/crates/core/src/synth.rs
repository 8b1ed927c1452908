//! Random LiNGAM models and data drawn from them.
//!
//! Models are built in causal order (strictly lower triangular `b_true`),
//! each row rescaled so the standard deviation of its parent contribution
//! falls in a configured range, with non-Gaussian external influences
//! `sign(z) |z|^q` from standard normal `z`. The emitted variables are
//! randomly permuted at the end.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{LingamError, Result};
use crate::model::{permute_matrix, CausalOrder, ConnectionMatrix};
use crate::seed::{rng_from_seed, SimRng};
use crate::stats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Network {
    /// Every lower-triangular slot is an edge.
    Dense,
    /// Each slot is an edge with probability `edge_probability`, with at
    /// least one edge when `p > 1`.
    Sparse,
    /// Dense or sparse with equal probability, drawn per model.
    Random,
}

impl std::str::FromStr for Network {
    type Err = LingamError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Network::Dense),
            "sparse" => Ok(Network::Sparse),
            "random" => Ok(Network::Random),
            other => Err(LingamError::InvalidConfig(format!("unknown network {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub p: usize,
    pub n: usize,
    pub network: Network,
    pub parent_std_range: (f64, f64),
    pub noise_std_range: (f64, f64),
    /// Exponent intervals; one is chosen with equal probability per variable.
    pub q_ranges: [(f64, f64); 2],
    /// Provisional edge weights are uniform on `[-1, -floor] U [floor, 1]`.
    pub min_abs_weight: f64,
    pub edge_probability: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            p: 10,
            n: 1000,
            network: Network::Random,
            parent_std_range: (0.5, 1.5),
            noise_std_range: (0.5, 1.5),
            q_ranges: [(0.5, 0.8), (1.2, 2.0)],
            min_abs_weight: 0.1,
            edge_probability: 0.5,
            seed: 0,
        }
    }
}

fn check_range(name: &str, (lo, hi): (f64, f64)) -> Result<()> {
    if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
        return Err(LingamError::InvalidConfig(format!("{name} must satisfy 0 < low <= high")));
    }
    Ok(())
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        if self.p == 0 || self.n < 2 {
            return Err(LingamError::InvalidConfig("need p >= 1 and n >= 2".into()));
        }
        check_range("parent_std_range", self.parent_std_range)?;
        check_range("noise_std_range", self.noise_std_range)?;
        check_range("q_ranges[0]", self.q_ranges[0])?;
        check_range("q_ranges[1]", self.q_ranges[1])?;
        if !(0.0..1.0).contains(&self.min_abs_weight) {
            return Err(LingamError::InvalidConfig("min_abs_weight must be in [0, 1)".into()));
        }
        if !(self.edge_probability > 0.0 && self.edge_probability <= 1.0) {
            return Err(LingamError::InvalidConfig("edge_probability must be in (0, 1]".into()));
        }
        Ok(())
    }
}

/// The model behind a synthetic dataset.
///
/// `b_true`, `noise_stds` and `exponents` are indexed in causal order.
/// Emitted variable `r` is causal variable `shuffle[r]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruthModel {
    pub b_true: ConnectionMatrix,
    pub noise_stds: Vec<f64>,
    pub exponents: Vec<f64>,
    pub shuffle: CausalOrder,
}

impl GroundTruthModel {
    /// A model with no variable shuffle.
    pub fn new(b_true: ConnectionMatrix, noise_stds: Vec<f64>, exponents: Vec<f64>) -> Result<Self> {
        let p = b_true.dim();
        if !b_true.is_strictly_lower() {
            return Err(LingamError::InvalidConfig("b_true must be strictly lower triangular".into()));
        }
        if noise_stds.len() != p || exponents.len() != p {
            return Err(LingamError::DimensionMismatch {
                expected: format!("{p} noise stds and exponents"),
                found: format!("{} and {}", noise_stds.len(), exponents.len()),
            });
        }
        Ok(GroundTruthModel { b_true, noise_stds, exponents, shuffle: CausalOrder::identity(p) })
    }

    pub fn p(&self) -> usize {
        self.b_true.dim()
    }

    /// Connection matrix in the emitted variables' indexing.
    pub fn observed_b(&self) -> ConnectionMatrix {
        permute_matrix(&self.b_true, &self.shuffle).expect("shuffle matches dimension")
    }

    /// A causal order of the emitted variables.
    pub fn true_order(&self) -> CausalOrder {
        self.shuffle.inverse()
    }

    /// Population covariance of the causal-order variables, by recursion
    /// down the order.
    pub fn covariance(&self) -> DMatrix<f64> {
        let p = self.p();
        let mut cov = DMatrix::zeros(p, p);
        for i in 0..p {
            let bi: Vec<f64> = (0..i).map(|j| self.b_true.get(i, j)).collect();
            for k in 0..i {
                let c: f64 = (0..i).map(|j| bi[j] * cov[(j, k)]).sum();
                cov[(i, k)] = c;
                cov[(k, i)] = c;
            }
            cov[(i, i)] = parent_variance(&bi, &cov) + self.noise_stds[i].powi(2);
        }
        cov
    }
}

/// `b' S b` over the first `b.len()` variables.
fn parent_variance(b: &[f64], cov: &DMatrix<f64>) -> f64 {
    let mut v = 0.0;
    for (j, bj) in b.iter().enumerate() {
        for (k, bk) in b.iter().enumerate() {
            v += bj * bk * cov[(j, k)];
        }
    }
    v
}

fn uniform(rng: &mut SimRng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..hi)
    }
}

/// Draws a random strictly lower triangular model with identity shuffle.
pub fn random_model(cfg: &SynthConfig, rng: &mut SimRng) -> Result<GroundTruthModel> {
    cfg.validate()?;
    let p = cfg.p;
    let network = match cfg.network {
        Network::Random if rng.random_bool(0.5) => Network::Dense,
        Network::Random => Network::Sparse,
        other => other,
    };

    let mut b = DMatrix::zeros(p, p);
    let slots: Vec<(usize, usize)> = (0..p).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
    let mut edges: Vec<(usize, usize)> = match network {
        Network::Sparse => {
            slots.iter().copied().filter(|_| rng.random_bool(cfg.edge_probability)).collect()
        }
        _ => slots.clone(),
    };
    if edges.is_empty() && !slots.is_empty() {
        edges.push(slots[rng.random_range(0..slots.len())]);
    }
    for (i, j) in edges {
        let magnitude = uniform(rng, (cfg.min_abs_weight, 1.0));
        b[(i, j)] = if rng.random_bool(0.5) { magnitude } else { -magnitude };
    }

    let noise_stds: Vec<f64> = (0..p).map(|_| uniform(rng, cfg.noise_std_range)).collect();
    let exponents: Vec<f64> = (0..p)
        .map(|_| {
            let range = cfg.q_ranges[usize::from(rng.random_bool(0.5))];
            uniform(rng, range)
        })
        .collect();

    // Rescale rows top-down so each parent contribution has the drawn std.
    let mut cov = DMatrix::zeros(p, p);
    for i in 0..p {
        let mut bi: Vec<f64> = (0..i).map(|j| b[(i, j)]).collect();
        if bi.iter().any(|&w| w != 0.0) {
            let target = uniform(rng, cfg.parent_std_range);
            let scale = target / parent_variance(&bi, &cov).sqrt();
            bi.iter_mut().for_each(|w| *w *= scale);
            for (j, &w) in bi.iter().enumerate() {
                b[(i, j)] = w;
            }
        }
        for k in 0..i {
            let c: f64 = (0..i).map(|j| bi[j] * cov[(j, k)]).sum();
            cov[(i, k)] = c;
            cov[(k, i)] = c;
        }
        cov[(i, i)] = parent_variance(&bi, &cov) + noise_stds[i].powi(2);
    }

    GroundTruthModel::new(ConnectionMatrix::new(b)?, noise_stds, exponents)
}

/// `sign(z) |z|^q` for standard normal `z`, standardized to sample mean 0
/// and sample variance 1.
pub fn sample_non_gaussian(n: usize, q: f64, rng: &mut SimRng) -> Vec<f64> {
    let mut e: Vec<f64> = (0..n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            z.signum() * z.abs().powf(q)
        })
        .collect();
    let m = stats::mean(&e);
    let sd = stats::variance(&e).sqrt();
    e.iter_mut().for_each(|v| *v = (*v - m) / sd);
    e
}

/// Raw draw from a model, in causal-order indexing, before any shuffle or
/// centering.
#[derive(Debug, Clone)]
pub struct Sample {
    /// External influences, already scaled by their noise stds.
    pub noise: Vec<Vec<f64>>,
    pub values: Vec<Vec<f64>>,
}

/// Propagates `x = B x + e` down the causal order.
pub fn sample_from_model(model: &GroundTruthModel, n: usize, rng: &mut SimRng) -> Sample {
    let p = model.p();
    let noise: Vec<Vec<f64>> = (0..p)
        .map(|i| {
            let sd = model.noise_stds[i];
            sample_non_gaussian(n, model.exponents[i], rng).into_iter().map(|v| sd * v).collect()
        })
        .collect();
    let mut values: Vec<Vec<f64>> = Vec::with_capacity(p);
    for i in 0..p {
        let mut row = noise[i].clone();
        for j in 0..i {
            let w = model.b_true.get(i, j);
            if w != 0.0 {
                row.iter_mut().zip(&values[j]).for_each(|(x, xj)| *x += w * xj);
            }
        }
        values.push(row);
    }
    Sample { noise, values }
}

/// Draws a model, samples `cfg.n` observations, shuffles the variables and
/// returns the centered dataset with its ground truth.
pub fn generate_with_rng(cfg: &SynthConfig, rng: &mut SimRng) -> Result<(Dataset, GroundTruthModel)> {
    let mut model = random_model(cfg, rng)?;
    let sample = sample_from_model(&model, cfg.n, rng);
    let mut shuffle: Vec<usize> = (0..cfg.p).collect();
    shuffle.shuffle(rng);
    let rows = shuffle.iter().map(|&k| sample.values[k].clone()).collect();
    model.shuffle = CausalOrder::new(shuffle)?;
    let data = Dataset::from_rows(rows, None)?.centered();
    Ok((data, model))
}

/// [`generate_with_rng`] seeded from `cfg.seed`.
pub fn generate(cfg: &SynthConfig) -> Result<(Dataset, GroundTruthModel)> {
    generate_with_rng(cfg, &mut rng_from_seed(cfg.seed))
}
