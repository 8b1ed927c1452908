//! Deflationary FastICA with the tanh contrast.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dataset::Dataset;
use crate::error::{LingamError, Result};

/// Covariance eigenvalues below this fraction of the largest are treated as
/// zero when whitening.
pub const MIN_EIGENVALUE_RATIO: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct FastIcaConfig {
    pub max_iterations: usize,
    /// Convergence threshold on `| |w_new . w_old| - 1 |`.
    pub tolerance: f64,
    /// Random reinitializations allowed per component after a run exhausts
    /// `max_iterations`.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for FastIcaConfig {
    fn default() -> Self {
        FastIcaConfig { max_iterations: 1000, tolerance: 1e-6, restarts: 5, seed: 0 }
    }
}

impl FastIcaConfig {
    pub fn with_seed(seed: u64) -> Self {
        FastIcaConfig { seed, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(LingamError::InvalidConfig("max_iterations must be at least 1".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(LingamError::InvalidConfig("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Whitening transform and the whitened signals.
#[derive(Debug, Clone)]
pub struct Whitened {
    /// `K` with `cov(K x) = I`.
    pub transform: DMatrix<f64>,
    /// `K X`, p x n.
    pub signals: DMatrix<f64>,
}

/// Whitens centered data through the eigendecomposition of its 1/n sample
/// covariance.
pub fn whiten(data: &Dataset) -> Result<Whitened> {
    let (p, n) = (data.p(), data.n());
    if p >= n {
        return Err(LingamError::RankDeficient { p, n });
    }
    let x = if data.is_centered() { data.to_matrix() } else { data.centered().to_matrix() };
    let cov = (&x * x.transpose()) / n as f64;
    let eigen = cov.symmetric_eigen();
    let max = eigen.eigenvalues.max();
    if eigen.eigenvalues.iter().any(|&v| !(v > MIN_EIGENVALUE_RATIO * max)) {
        return Err(LingamError::RankDeficient { p, n });
    }
    let inv_sqrt = DMatrix::from_diagonal(&eigen.eigenvalues.map(|v| 1.0 / v.sqrt()));
    let transform = inv_sqrt * eigen.eigenvectors.transpose();
    let signals = &transform * x;
    Ok(Whitened { transform, signals })
}

#[derive(Debug, Clone)]
pub struct IcaResult {
    /// Composed unmixing matrix `W`; rows of `W x` estimate the sources.
    pub unmixing: DMatrix<f64>,
    /// False if any component exhausted all restarts without converging.
    pub converged: bool,
}

fn random_unit(p: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
    let v = DVector::from_fn(p, |_, _| -> f64 { StandardNormal.sample(rng) });
    let norm = v.norm();
    v / norm
}

fn decorrelate(w: &mut DVector<f64>, found: &[DVector<f64>]) {
    for prev in found {
        let proj = w.dot(prev);
        w.axpy(-proj, prev, 1.0);
    }
    let norm = w.norm();
    *w /= norm;
}

/// One fixed-point update `E[z g(w'z)] - E[g'(w'z)] w`.
fn fixed_point_step(z: &DMatrix<f64>, w: &DVector<f64>) -> DVector<f64> {
    let n = z.ncols() as f64;
    let y = z.tr_mul(w);
    let g = y.map(f64::tanh);
    let mean_dg = g.iter().map(|t| 1.0 - t * t).sum::<f64>() / n;
    (z * g) / n - w * mean_dg
}

/// Extracts `p` components one at a time, Gram-Schmidt decorrelating each
/// against those already found. Non-convergence is reported through the
/// `converged` flag, not as an error.
pub fn fastica(data: &Dataset, cfg: &FastIcaConfig) -> Result<IcaResult> {
    cfg.validate()?;
    let whitened = whiten(data)?;
    let z = &whitened.signals;
    let p = z.nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut found: Vec<DVector<f64>> = Vec::with_capacity(p);
    let mut all_converged = true;

    for _ in 0..p {
        let mut best = None;
        for attempt in 0..=cfg.restarts {
            let mut w = random_unit(p, &mut rng);
            decorrelate(&mut w, &found);
            let mut converged = false;
            for _ in 0..cfg.max_iterations {
                let mut next = fixed_point_step(z, &w);
                decorrelate(&mut next, &found);
                let change = (next.dot(&w).abs() - 1.0).abs();
                w = next;
                if change < cfg.tolerance {
                    converged = true;
                    break;
                }
            }
            best = Some(w);
            if converged {
                break;
            }
            if attempt == cfg.restarts {
                all_converged = false;
            }
        }
        found.push(best.expect("at least one attempt runs"));
    }

    let rows = DMatrix::from_fn(p, p, |i, j| found[i][j]);
    Ok(IcaResult { unmixing: rows * whitened.transform, converged: all_converged })
}
