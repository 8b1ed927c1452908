//! Estimation of linear non-Gaussian acyclic models.
//!
//! [`direct`] recovers a causal order by repeatedly picking the variable whose
//! regression residuals look most independent of it, then fits connection
//! strengths by least squares along that order. [`ica`] holds the FastICA
//! based estimator used as a baseline. [`synth`] draws random models and
//! data, [`eval`] scores estimates and runs benchmark grids, and
//! [`bootstrap`] gives percentile intervals for fitted strengths.
//!
//! Runnable examples live in `examples/`:
//!
//! - `three_variable`: recover a known three-variable model
//! - `ica_baseline`: the FastICA estimator on the same data
//! - `simulate_and_score`: random model, fit, order errors and distance
//! - `benchmark_grid`: a small grid with both estimators
//! - `bootstrap_edges`: edge intervals for a fitted order
//! - `csv_fit`: load a CSV file and write a model document
//! - `wide_data`: more variables than observations
//!
//! ```
//! use lingam::{direct, Dataset, IndependenceConfig};
//!
//! let x1: Vec<f64> = (0..500).map(|t| ((t * 7919) % 101) as f64 / 101.0 - 0.5).collect();
//! let x2: Vec<f64> = x1.iter().enumerate().map(|(t, v)| 1.5 * v + ((t * 104729) % 97) as f64 / 97.0 - 0.5).collect();
//! let data = Dataset::from_rows(vec![x2, x1], None).unwrap();
//! let fit = direct::fit(&data, &IndependenceConfig::default()).unwrap();
//! assert_eq!(fit.order.as_slice(), [1, 0]);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bootstrap;
pub mod cli;
pub mod dataset;
pub mod direct;
pub mod error;
pub mod eval;
pub mod ica;
pub mod independence;
pub mod io;
pub mod model;
pub mod regression;
pub mod seed;
pub mod stats;
pub mod synth;

pub use bootstrap::{bootstrap_cis, EdgeInterval};
pub use dataset::Dataset;
pub use direct::{estimate_order, estimate_strengths, FittedModel};
pub use error::{LingamError, Result};
pub use eval::{frobenius_distance, order_errors, run_benchmark, BenchmarkGrid, EvaluationReport};
pub use ica::{ica_lingam_fit, BaselineModel, FastIcaConfig};
pub use independence::{IndependenceConfig, Nonlinearity};
pub use model::{find_strict_lower_permutation, permute_matrix, CausalOrder, ConnectionMatrix, MixingMatrix};
pub use synth::{generate, GroundTruthModel, Network, SynthConfig};
