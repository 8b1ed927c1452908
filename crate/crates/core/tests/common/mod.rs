#![allow(dead_code)]

use lingam::seed::rng_from_seed;
use lingam::synth::sample_from_model;
use lingam::{ConnectionMatrix, Dataset, GroundTruthModel};

/// x2 = 1.5 x1 + e2, x3 = 0.8 x1 - 1.5 x2 + e3.
pub fn example_b() -> ConnectionMatrix {
    ConnectionMatrix::from_rows(&[
        vec![0.0, 0.0, 0.0],
        vec![1.5, 0.0, 0.0],
        vec![0.8, -1.5, 0.0],
    ])
    .unwrap()
}

/// Unit-scale noise with the given exponent on every variable, in causal
/// order.
pub fn example_data(n: usize, q: f64, seed: u64) -> Dataset {
    let model = GroundTruthModel::new(example_b(), vec![1.0; 3], vec![q; 3]).unwrap();
    let sample = sample_from_model(&model, n, &mut rng_from_seed(seed));
    Dataset::from_rows(sample.values, None).unwrap()
}

/// Variables with no parents in `b`.
pub fn roots(b: &ConnectionMatrix) -> Vec<usize> {
    (0..b.dim()).filter(|&i| (0..b.dim()).all(|j| b.get(i, j) == 0.0)).collect()
}
