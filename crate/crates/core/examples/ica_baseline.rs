//! The FastICA-based estimator next to DirectLiNGAM on the same data.

use lingam::seed::rng_from_seed;
use lingam::synth::sample_from_model;
use lingam::{
    direct, frobenius_distance, ica_lingam_fit, ConnectionMatrix, Dataset, FastIcaConfig,
    GroundTruthModel, IndependenceConfig,
};

fn main() -> lingam::Result<()> {
    let b = ConnectionMatrix::from_rows(&[
        vec![0.0, 0.0, 0.0],
        vec![1.5, 0.0, 0.0],
        vec![0.8, -1.5, 0.0],
    ])?;
    let model = GroundTruthModel::new(b.clone(), vec![1.0; 3], vec![2.0, 0.6, 1.8])?;
    let sample = sample_from_model(&model, 5_000, &mut rng_from_seed(7));
    let data = Dataset::from_rows(sample.values, None)?;

    let ica = ica_lingam_fit(&data, &FastIcaConfig::with_seed(3))?;
    println!("ica order: {}  converged: {}", ica.order, ica.converged);
    println!("ica pruned estimate: {:?}", ica.pruned.to_rows());
    println!("ica distance: {:.4}", frobenius_distance(&b, &ica.pruned)?);

    let fit = direct::fit(&data, &IndependenceConfig::default())?;
    println!("direct order: {}", fit.order);
    println!("direct distance: {:.4}", frobenius_distance(&b, &fit.strengths)?);
    Ok(())
}
