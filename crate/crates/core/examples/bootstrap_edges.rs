//! 99% bootstrap intervals for every edge allowed by a fitted order.

use lingam::bootstrap::format_edges;
use lingam::seed::rng_from_seed;
use lingam::synth::sample_from_model;
use lingam::{bootstrap_cis, direct, ConnectionMatrix, Dataset, GroundTruthModel, IndependenceConfig};

fn main() -> lingam::Result<()> {
    // x3 does not depend on x1 directly.
    let b = ConnectionMatrix::from_rows(&[
        vec![0.0, 0.0, 0.0],
        vec![1.5, 0.0, 0.0],
        vec![0.0, -0.7, 0.0],
    ])?;
    let model = GroundTruthModel::new(b, vec![1.0; 3], vec![0.6, 1.7, 2.0])?;
    let sample = sample_from_model(&model, 604, &mut rng_from_seed(5));
    let data = Dataset::from_rows(sample.values, None)?;

    let (order, _) = direct::estimate_order(&data, &IndependenceConfig::default())?;
    println!("order: {order}");
    let edges = bootstrap_cis(&data, &order, 0.99, 2000, &mut rng_from_seed(9))?;
    print!("{}", format_edges(&edges, data.labels()));
    Ok(())
}
