//! Draw a random sparse model, fit it, and score the estimate.

use lingam::{
    direct, frobenius_distance, generate, order_errors, IndependenceConfig, Network, SynthConfig,
};

fn main() -> lingam::Result<()> {
    let cfg = SynthConfig { p: 8, n: 2000, network: Network::Sparse, seed: 42, ..SynthConfig::default() };
    let (data, truth) = generate(&cfg)?;
    let b_true = truth.observed_b();
    let edges = (0..cfg.p).flat_map(|i| (0..cfg.p).map(move |j| (i, j)))
        .filter(|&(i, j)| b_true.get(i, j) != 0.0)
        .count();
    println!("true order: {}  ({edges} edges)", truth.true_order());

    let fit = direct::fit(&data, &IndependenceConfig::default())?;
    println!("estimated order: {}", fit.order);
    println!("order errors: {}", order_errors(&b_true, &fit.order)?);
    println!("frobenius distance: {:.4}", frobenius_distance(&b_true, &fit.strengths)?);
    Ok(())
}
