//! A small benchmark grid with both estimators, printed as a summary table.
//!
//! The full protocol is `BenchmarkGrid::full_protocol(seed)`; it takes hours.

use lingam::eval::{summary_table, Estimator};
use lingam::{run_benchmark, BenchmarkGrid, Network};

fn main() -> lingam::Result<()> {
    let grid = BenchmarkGrid {
        p_values: vec![5, 10],
        n_values: vec![200, 1000],
        trials: 11,
        estimators: vec![Estimator::Direct, Estimator::IcaBaseline],
        master_seed: 2024,
        network: Network::Random,
        record_timings: true,
    };
    let report = run_benchmark(&grid)?;
    print!("{}", summary_table(&report));
    Ok(())
}
