//! Load a CSV file, fit it, and write a model document.
//!
//! Usage: `cargo run --example csv_fit -- [data.csv [model.json]]`. Without
//! arguments a simulated dataset is written to the temp directory first.

use std::path::PathBuf;

use lingam::io::{load_csv, write_csv, write_json, CsvOptions, ModelDocument};
use lingam::{direct, generate, IndependenceConfig, SynthConfig};

fn main() -> lingam::Result<()> {
    let mut args = std::env::args().skip(1);
    let input = match args.next() {
        Some(path) => PathBuf::from(path),
        None => {
            let path = std::env::temp_dir().join("lingam_example.csv");
            let (data, _) = generate(&SynthConfig { p: 4, n: 1000, seed: 3, ..SynthConfig::default() })?;
            write_csv(&data, &path)?;
            path
        }
    };
    let output = args.next().map_or_else(|| std::env::temp_dir().join("lingam_model.json"), PathBuf::from);

    let data = load_csv(&input, CsvOptions::default())?;
    println!("{}: {} variables, {} observations", input.display(), data.p(), data.n());
    let fit = direct::fit(&data, &IndependenceConfig::default())?;
    println!("order: {}", fit.order);
    write_json(&ModelDocument::from_direct(&fit, data.labels()), &output)?;
    println!("model written to {}", output.display());
    Ok(())
}
