//! More variables than observations: the ordering still runs, FastICA
//! cannot whiten the data.

use lingam::ica::fastica;
use lingam::{estimate_order, generate, FastIcaConfig, IndependenceConfig, SynthConfig};

fn main() -> lingam::Result<()> {
    let (data, _) = generate(&SynthConfig { p: 20, n: 15, seed: 8, ..SynthConfig::default() })?;
    let (order, steps) = estimate_order(&data, &IndependenceConfig::default())?;
    println!("order over {} variables after {} steps: {order}", data.p(), steps.len());
    match fastica(&data, &FastIcaConfig::default()) {
        Ok(_) => println!("fastica succeeded"),
        Err(e) => println!("fastica: {e}"),
    }
    Ok(())
}
