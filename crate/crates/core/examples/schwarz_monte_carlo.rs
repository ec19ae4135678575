//! No normalized amplitude beats the bound: random trials against the optimum.
//!
//! cargo run --release --example schwarz_monte_carlo

use std::sync::Arc;

use nalgebra::Vector3;
use pulse_density::verify::monte_carlo_schwarz;
use pulse_density::{Focus, FrequencyBand, GridOrders, QuadratureGrid};

fn main() -> pulse_density::Result<()> {
    let band = FrequencyBand::new(0.5, 1.5)?;
    // a small grid so that random amplitudes have a fighting chance
    let grid = Arc::new(QuadratureGrid::new(band, GridOrders::new(3, 3, 4))?);
    let out = monte_carlo_schwarz(&grid, 1.0, 20_000, 1, Vector3::x(), Focus::origin())?;
    let max = out.ratios.iter().copied().fold(0.0, f64::max);
    println!("{} modes, 20000 trials: max U_e/bound = {max:.6}, matched = {:.12}", grid.n_modes(), out.matched_ratio);
    for bin in out.histogram.iter().filter(|b| b.count > 0) {
        println!("[{:9.2e}, {:9.2e})  {:>6}  {}", bin.lo, bin.hi, bin.count, "#".repeat((bin.count / 100).max(1)));
    }
    println!("{}", if out.report.passed() { "dominance holds" } else { "DOMINANCE VIOLATED" });
    Ok(())
}
