//! Finite-difference check that the synthesized fields solve Maxwell's equations.
//!
//! cargo run --example maxwell_check

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::Vector3;
use pulse_density::verify::{central_difference_residuals, extrapolated_residuals};
use pulse_density::{random_band_amplitude, FrequencyBand, GridOrders, QuadratureGrid};

fn main() -> pulse_density::Result<()> {
    let band = FrequencyBand::new(0.5, 1.5)?;
    let grid = Arc::new(QuadratureGrid::new(band, GridOrders::default())?);
    let amp = random_band_amplitude(&grid, 2024)?;
    let (p, t) = (Vector3::new(0.7, -1.3, 2.1), 0.9);
    let lambda2 = 2.0 * PI / band.beta();

    println!("{:>10} {:>12} {:>12} {:>12} {:>12}", "h", "faraday", "ampere", "div E", "div B");
    for k in 0..6 {
        let h = lambda2 / 12.5 / 2f64.powi(k);
        let r = central_difference_residuals(&amp, 1.0, p, t, h);
        println!(
            "{h:>10.4} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e}",
            r.faraday, r.ampere, r.gauss_electric, r.gauss_magnetic
        );
    }
    let x = extrapolated_residuals(&amp, 1.0, p, t, lambda2 / 50.0);
    println!("extrapolated at lambda2/50: {:?}", x.as_array());
    Ok(())
}
