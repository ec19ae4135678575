//! Energy density of a few-photon coherent state summed directly over a
//! discrete Fock space, against the factorized closed form.
//!
//! cargo run --release --example fock_expectation

use std::sync::Arc;

use nalgebra::Vector3;
use pulse_density::verify::{discrete_fock_check, format_reports};
use pulse_density::{coherent_coefficients, random_band_amplitude, FrequencyBand, GridOrders, QuadratureGrid};

fn main() -> pulse_density::Result<()> {
    let grid = Arc::new(QuadratureGrid::new(FrequencyBand::new(0.5, 1.5)?, GridOrders::new(2, 3, 6))?);
    let amp = random_band_amplitude(&grid, 5)?;
    let mut reports = Vec::new();
    for mean in [0.2, 1.0] {
        let stats = coherent_coefficients(mean, 3)?;
        println!(
            "<N> = {mean}: P(N <= 3) = {:.6}, truncated mean {:.6}",
            stats.total_probability(),
            stats.truncated_mean()
        );
        reports.push(discrete_fock_check(&amp, &stats, Vector3::y(), Vector3::new(0.4, 0.0, -0.3), 0.2)?);
    }
    print!("{}", format_reports(&reports));
    Ok(())
}
