//! Spectrum of the focal field of the optimal pulse and its in-band power law.
//!
//! cargo run --example focal_spectrum

use std::sync::Arc;

use pulse_density::spectral::{required_omega_order, SpectrumConfig};
use pulse_density::verify::spectrum_slope_check;
use pulse_density::{FrequencyBand, GridOrders, QuadratureGrid};

fn main() -> pulse_density::Result<()> {
    for (a, b) in [(0.5, 1.5), (0.2, 1.0), (0.9, 1.1)] {
        let band = FrequencyBand::new(a, b)?;
        let cfg = SpectrumConfig::for_band(band);
        // the spectral grid must be fine enough to stay coherent over the whole window
        let grid =
            Arc::new(QuadratureGrid::new(band, GridOrders::new(required_omega_order(band, cfg.half_span), 4, 4))?);
        let out = spectrum_slope_check(&grid, cfg)?;
        println!(
            "[{a}, {b}]: amplitude ~ omega^{:.4}, power ~ omega^{:.4}  ({} bins in band, leakage {:.1e})",
            out.fit.slope,
            out.fit.power_slope(),
            out.fit.bins_in_band,
            out.fit.leakage
        );
    }
    Ok(())
}
