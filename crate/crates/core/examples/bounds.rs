//! Energy-density bounds for a few bands, in normalized and SI units.
//!
//! cargo run --example bounds

use pulse_density::{
    narrowband_intensity_bound, normalization_constant, ultimate_energy_density_bound, FieldKind, FrequencyBand,
    UnitSystem,
};

fn main() -> pulse_density::Result<()> {
    let normalized = UnitSystem::normalized();
    println!("{:>6} {:>6} {:>14} {:>14}", "alpha", "beta", "bound", "C");
    for (a, b) in [(0.0, 1.0), (0.5, 1.5), (0.9, 1.1), (0.95, 1.05)] {
        let band = FrequencyBand::new(a, b)?;
        let r = ultimate_energy_density_bound(FieldKind::Electric, band, 1.0, &normalized)?;
        println!("{a:>6} {b:>6} {:>14.6e} {:>14.6e}", r.value, normalization_constant(band));
    }

    // a 600-1000 nm pulse anchored at 800 nm carrying one photon on average
    let si = UnitSystem::si_from_wavelength(800e-9)?;
    let band = FrequencyBand::from_wavelengths(600e-9, 1000e-9, &si)?;
    let u = ultimate_energy_density_bound(FieldKind::Electric, band, 1.0, &si)?.value;
    println!();
    println!("600-1000 nm, <N> = 1: U <= {u:.4e} J/m^3, peak intensity <= {:.4e} W/m^2", u * si.c);

    let narrow = FrequencyBand::new(0.95, 1.05)?;
    let exact = ultimate_energy_density_bound(FieldKind::Electric, narrow, 1.0, &si)?.value * si.c;
    let approx = narrowband_intensity_bound(si.omega0, narrow.delta_omega(&si), 1.0, &si)?;
    println!(
        "10% band at 800 nm: exact {exact:.6e} W/m^2, narrowband form {approx:.6e} W/m^2, ratio {:.6}",
        exact / approx
    );
    Ok(())
}
