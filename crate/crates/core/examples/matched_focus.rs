//! Build the optimal electric and magnetic amplitudes and look at their focus.
//!
//! cargo run --example matched_focus

use std::sync::Arc;

use nalgebra::Vector3;
use pulse_density::{
    matched_amplitude, normalized_bound, synthesize_field, FieldKind, Focus, FrequencyBand, GridOrders, MatchedSpec,
    QuadratureGrid, UnitSystem,
};

fn main() -> pulse_density::Result<()> {
    let band = FrequencyBand::new(0.5, 1.5)?;
    let grid = Arc::new(QuadratureGrid::new(band, GridOrders::default())?);
    let focus = Focus { point: Vector3::new(1.0, -2.0, 0.5), time: 4.0 };
    let axis = Vector3::new(0.0, 0.6, 0.8);
    let bound = normalized_bound(band, 1.0);
    let units = UnitSystem::normalized();

    for kind in [FieldKind::Electric, FieldKind::Magnetic] {
        let amp = matched_amplitude(&MatchedSpec::new(kind, band, axis, focus)?, &grid)?;
        let s = synthesize_field(&amp, 1.0, focus.point, focus.time, &units)?;
        println!(
            "{:>9} focus: U_e/bound = {:.12}  U_b/bound = {:.3e}  |amp|^2 = {:.12}",
            kind.name(),
            s.u_e / bound,
            s.u_b / bound,
            amp.norm_squared()
        );
    }

    // away from the focus the density falls off within about a wavelength
    let amp = matched_amplitude(&MatchedSpec::new(FieldKind::Electric, band, axis, focus)?, &grid)?;
    println!();
    println!("{:>8} {:>14} {:>14}", "offset", "along x", "along t");
    for d in [0.0, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let sx = synthesize_field(&amp, 1.0, focus.point + Vector3::new(d, 0.0, 0.0), focus.time, &units)?;
        let st = synthesize_field(&amp, 1.0, focus.point, focus.time + d, &units)?;
        println!("{d:>8} {:>14.6e} {:>14.6e}", sx.u_e / bound, st.u_e / bound);
    }
    Ok(())
}
