//! Time profile of the optimal pulse at its focus: quadrature against the
//! closed-form integral.
//!
//! cargo run --example axial_oracle

use std::sync::Arc;

use nalgebra::Vector3;
use pulse_density::verify::axial_profile_oracle;
use pulse_density::{
    matched_amplitude, synthesize_field, FieldKind, Focus, FrequencyBand, GridOrders, MatchedSpec, QuadratureGrid,
    UnitSystem,
};

fn main() -> pulse_density::Result<()> {
    let band = FrequencyBand::new(0.5, 1.5)?;
    let grid = Arc::new(QuadratureGrid::new(band, GridOrders::default())?);
    let axis = Vector3::z();
    let amp = matched_amplitude(&MatchedSpec::new(FieldKind::Electric, band, axis, Focus::origin())?, &grid)?;
    println!("{:>6} {:>24} {:>24} {:>10}", "tau", "Re E_z (quadrature)", "Re E_z (closed form)", "rel err");
    for tau in [0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0] {
        let q = synthesize_field(&amp, 1.0, Vector3::zeros(), tau, &UnitSystem::normalized())?.e_plus[2];
        let o = axial_profile_oracle(band, 1.0, axis, tau)?[2];
        println!("{tau:>6} {:>24.16e} {:>24.16e} {:>10.2e}", q.re, o.re, (q - o).norm() / o.norm());
    }
    Ok(())
}
