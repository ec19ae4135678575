//! Scan the focal plane of the optimal pulse and write it as CSV.
//!
//! cargo run --example field_scan > focal_plane.csv

use std::sync::Arc;

use nalgebra::Vector3;
use pulse_density::{
    matched_amplitude, scan, FieldKind, Focus, FrequencyBand, GridOrders, MatchedSpec, QuadratureGrid, ScanAxis,
    ScanSpec, UnitSystem,
};

fn main() -> pulse_density::Result<()> {
    let band = FrequencyBand::new(0.5, 1.5)?;
    let grid = Arc::new(QuadratureGrid::new(band, GridOrders::new(24, 24, 12))?);
    let amp = matched_amplitude(&MatchedSpec::new(FieldKind::Electric, band, Vector3::x(), Focus::origin())?, &grid)?;
    let spec = ScanSpec {
        x: ScanAxis::new(-8.0, 8.0, 41),
        y: ScanAxis::new(-8.0, 8.0, 41),
        z: ScanAxis::fixed(0.0),
        t: ScanAxis::fixed(0.0),
        origin: Focus::origin(),
    };
    let result = scan(&amp, 1.0, &spec, &UnitSystem::normalized())?;
    println!("x,y,Ue,Ub");
    for s in &result.samples {
        println!("{},{},{:.10e},{:.10e}", s.point.x, s.point.y, s.u_e, s.u_b);
    }
    let peak = &result.samples[result.peak_electric];
    eprintln!("peak U_e = {:.6e} at ({}, {})", peak.u_e, peak.point.x, peak.point.y);
    Ok(())
}
