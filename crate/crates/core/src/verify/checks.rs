use std::sync::Arc;

use nalgebra::Vector3;

use super::oracle::axial_profile_oracle;
use super::report::{Criterion, VerificationReport};
use crate::bounds::{narrowband_intensity_bound, normalized_bound, FieldKind};
use crate::error::{domain, Result};
use crate::fields::{fields_normalized, squared_norm, time_series_at_focus};
use crate::geometry::{FrequencyBand, QuadratureGrid, UnitSystem};
use crate::spectral::{
    amplitude_spectrum, fit_in_band_slope, required_omega_order, SlopeFit, Spectrum, SpectrumConfig,
};
use crate::states::{matched_amplitude, Focus, MatchedSpec, ModeAmplitude};

pub(crate) fn grid_meta(report: &mut VerificationReport, grid: &QuadratureGrid) {
    let o = grid.orders();
    let b = grid.band();
    report
        .meta("band", format!("[{}, {}]", b.alpha(), b.beta()))
        .meta("grid_orders", format!("{}x{}x{}", o.n_omega, o.n_theta, o.n_phi));
}

fn matched(grid: &Arc<QuadratureGrid>, kind: FieldKind, axis: Vector3<f64>, focus: Focus) -> Result<ModeAmplitude> {
    matched_amplitude(&MatchedSpec::with_direction(kind, grid.band(), axis, focus)?, grid)
}

/// Quadrature energy density of the matched amplitude at its focus against
/// the closed-form bound. The focal field must also point along the axis.
pub fn saturation_check(
    grid: &Arc<QuadratureGrid>,
    mean_photons: f64,
    kind: FieldKind,
    axis: Vector3<f64>,
    focus: Focus,
) -> Result<VerificationReport> {
    let amp = matched(grid, kind, axis, focus)?;
    let bound = normalized_bound(grid.band(), mean_photons);
    let (e, b) = fields_normalized(&amp, mean_photons, &focus.point, focus.time);
    let field = match kind {
        FieldKind::Electric => e,
        FieldKind::Magnetic => b,
    };
    let density = squared_norm(&field);
    let axis = axis.normalize();
    let along: f64 = field.iter().zip(axis.iter()).map(|(c, a)| c * *a).sum::<num_complex::Complex64>().norm_sqr();

    let mut r = VerificationReport::new(format!("saturation ({})", kind.name()));
    r.measure("focal density", density, bound, Criterion::Relative(1e-8))
        .measure("polarized along axis", along / density, 1.0, Criterion::Absolute(1e-10))
        .meta("mean_photons", mean_photons);
    grid_meta(&mut r, grid);
    Ok(r)
}

/// Perturbation `1 + 0.1 kappa.q` with `q = z`, or `q = x` when the axis is along `z`.
fn symmetry_breaking_direction(axis: &Vector3<f64>) -> Vector3<f64> {
    if axis.normalize().cross(&Vector3::z()).norm() < 1e-6 {
        Vector3::x()
    } else {
        Vector3::z()
    }
}

/// The optimal electric state has no magnetic energy at its focus and vice versa.
pub fn magnetic_null_check(
    grid: &Arc<QuadratureGrid>,
    mean_photons: f64,
    axis: Vector3<f64>,
    focus: Focus,
) -> Result<VerificationReport> {
    let bound = normalized_bound(grid.band(), mean_photons);
    let fe = matched(grid, FieldKind::Electric, axis, focus)?;
    let fb = matched(grid, FieldKind::Magnetic, axis, focus)?;
    let (_, b_of_e) = fields_normalized(&fe, mean_photons, &focus.point, focus.time);
    let (e_of_b, _) = fields_normalized(&fb, mean_photons, &focus.point, focus.time);

    let q = symmetry_breaking_direction(&axis);
    let perturbed = {
        let g = fe.grid_arc().clone();
        fe.clone().map_modes(|m, v| v * (1.0 + 0.1 * g.node(m / 2).angular.frame.kappa.dot(&q))).normalized()?
    };
    let (_, b_pert) = fields_normalized(&perturbed, mean_photons, &focus.point, focus.time);

    let mut r = VerificationReport::new("magnetic null at electric focus");
    r.measure("U_b/bound for f_e", squared_norm(&b_of_e) / bound, 0.0, Criterion::AtMost(1e-12))
        .measure("U_e/bound for f_b", squared_norm(&e_of_b) / bound, 0.0, Criterion::AtMost(1e-12))
        .measure("U_b/bound for perturbed f_e", squared_norm(&b_pert) / bound, 0.0, Criterion::AtLeast(1e-8))
        .meta("perturbation", format!("1 + 0.1 kappa.({}, {}, {})", q.x, q.y, q.z));
    grid_meta(&mut r, grid);
    Ok(r)
}

/// Quadrature field at `(r0, t0 + tau)` against the closed-form axial profile.
pub fn oracle_agreement_check(
    grid: &Arc<QuadratureGrid>,
    mean_photons: f64,
    axis: Vector3<f64>,
    focus: Focus,
    taus: &[f64],
) -> Result<VerificationReport> {
    let amp = matched(grid, FieldKind::Electric, axis, focus)?;
    let axis = axis.normalize();
    let mut r = VerificationReport::new("axial profile oracle agreement");
    for &tau in taus {
        let (e, _) = fields_normalized(&amp, mean_photons, &focus.point, focus.time + tau);
        let o = axial_profile_oracle(grid.band(), mean_photons, axis, tau)?;
        let err = squared_norm(&(e - o)).sqrt() / squared_norm(&o).sqrt();
        r.measure(format!("relative error tau={tau}"), err, 0.0, Criterion::AtMost(1e-8));
    }
    grid_meta(&mut r, grid);
    Ok(r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumOutcome {
    pub report: VerificationReport,
    pub spectrum: Spectrum,
    pub fit: SlopeFit,
}

/// Windowed DFT of the matched focal time series and a log-log fit of the
/// in-band amplitude, which should grow as `omega^3`.
///
/// The grid's spectral order must resolve the whole time window (see
/// [`required_omega_order`]); the angular orders are used as given.
pub fn spectrum_slope_check(grid: &Arc<QuadratureGrid>, config: SpectrumConfig) -> Result<SpectrumOutcome> {
    let band = grid.band();
    if band.is_degenerate() {
        return domain("degenerate band has no spectrum");
    }
    let needed = required_omega_order(band, config.half_span);
    if grid.orders().n_omega < needed {
        return domain(format!(
            "spectral order {} cannot resolve a ±{} time window; need n_omega ≥ {needed}",
            grid.orders().n_omega,
            config.half_span
        ));
    }
    let amp = matched(grid, FieldKind::Electric, Vector3::x(), Focus::origin())?;
    let series = time_series_at_focus(&amp, 1.0, &config.offsets(), &UnitSystem::normalized())?;
    let spectrum = amplitude_spectrum(&series, config.dt());
    let fit = fit_in_band_slope(&spectrum, band)?;

    let mut report = VerificationReport::new("spectrum slope");
    report
        .measure("amplitude slope", fit.slope, 3.0, Criterion::Within { lo: 2.95, hi: 3.05 })
        .measure("power slope", fit.power_slope(), 6.0, Criterion::Within { lo: 5.9, hi: 6.1 })
        .meta("samples", config.samples)
        .meta("half_span", config.half_span)
        .meta("window", "hann")
        .meta("bins_in_band", fit.bins_in_band)
        .meta("bins_fitted", fit.bins_fitted)
        .meta("out_of_band_leakage", format!("{:.6e}", fit.leakage));
    grid_meta(&mut report, grid);
    Ok(SpectrumOutcome { report, spectrum, fit })
}

/// Exact bound against the slowly-varying-envelope bound for a narrow band
/// centered on the normalization frequency.
pub fn narrowband_consistency_check(band: FrequencyBand) -> Result<VerificationReport> {
    let units = UnitSystem::normalized();
    let center = 0.5 * (band.alpha() + band.beta());
    let approx = narrowband_intensity_bound(center, band.width(), 1.0, &units)?;
    let exact = normalized_bound(band, 1.0) * units.c;
    let mut r = VerificationReport::new("narrowband consistency");
    r.measure("exact/narrowband", exact / approx, 1.0025, Criterion::Absolute(5e-4))
        .meta("band", format!("[{}, {}]", band.alpha(), band.beta()));
    Ok(r)
}
