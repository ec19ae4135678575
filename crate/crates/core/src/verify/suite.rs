use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::checks::{
    magnetic_null_check, narrowband_consistency_check, oracle_agreement_check, saturation_check, spectrum_slope_check,
};
use super::fock::discrete_fock_check;
use super::maxwell::maxwell_residual;
use super::report::VerificationReport;
use super::schwarz::monte_carlo_schwarz;
use crate::bounds::FieldKind;
use crate::error::Result;
use crate::geometry::{FrequencyBand, GridOrders, QuadratureGrid};
use crate::spectral::{required_omega_order, SpectrumConfig};
use crate::states::{coherent_coefficients, matched_amplitude, random_band_amplitude, Focus, MatchedSpec};

/// Inputs of the full verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub band: FrequencyBand,
    pub mean_photons: f64,
    pub orders: GridOrders,
    pub axis: Vector3<f64>,
    pub focus: Focus,
    pub seed: u64,
    pub trials: usize,
    pub maxwell_points: usize,
    pub fock_orders: GridOrders,
}

impl VerifyConfig {
    pub fn new(band: FrequencyBand) -> Self {
        VerifyConfig {
            band,
            mean_photons: 1.0,
            orders: GridOrders::default(),
            axis: Vector3::x(),
            focus: Focus::origin(),
            seed: 42,
            trials: 10_000,
            maxwell_points: 5,
            fock_orders: GridOrders::new(2, 2, 4),
        }
    }
}

/// Spacetime points near the focus: within half a wavelength `lambda0` in
/// each coordinate and three time units.
pub fn maxwell_sample_points(seed: u64, count: usize, focus: &Focus) -> Vec<(Vector3<f64>, f64)> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX - 1);
    (0..count)
        .map(|_| {
            let mut offset = Vector3::zeros();
            for c in offset.iter_mut() {
                *c = (rng.random::<f64>() - 0.5) * 2.0 * PI;
            }
            let dt = (rng.random::<f64>() - 0.5) * 6.0;
            (focus.point + offset, focus.time + dt)
        })
        .collect()
}

/// Run every verification procedure; reports come back in a fixed order.
pub fn run_suite(cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    let grid = Arc::new(QuadratureGrid::new(cfg.band, cfg.orders)?);
    let mut reports = Vec::new();
    reports.push(narrowband_consistency_check(FrequencyBand::new(0.95, 1.05)?)?);
    for kind in [FieldKind::Electric, FieldKind::Magnetic] {
        reports.push(saturation_check(&grid, cfg.mean_photons, kind, cfg.axis, cfg.focus)?);
    }
    reports.push(oracle_agreement_check(&grid, cfg.mean_photons, cfg.axis, cfg.focus, &[0.5, 5.0, 50.0])?);
    reports.push(magnetic_null_check(&grid, cfg.mean_photons, cfg.axis, cfg.focus)?);
    reports.push(monte_carlo_schwarz(&grid, cfg.mean_photons, cfg.trials, cfg.seed, cfg.axis, cfg.focus)?.report);

    let fe =
        matched_amplitude(&MatchedSpec::with_direction(FieldKind::Electric, cfg.band, cfg.axis, cfg.focus)?, &grid)?;
    let h = 2.0 * PI / cfg.band.beta() / 50.0;
    for (i, (p, t)) in maxwell_sample_points(cfg.seed, cfg.maxwell_points, &cfg.focus).into_iter().enumerate() {
        let mut r = maxwell_residual(&fe, cfg.mean_photons, p, t, h)?;
        r.check = format!("maxwell residuals (matched f_e, point {})", i + 1);
        reports.push(r);
    }
    let random = random_band_amplitude(&grid, cfg.seed)?;
    let (p, t) = maxwell_sample_points(cfg.seed ^ 0x5eed, 1, &cfg.focus)[0];
    let mut r = maxwell_residual(&random, cfg.mean_photons, p, t, h)?;
    r.check = "maxwell residuals (random amplitude)".into();
    r.meta("seed", cfg.seed);
    reports.push(r);

    let spec_cfg = SpectrumConfig::for_band(cfg.band);
    let spec_grid = Arc::new(QuadratureGrid::new(
        cfg.band,
        GridOrders::new(required_omega_order(cfg.band, spec_cfg.half_span), 4, 4),
    )?);
    reports.push(spectrum_slope_check(&spec_grid, spec_cfg)?.report);

    let small = Arc::new(QuadratureGrid::new(cfg.band, cfg.fock_orders)?);
    let stats = coherent_coefficients(cfg.mean_photons, 3)?;
    let small_fe =
        matched_amplitude(&MatchedSpec::with_direction(FieldKind::Electric, cfg.band, cfg.axis, cfg.focus)?, &small)?;
    let probe = cfg.focus.point + Vector3::new(0.3, -0.2, 0.5);
    reports.push(discrete_fock_check(&small_fe, &stats, cfg.axis, probe, cfg.focus.time + 0.7)?);
    Ok(reports)
}
