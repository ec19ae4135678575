//! Closed-form ultimate energy-density bounds.
//!
//! For a pulse whose photons all lie in `[omega1, omega2]`, the normal-ordered
//! electric (or magnetic) energy density at any spacetime point is at most
//!
//! ```text
//! (pi/3) <N> (hbar omega2 / lambda2^3 - hbar omega1 / lambda1^3)
//! ```

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::geometry::{FrequencyBand, UnitMode, UnitSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Electric,
    Magnetic,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Electric => "electric",
            FieldKind::Magnetic => "magnetic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub kind: FieldKind,
    pub band: FrequencyBand,
    pub mean_photons: f64,
    /// Energy density in the units of `units`.
    pub value: f64,
    pub units: UnitMode,
}

fn check_mean(mean_photons: f64) -> Result<()> {
    if !(mean_photons.is_finite() && mean_photons >= 0.0) {
        return domain(format!("mean photon number must be ≥ 0, got {mean_photons}"));
    }
    Ok(())
}

/// `hbar omega / lambda^3` with `lambda = 2 pi c / omega`, finite at `omega = 0`.
fn photon_density(omega: f64, units: &UnitSystem) -> f64 {
    units.hbar * omega.powi(4) / (2.0 * PI * units.c).powi(3)
}

pub fn ultimate_energy_density_bound(
    kind: FieldKind,
    band: FrequencyBand,
    mean_photons: f64,
    units: &UnitSystem,
) -> Result<BoundReport> {
    check_mean(mean_photons)?;
    let value = if band.is_degenerate() {
        0.0
    } else {
        PI / 3.0
            * mean_photons
            * (photon_density(band.omega2(units), units) - photon_density(band.omega1(units), units))
    };
    Ok(BoundReport { kind, band, mean_photons, value, units: units.mode })
}

/// The bound in normalized units, `(pi/3) <N> (beta^4 - alpha^4) / (2 pi)^3`.
pub fn normalized_bound(band: FrequencyBand, mean_photons: f64) -> f64 {
    PI / 3.0 * mean_photons * band.quartic_moment() / (2.0 * PI).powi(3)
}

/// Slowly-varying-envelope bound on the peak intensity, `(2/3) <N> hbar omega0 domega / lambda0^2`.
pub fn narrowband_intensity_bound(omega0: f64, delta_omega: f64, mean_photons: f64, units: &UnitSystem) -> Result<f64> {
    check_mean(mean_photons)?;
    if !(delta_omega >= 0.0) {
        return domain(format!("delta omega must be ≥ 0, got {delta_omega}"));
    }
    if !(omega0 > 0.0) {
        return domain(format!("center frequency must be positive, got {omega0}"));
    }
    let lambda0 = 2.0 * PI * units.c / omega0;
    Ok(2.0 / 3.0 * mean_photons * units.hbar * omega0 * delta_omega / (lambda0 * lambda0))
}

/// Squared norm of the unnormalized matched filter, `(2 pi / 3)(beta^4 - alpha^4)`.
///
/// Zero for a degenerate band, where no matched amplitude exists.
pub fn normalization_constant(band: FrequencyBand) -> f64 {
    2.0 * PI / 3.0 * band.quartic_moment()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{GridOrders, Polarization, QuadratureGrid};
    use nalgebra::Vector3;
    use proptest::prelude::*;

    fn band(a: f64, b: f64) -> FrequencyBand {
        FrequencyBand::new(a, b).unwrap()
    }

    fn bound(kind: FieldKind, a: f64, b: f64, n: f64) -> f64 {
        ultimate_energy_density_bound(kind, band(a, b), n, &UnitSystem::normalized()).unwrap().value
    }

    #[test]
    fn reference_values() {
        // (pi/3) * 5 / (2 pi)^3
        assert!((bound(FieldKind::Electric, 0.5, 1.5, 1.0) - 0.021_108_6).abs() < 1e-7);
        assert!((bound(FieldKind::Magnetic, 0.0, 1.0, 10.0) - 0.042_217_16).abs() < 1e-8);
        assert_eq!(bound(FieldKind::Electric, 1.0, 1.0, 5.0), 0.0);
        assert_eq!(bound(FieldKind::Electric, 0.5, 1.5, 0.0), 0.0);
        assert_eq!(bound(FieldKind::Electric, 0.3, 1.7, 2.5), bound(FieldKind::Magnetic, 0.3, 1.7, 2.5));
        let closed = normalized_bound(band(0.5, 1.5), 1.0);
        assert!((closed / bound(FieldKind::Electric, 0.5, 1.5, 1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn narrowband_values() {
        let u = UnitSystem::normalized();
        let nb = narrowband_intensity_bound(1.0, 0.1, 1.0, &u).unwrap();
        assert!((nb - 1.688_69e-3).abs() < 1e-8);
        assert_eq!(narrowband_intensity_bound(1.0, 0.0, 1.0, &u).unwrap(), 0.0);
        assert!(narrowband_intensity_bound(1.0, -0.1, 1.0, &u).is_err());
        let exact = bound(FieldKind::Electric, 0.95, 1.05, 1.0) * u.c;
        // (beta^4 - alpha^4) / (4 delta) = 0.401 / 0.4
        assert!((exact - 1.692_908e-3).abs() < 1e-9);
        assert!((exact / nb - 1.0025).abs() < 1e-12);
    }

    #[test]
    fn normalization_constant_values() {
        assert!((normalization_constant(band(0.0, 1.0)) - 2.094_395_1).abs() < 1e-7);
        assert!((normalization_constant(band(0.5, 1.5)) - 10.471_975_5).abs() < 1e-7);
        assert_eq!(normalization_constant(band(1.0, 1.0)), 0.0);
    }

    #[test]
    fn rejects_negative_mean() {
        let u = UnitSystem::normalized();
        assert!(ultimate_energy_density_bound(FieldKind::Electric, band(0.0, 1.0), -1.0, &u).is_err());
    }

    #[test]
    fn si_round_trip() {
        let si = UnitSystem::si(2.355e15).unwrap();
        for (a, b) in [(0.5, 1.5), (0.0, 1.0), (0.95, 1.05)] {
            let direct = ultimate_energy_density_bound(FieldKind::Electric, band(a, b), 3.0, &si).unwrap();
            let scaled = normalized_bound(band(a, b), 3.0) * si.energy_density_scale();
            assert!((direct.value / scaled - 1.0).abs() < 1e-10);
            assert_eq!(direct.units, UnitMode::Si);
            let nb_direct = narrowband_intensity_bound(si.omega0, 0.1 * si.omega0, 3.0, &si).unwrap();
            let nb_scaled =
                narrowband_intensity_bound(1.0, 0.1, 3.0, &UnitSystem::normalized()).unwrap() * si.intensity_scale();
            assert!((nb_direct / nb_scaled - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn constant_matches_grid_quadrature() {
        let b = band(0.5, 1.5);
        let g = QuadratureGrid::new(b, GridOrders::default()).unwrap();
        for p in [Vector3::z(), Vector3::new(1.0, 2.0, -0.5).normalize()] {
            let q = g.integrate(|n| {
                let s: f64 = Polarization::BOTH.iter().map(|&s| p.dot(&n.angular.frame.eps(s)).powi(2)).sum();
                n.omega.powi(3) * s
            });
            assert!((q / normalization_constant(b) - 1.0).abs() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn monotone_and_linear(a in 0.0..1.0f64, w in 0.01..1.0f64, d in 0.01..0.5f64, n in 0.1..100.0f64) {
            let b = a + w;
            let base = bound(FieldKind::Electric, a, b, n);
            prop_assert!(bound(FieldKind::Electric, a, b + d, n) > base);
            prop_assert!(bound(FieldKind::Electric, a + d.min(w / 2.0), b, n) < base);
            prop_assert!(base > 0.0);
            let doubled = bound(FieldKind::Electric, a, b, 2.0 * n);
            prop_assert!((doubled - 2.0 * base).abs() <= 1e-12 * doubled);
        }
    }
}
