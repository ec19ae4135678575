use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Reduced Planck constant [J s].
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Vacuum permittivity [F/m].
pub const EPSILON0_SI: f64 = 8.854_187_812_8e-12;
/// Speed of light in vacuum [m/s].
pub const C_SI: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    /// hbar = epsilon0 = c = omega0 = 1.
    Normalized,
    /// SI, anchored to a physical normalization frequency.
    Si,
}

/// Physical constants together with the normalization frequency `omega0`.
///
/// All field computations run in normalized units, where lengths are measured
/// in `1/k0`, times in `1/omega0` and energies in `hbar*omega0`. The `*_scale`
/// methods give the SI size of one normalized unit of each quantity; in
/// normalized mode every scale is 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub hbar: f64,
    pub epsilon0: f64,
    pub mu0: f64,
    pub c: f64,
    pub omega0: f64,
    pub k0: f64,
    pub lambda0: f64,
    pub mode: UnitMode,
}

impl UnitSystem {
    pub fn normalized() -> Self {
        UnitSystem {
            hbar: 1.0,
            epsilon0: 1.0,
            mu0: 1.0,
            c: 1.0,
            omega0: 1.0,
            k0: 1.0,
            lambda0: 2.0 * PI,
            mode: UnitMode::Normalized,
        }
    }

    /// SI constants with the given normalization angular frequency [rad/s].
    pub fn si(omega0: f64) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return domain(format!("omega0 must be positive and finite, got {omega0}"));
        }
        let k0 = omega0 / C_SI;
        Ok(UnitSystem {
            hbar: HBAR_SI,
            epsilon0: EPSILON0_SI,
            mu0: 1.0 / (EPSILON0_SI * C_SI * C_SI),
            c: C_SI,
            omega0,
            k0,
            lambda0: 2.0 * PI / k0,
            mode: UnitMode::Si,
        })
    }

    /// SI constants with the normalization frequency set by a vacuum wavelength in metres.
    pub fn si_from_wavelength(lambda0: f64) -> Result<Self> {
        if !(lambda0.is_finite() && lambda0 > 0.0) {
            return domain(format!("lambda0 must be positive and finite, got {lambda0}"));
        }
        Self::si(2.0 * PI * C_SI / lambda0)
    }

    pub fn is_normalized(&self) -> bool {
        self.mode == UnitMode::Normalized
    }

    pub fn length_scale(&self) -> f64 {
        1.0 / self.k0
    }

    pub fn time_scale(&self) -> f64 {
        1.0 / self.omega0
    }

    pub fn energy_density_scale(&self) -> f64 {
        self.hbar * self.omega0 * self.k0.powi(3)
    }

    pub fn intensity_scale(&self) -> f64 {
        self.c * self.energy_density_scale()
    }

    pub fn electric_field_scale(&self) -> f64 {
        (self.energy_density_scale() / self.epsilon0).sqrt()
    }

    pub fn magnetic_field_scale(&self) -> f64 {
        (self.mu0 * self.energy_density_scale()).sqrt()
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_constants() {
        let u = UnitSystem::normalized();
        assert_eq!(u.mu0, 1.0);
        assert_eq!(u.k0 * u.lambda0, 2.0 * PI);
        assert_eq!(u.energy_density_scale(), 1.0);
    }

    #[test]
    fn si_constants_consistent() {
        let u = UnitSystem::si_from_wavelength(800e-9).unwrap();
        assert!((u.mu0 * u.epsilon0 * u.c * u.c - 1.0).abs() < 1e-12);
        assert!((u.k0 * u.lambda0 / (2.0 * PI) - 1.0).abs() < 1e-15);
        assert!((u.lambda0 - 800e-9).abs() < 1e-20);
        assert!((u.omega0 - 2.3546e15).abs() / 2.3546e15 < 1e-4);
        // E and B scales satisfy |B| = |E|/c
        let ratio = u.magnetic_field_scale() * u.c / u.electric_field_scale();
        assert!((ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_frequency() {
        assert!(UnitSystem::si(0.0).is_err());
        assert!(UnitSystem::si(f64::NAN).is_err());
        assert!(UnitSystem::si_from_wavelength(-1.0).is_err());
    }
}
