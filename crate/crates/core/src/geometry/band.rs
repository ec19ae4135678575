use std::f64::consts::PI;

use super::units::UnitSystem;
use crate::error::{domain, Result};

/// Frequency band `[alpha, beta]` in units of the normalization frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyBand {
    alpha: f64,
    beta: f64,
}

impl FrequencyBand {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return domain("band edges must be finite");
        }
        if alpha < 0.0 {
            return domain("alpha must be ≥ 0");
        }
        if beta < alpha {
            return domain("beta must be ≥ alpha");
        }
        Ok(FrequencyBand { alpha, beta })
    }

    /// Band bounded by two vacuum wavelengths, relative to `units.lambda0`.
    pub fn from_wavelengths(lambda_short: f64, lambda_long: f64, units: &UnitSystem) -> Result<Self> {
        if !(lambda_short > 0.0 && lambda_long > 0.0) {
            return domain("band wavelengths must be positive");
        }
        let alpha = if lambda_long.is_infinite() { 0.0 } else { units.lambda0 / lambda_long };
        Self::new(alpha, units.lambda0 / lambda_short)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn width(&self) -> f64 {
        self.beta - self.alpha
    }

    pub fn is_degenerate(&self) -> bool {
        self.alpha == self.beta
    }

    pub fn contains(&self, omega: f64) -> bool {
        omega >= self.alpha && omega <= self.beta
    }

    /// `beta^4 - alpha^4`, the spectral moment behind every bound.
    pub fn quartic_moment(&self) -> f64 {
        self.beta.powi(4) - self.alpha.powi(4)
    }

    pub fn omega1(&self, units: &UnitSystem) -> f64 {
        self.alpha * units.omega0
    }

    pub fn omega2(&self, units: &UnitSystem) -> f64 {
        self.beta * units.omega0
    }

    /// Longest wavelength; infinite when `alpha = 0`.
    pub fn lambda1(&self, units: &UnitSystem) -> f64 {
        2.0 * PI * units.c / self.omega1(units)
    }

    pub fn lambda2(&self, units: &UnitSystem) -> f64 {
        2.0 * PI * units.c / self.omega2(units)
    }

    pub fn delta_omega(&self, units: &UnitSystem) -> f64 {
        self.width() * units.omega0
    }
}
