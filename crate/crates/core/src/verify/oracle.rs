use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::bounds::normalization_constant;
use crate::error::{domain, Result};
use crate::fields::{field_prefactor, ComplexVector};
use crate::geometry::FrequencyBand;

/// `I(tau) = integral_alpha^beta Omega^3 exp(-i Omega tau) dOmega` in closed form.
///
/// Uses the antiderivative
/// `exp(-i Omega tau) (i Omega^3/tau + 3 Omega^2/tau^2 - 6 i Omega/tau^3 - 6/tau^4)`
/// when `|tau| beta >= 1`, and the term-by-term integrated Taylor series of
/// the exponential below that, where the `tau^-4` terms cancel badly.
pub fn cubic_moment_integral(band: FrequencyBand, tau: f64) -> Complex64 {
    let (a, b) = (band.alpha(), band.beta());
    if (tau * b).abs() < 1.0 {
        // sum_k (-i tau)^k / k! (b^{k+4} - a^{k+4}) / (k+4)
        let mut sum = Complex64::new(0.0, 0.0);
        let mut coef = Complex64::new(1.0, 0.0);
        let (mut bp, mut ap) = (b.powi(4), a.powi(4));
        for k in 0..60 {
            let term = coef * ((bp - ap) / (k as f64 + 4.0));
            sum += term;
            if term.norm() <= 1e-18 * sum.norm() {
                break;
            }
            coef *= Complex64::new(0.0, -tau) / (k as f64 + 1.0);
            bp *= b;
            ap *= a;
        }
        return sum;
    }
    let i = Complex64::new(0.0, 1.0);
    let antiderivative = |w: f64| {
        Complex64::cis(-w * tau)
            * (i * w.powi(3) / tau + 3.0 * w * w / tau.powi(2) - 6.0 * i * w / tau.powi(3) - 6.0 / tau.powi(4))
    };
    antiderivative(b) - antiderivative(a)
}

/// `E+(r0, t0 + tau)` of the matched electric amplitude with axis `p`, in
/// normalized units, without quadrature:
/// `sqrt(<N> / (2 (2 pi)^3)) C^{-1/2} (8 pi / 3) p I(tau)`.
pub fn axial_profile_oracle(
    band: FrequencyBand,
    mean_photons: f64,
    axis: Vector3<f64>,
    tau: f64,
) -> Result<ComplexVector> {
    let c = normalization_constant(band);
    if !(c > 0.0) {
        return domain("degenerate band: matched amplitude undefined (C = 0)");
    }
    if !(mean_photons.is_finite() && mean_photons >= 0.0) {
        return domain(format!("mean photon number must be ≥ 0, got {mean_photons}"));
    }
    let scale = field_prefactor(mean_photons) / c.sqrt() * (8.0 * PI / 3.0);
    let profile = cubic_moment_integral(band, tau) * scale;
    Ok(axis.map(|x| profile * x))
}
