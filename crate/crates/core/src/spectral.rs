//! Windowed spectra of focal time series and log-log slope fitting.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{domain, Result};
use crate::fields::ComplexVector;
use crate::geometry::FrequencyBand;

/// Time window for a focal spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumConfig {
    pub samples: usize,
    /// Offsets span `[-half_span, half_span)` around the focus time.
    pub half_span: f64,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig { samples: 4096, half_span: 200.0 }
    }
}

impl SpectrumConfig {
    /// Default window, widened so that the band holds at least 60 frequency bins.
    pub fn for_band(band: FrequencyBand) -> Self {
        let mut cfg = SpectrumConfig::default();
        if band.width() > 0.0 {
            cfg.half_span = cfg.half_span.max(60.0 * PI / band.width());
            let dt_max = PI / (4.0 * band.beta());
            while 2.0 * cfg.half_span / (cfg.samples as f64) > dt_max {
                cfg.samples *= 2;
            }
        }
        cfg
    }

    pub fn dt(&self) -> f64 {
        2.0 * self.half_span / self.samples as f64
    }

    /// `tau_n = -half_span + n dt`; entry `samples / 2` is `tau = 0` for even counts.
    pub fn offsets(&self) -> Vec<f64> {
        let dt = self.dt();
        (0..self.samples).map(|n| -self.half_span + n as f64 * dt).collect()
    }
}

/// Spectral quadrature order needed to resolve `exp(-i Omega tau)` over the
/// band for `|tau| <= half_span` without aliasing.
pub fn required_omega_order(band: FrequencyBand, half_span: f64) -> usize {
    (0.5 * band.width() * half_span).ceil() as usize + 32
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub omega: Vec<f64>,
    pub amplitude: Vec<f64>,
}

impl Spectrum {
    pub fn power(&self) -> impl Iterator<Item = f64> + '_ {
        self.amplitude.iter().map(|a| a * a)
    }
}

/// Hann-windowed amplitude spectrum of a positive-frequency vector series.
///
/// A component `exp(-i omega t)` appears at `+omega`. The amplitude is the
/// Euclidean norm over vector components of
/// `dt |sum_n w_n x_n e^{i omega t_n}| / mean(w)`. Only non-negative
/// frequencies up to Nyquist are returned.
pub fn amplitude_spectrum(series: &[ComplexVector], dt: f64) -> Spectrum {
    let n = series.len();
    let window: Vec<f64> =
        (0..n).map(|i| if n > 1 { 0.5 * (1.0 - (2.0 * PI * i as f64 / (n - 1) as f64).cos()) } else { 1.0 }).collect();
    let gain = window.iter().sum::<f64>() / n as f64;
    let fft = FftPlanner::new().plan_fft_inverse(n);
    let half = n / 2 + 1;
    let mut power = vec![0.0; half];
    for c in 0..3 {
        let mut buf: Vec<Complex64> = series.iter().zip(&window).map(|(v, w)| v[c] * *w).collect();
        fft.process(&mut buf);
        for (p, x) in power.iter_mut().zip(&buf) {
            *p += x.norm_sqr();
        }
    }
    let scale = dt / gain;
    Spectrum {
        omega: (0..half).map(|k| 2.0 * PI * k as f64 / (n as f64 * dt)).collect(),
        amplitude: power.into_iter().map(|p| p.sqrt() * scale).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    /// Slope of `ln amplitude` against `ln omega`.
    pub slope: f64,
    pub intercept: f64,
    pub bins_in_band: usize,
    pub bins_fitted: usize,
    /// Largest amplitude outside the band widened by 10% on each side,
    /// relative to the in-band peak.
    pub leakage: f64,
}

impl SlopeFit {
    pub fn power_slope(&self) -> f64 {
        2.0 * self.slope
    }
}

/// Least-squares log-log fit over the central 60% of the band.
pub fn fit_in_band_slope(spectrum: &Spectrum, band: FrequencyBand) -> Result<SlopeFit> {
    if band.is_degenerate() {
        return domain("degenerate band has no spectrum to fit");
    }
    let w = band.width();
    let in_band = spectrum.omega.iter().filter(|&&o| band.contains(o)).count();
    if in_band < 8 {
        return domain(format!("band too narrow: {in_band} DFT bins in band, need ≥ 8 (lengthen the series)"));
    }
    let (lo, hi) = (band.alpha() + 0.2 * w, band.beta() - 0.2 * w);
    let pts: Vec<(f64, f64)> = spectrum
        .omega
        .iter()
        .zip(&spectrum.amplitude)
        .filter(|(o, a)| **o >= lo && **o <= hi && **o > 0.0 && **a > 0.0)
        .map(|(o, a)| (o.ln(), a.ln()))
        .collect();
    if pts.len() < 3 {
        return domain("too few bins in the central band to fit a slope");
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;

    let (glo, ghi) = (band.alpha() - 0.1 * w, band.beta() + 0.1 * w);
    let bins = || spectrum.omega.iter().copied().zip(spectrum.amplitude.iter().copied());
    let peak = bins().filter(|(o, _)| band.contains(*o)).map(|(_, a)| a).fold(0.0, f64::max);
    let outside = bins().filter(|(o, _)| *o < glo || *o > ghi).map(|(_, a)| a).fold(0.0, f64::max);
    Ok(SlopeFit {
        slope,
        intercept: my - slope * mx,
        bins_in_band: in_band,
        bins_fitted: pts.len(),
        leakage: outside / peak,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector3;

    fn tone_series(omegas: &[(f64, f64)], cfg: &SpectrumConfig) -> Vec<ComplexVector> {
        cfg.offsets()
            .iter()
            .map(|&t| {
                let v: Complex64 = omegas.iter().map(|&(o, a)| Complex64::cis(-o * t) * a).sum();
                Vector3::new(v, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
            })
            .collect()
    }

    #[test]
    fn tone_lands_at_its_frequency() {
        let cfg = SpectrumConfig { samples: 1024, half_span: 100.0 };
        let omega = 2.0 * PI * 100.0 / (1024.0 * cfg.dt());
        let s = amplitude_spectrum(&tone_series(&[(omega, 1.0)], &cfg), cfg.dt());
        let k = (0..s.amplitude.len()).max_by(|&a, &b| s.amplitude[a].total_cmp(&s.amplitude[b])).unwrap();
        assert_eq!(k, 100);
        // a unit tone integrates to the window length
        assert!((s.amplitude[k] / (2.0 * cfg.half_span) - 1.0).abs() < 1e-2);
    }

    #[test]
    fn window_config_for_narrow_band() {
        let b = FrequencyBand::new(0.9, 1.1).unwrap();
        let cfg = SpectrumConfig::for_band(b);
        let bins = b.width() / (2.0 * PI / (2.0 * cfg.half_span));
        assert!(bins >= 59.9);
        assert!(cfg.dt() <= PI / (4.0 * 1.1));
        assert!(cfg.samples.is_power_of_two());
        assert_eq!(SpectrumConfig::for_band(FrequencyBand::new(0.5, 1.5).unwrap()), SpectrumConfig::default());
    }

    #[test]
    fn fit_rejects_narrow_or_degenerate() {
        let cfg = SpectrumConfig { samples: 256, half_span: 10.0 };
        let s = amplitude_spectrum(&tone_series(&[(1.0, 1.0)], &cfg), cfg.dt());
        assert!(fit_in_band_slope(&s, FrequencyBand::new(0.9, 1.1).unwrap()).is_err());
        assert!(fit_in_band_slope(&s, FrequencyBand::new(1.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn power_law_is_recovered() {
        let omega: Vec<f64> = (0..400).map(|k| k as f64 * 0.01).collect();
        let amplitude = omega.iter().map(|o| if (0.5..=1.5).contains(o) { 2.0 * o.powi(3) } else { 0.0 }).collect();
        let fit = fit_in_band_slope(&Spectrum { omega, amplitude }, FrequencyBand::new(0.5, 1.5).unwrap()).unwrap();
        assert!((fit.slope - 3.0).abs() < 1e-12);
        assert!((fit.intercept - 2.0f64.ln()).abs() < 1e-12);
        assert_eq!(fit.leakage, 0.0);
        assert_eq!(fit.power_slope(), 2.0 * fit.slope);
    }
}
