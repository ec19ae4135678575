//! Mode amplitudes of factorizable photon states and coherent-state photon
//! statistics.
//!
//! A [`ModeAmplitude`] holds one complex value per grid mode. Values are
//! stored against the quadrature measure `dOmega d(cos theta) dphi`, so the
//! amplitude over `dOmega dtheta dphi` is `value * sqrt(sin theta)` (see
//! [`ModeAmplitude::theta_measure_value`]) and the squared norm is
//! `sum_m w_m |value_m|^2`.

use std::sync::Arc;

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::bounds::{normalization_constant, FieldKind};
use crate::error::{domain, Error, Result};
use crate::geometry::{FrequencyBand, Polarization, QuadratureGrid};

/// Generator behind [`random_band_amplitude`], recorded in reports.
pub const RNG_ALGORITHM: &str = "ChaCha20 (rand_chacha 0.9, stream = trial index) + StandardNormal (rand_distr 0.5)";

/// Spacetime point at which an amplitude focuses, in normalized units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Focus {
    pub point: Vector3<f64>,
    pub time: f64,
}

impl Focus {
    pub fn origin() -> Self {
        Focus { point: Vector3::zeros(), time: 0.0 }
    }
}

impl Default for Focus {
    fn default() -> Self {
        Self::origin()
    }
}

/// Parameters of a bound-saturating amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedSpec {
    pub kind: FieldKind,
    pub band: FrequencyBand,
    /// Field direction at the focus: `p` for the electric case, `m` for the magnetic.
    pub axis: Vector3<f64>,
    pub focus: Focus,
}

impl MatchedSpec {
    pub fn new(kind: FieldKind, band: FrequencyBand, axis: Vector3<f64>, focus: Focus) -> Result<Self> {
        if !((axis.norm() - 1.0).abs() < 1e-12) {
            return domain(format!("axis must be a unit vector, |axis| = {}", axis.norm()));
        }
        Ok(MatchedSpec { kind, band, axis, focus })
    }

    /// Same as [`MatchedSpec::new`] but normalizes any nonzero axis first.
    pub fn with_direction(kind: FieldKind, band: FrequencyBand, axis: Vector3<f64>, focus: Focus) -> Result<Self> {
        let n = axis.norm();
        if !(n > 0.0 && n.is_finite()) {
            return domain("axis must be a nonzero finite vector");
        }
        Self::new(kind, band, axis / n, focus)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeAmplitude {
    grid: Arc<QuadratureGrid>,
    values: Vec<Complex64>,
    focus: Focus,
}

impl ModeAmplitude {
    pub fn from_values(grid: Arc<QuadratureGrid>, values: Vec<Complex64>, focus: Focus) -> Result<Self> {
        if values.len() != grid.n_modes() {
            return Err(Error::GridMismatch { values: values.len(), modes: grid.n_modes() });
        }
        Ok(ModeAmplitude { grid, values, focus })
    }

    pub fn zeros(grid: Arc<QuadratureGrid>) -> Self {
        let values = vec![Complex64::new(0.0, 0.0); grid.n_modes()];
        ModeAmplitude { grid, values, focus: Focus::origin() }
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    pub fn grid_arc(&self) -> &Arc<QuadratureGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn focus(&self) -> Focus {
        self.focus
    }

    /// Value of the amplitude over the measure `dOmega dtheta dphi`.
    pub fn theta_measure_value(&self, mode: usize) -> Complex64 {
        self.values[mode] * self.grid.node(mode / 2).angular.sin_theta.sqrt()
    }

    /// Grid inner product `sum_m w_m conj(self_m) other_m`.
    pub fn inner(&self, other: &ModeAmplitude) -> Complex64 {
        self.grid
            .nodes()
            .flat_map(|n| [n.weight, n.weight])
            .zip(self.values.iter().zip(&other.values))
            .map(|(w, (a, b))| a.conj() * b * w)
            .sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.grid.nodes().flat_map(|n| [n.weight, n.weight]).zip(&self.values).map(|(w, a)| w * a.norm_sqr()).sum()
    }

    /// Rescale to unit norm.
    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm_squared();
        if !(n > 0.0 && n.is_finite()) {
            return domain("cannot normalize an amplitude with zero norm");
        }
        let s = 1.0 / n.sqrt();
        self.values.iter_mut().for_each(|v| *v *= s);
        Ok(self)
    }

    /// Apply `f(mode, value)` to every mode.
    pub fn map_modes<F: Fn(usize, Complex64) -> Complex64>(mut self, f: F) -> Self {
        for (m, v) in self.values.iter_mut().enumerate() {
            *v = f(m, *v);
        }
        self
    }
}

/// The amplitude that saturates the energy-density bound at `spec.focus`.
pub fn matched_amplitude(spec: &MatchedSpec, grid: &Arc<QuadratureGrid>) -> Result<ModeAmplitude> {
    let band = grid.band();
    if band != spec.band {
        return domain(format!(
            "grid band [{}, {}] does not match requested band [{}, {}]",
            band.alpha(),
            band.beta(),
            spec.band.alpha(),
            spec.band.beta()
        ));
    }
    let c = normalization_constant(spec.band);
    if !(c > 0.0) {
        return domain("degenerate band: matched amplitude undefined (C = 0)");
    }
    let scale = 1.0 / c.sqrt();
    let mut values = Vec::with_capacity(grid.n_modes());
    for node in grid.nodes() {
        let frame = &node.angular.frame;
        // exp(-i k.r0 + i omega t0) with k = Omega kappa in normalized units
        let phase = node.omega * (spec.focus.time - frame.kappa.dot(&spec.focus.point));
        let common = Complex64::new(0.0, -1.0) * Complex64::cis(phase) * (scale * node.omega.powf(1.5));
        for sigma in Polarization::BOTH {
            let v = match spec.kind {
                FieldKind::Electric => frame.eps(sigma),
                FieldKind::Magnetic => frame.magnetic(sigma),
            };
            values.push(common * spec.axis.dot(&v));
        }
    }
    Ok(ModeAmplitude { grid: Arc::clone(grid), values, focus: spec.focus })
}

/// Coefficients `C_N` of a photon-number distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonStatistics {
    pub coefficients: Vec<f64>,
    pub mean_photons: f64,
}

impl PhotonStatistics {
    pub fn n_max(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn total_probability(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum()
    }

    /// `sum_N |C_N|^2 N` over the retained coefficients.
    pub fn truncated_mean(&self) -> f64 {
        self.coefficients.iter().enumerate().map(|(n, c)| c * c * n as f64).sum()
    }
}

/// Poissonian coherent-state coefficients `e^{-<N>/2} <N>^{N/2} / sqrt(N!)` for `N = 0..=n_max`.
pub fn coherent_coefficients(mean_photons: f64, n_max: usize) -> Result<PhotonStatistics> {
    if !(mean_photons.is_finite() && mean_photons >= 0.0) {
        return domain(format!("mean photon number must be ≥ 0, got {mean_photons}"));
    }
    let mut coefficients = Vec::with_capacity(n_max + 1);
    if mean_photons == 0.0 {
        coefficients.push(1.0);
        coefficients.resize(n_max + 1, 0.0);
    } else {
        let ln_mean = mean_photons.ln();
        let mut ln_factorial = 0.0;
        for n in 0..=n_max {
            if n > 0 {
                ln_factorial += (n as f64).ln();
            }
            let ln_c = -0.5 * mean_photons + 0.5 * n as f64 * ln_mean - 0.5 * ln_factorial;
            coefficients.push(ln_c.exp());
        }
    }
    Ok(PhotonStatistics { coefficients, mean_photons })
}

/// Smallest `n_max` for which a coherent distribution is complete to ~1e-10.
pub fn coherent_cutoff(mean_photons: f64) -> usize {
    (mean_photons + 10.0 * mean_photons.sqrt() + 20.0).ceil() as usize
}

/// A Haar-random unit amplitude: i.i.d. standard complex Gaussians in the
/// orthonormal coordinates `sqrt(w_m) value_m`, then normalized.
pub fn random_band_amplitude(grid: &Arc<QuadratureGrid>, seed: u64) -> Result<ModeAmplitude> {
    random_band_amplitude_stream(grid, seed, 0)
}

/// Independent member `stream` of the random ensemble for `seed`.
pub fn random_band_amplitude_stream(grid: &Arc<QuadratureGrid>, seed: u64, stream: u64) -> Result<ModeAmplitude> {
    let weights = grid.mode_weights();
    let coords = random_unit_coordinates(seed, stream, weights.len())?;
    let values = coords
        .into_iter()
        .zip(&weights)
        .map(|(x, &w)| if w > 0.0 { x / w.sqrt() } else { Complex64::new(0.0, 0.0) })
        .collect();
    let amp = ModeAmplitude { grid: Arc::clone(grid), values, focus: Focus::origin() };
    // renormalize under the weighted sum so the unit-norm contract holds to roundoff
    amp.normalized()
}

/// Unit vector in `C^len` drawn uniformly from the sphere.
pub(crate) fn random_unit_coordinates(seed: u64, stream: u64, len: usize) -> Result<Vec<Complex64>> {
    if len == 0 {
        return domain("random amplitude needs a nonempty grid");
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut x: Vec<Complex64> = (0..len)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re * scale, im * scale)
        })
        .collect();
    let n = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= n);
    Ok(x)
}
