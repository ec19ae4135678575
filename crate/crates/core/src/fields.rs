//! Classical positive-frequency fields of a mode amplitude.
//!
//! For a coherent state built on the single-photon amplitude `f`, the mean
//! positive-frequency fields are plane-wave superpositions
//!
//! ```text
//! E+(r,t) = i sqrt(<N> hbar omega0 / (2 eps0 lambda0^3)) sum_m w_m Omega^{3/2} eps_m  f_m e^{i(k.r - omega t)}
//! B+(r,t) = i sqrt(mu0 <N> hbar omega0 / (2 lambda0^3))   sum_m w_m Omega^{3/2} (kappa x eps_m) f_m e^{i(k.r - omega t)}
//! ```
//!
//! evaluated on the quadrature grid of `f`. Energy densities are the
//! normal-ordered values `eps0 |E+|^2` and `|B+|^2 / mu0`.

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::geometry::UnitSystem;
use crate::states::{Focus, ModeAmplitude};

pub type ComplexVector = Vector3<Complex64>;

/// Fields and energy densities at one spacetime point, in the units they were requested in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub point: Vector3<f64>,
    pub time: f64,
    pub e_plus: ComplexVector,
    pub b_plus: ComplexVector,
    /// `eps0 |E+|^2`
    pub u_e: f64,
    /// `|B+|^2 / mu0`
    pub u_b: f64,
}

impl FieldSample {
    /// Instantaneous classical density `(eps0/2) (2 Re E+)^2`.
    pub fn classical_electric_density(&self, units: &UnitSystem) -> f64 {
        let re = self.e_plus.map(|c| 2.0 * c.re);
        0.5 * units.epsilon0 * re.norm_squared()
    }

    /// Instantaneous classical density `(2 Re B+)^2 / (2 mu0)`.
    pub fn classical_magnetic_density(&self, units: &UnitSystem) -> f64 {
        let re = self.b_plus.map(|c| 2.0 * c.re);
        0.5 * re.norm_squared() / units.mu0
    }
}

pub(crate) fn squared_norm(v: &ComplexVector) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

fn check_mean(mean_photons: f64) -> Result<()> {
    if !(mean_photons.is_finite() && mean_photons >= 0.0) {
        return domain(format!("mean photon number must be ≥ 0, got {mean_photons}"));
    }
    Ok(())
}

/// `sqrt(<N> / (2 (2 pi)^3))`, the common field prefactor in normalized units.
pub(crate) fn field_prefactor(mean_photons: f64) -> f64 {
    (mean_photons / (2.0 * (2.0 * PI).powi(3))).sqrt()
}

/// `(E+, B+)` in normalized units at a normalized point and time.
pub(crate) fn fields_normalized(
    amp: &ModeAmplitude,
    mean_photons: f64,
    point: &Vector3<f64>,
    time: f64,
) -> (ComplexVector, ComplexVector) {
    let grid = amp.grid();
    let values = amp.values();
    let n_ang = grid.angular().len();
    let zero = Complex64::new(0.0, 0.0);
    let mut e = ComplexVector::from_element(zero);
    let mut b = ComplexVector::from_element(zero);
    for (ia, node) in grid.angular().iter().enumerate() {
        let s = node.frame.kappa.dot(point);
        let mut s1 = zero;
        let mut s2 = zero;
        for (iw, spec) in grid.spectral().iter().enumerate() {
            let m = 2 * (iw * n_ang + ia);
            let phase = Complex64::cis(spec.omega * (s - time)) * (spec.weight * spec.omega.powf(1.5));
            s1 += values[m] * phase;
            s2 += values[m + 1] * phase;
        }
        s1 *= node.weight;
        s2 *= node.weight;
        let (e1, e2) = (node.frame.eps1, node.frame.eps2);
        for c in 0..3 {
            e[c] += s1 * e1[c] + s2 * e2[c];
            b[c] += s1 * e2[c] - s2 * e1[c];
        }
    }
    let pref = Complex64::new(0.0, field_prefactor(mean_photons));
    (e * pref, b * pref)
}

pub(crate) fn sample_normalized(amp: &ModeAmplitude, mean_photons: f64, point: Vector3<f64>, time: f64) -> FieldSample {
    let (e_plus, b_plus) = fields_normalized(amp, mean_photons, &point, time);
    FieldSample { point, time, e_plus, b_plus, u_e: squared_norm(&e_plus), u_b: squared_norm(&b_plus) }
}

fn to_units(sample: FieldSample, units: &UnitSystem) -> FieldSample {
    if units.is_normalized() {
        return sample;
    }
    let (es, bs, us) = (units.electric_field_scale(), units.magnetic_field_scale(), units.energy_density_scale());
    FieldSample {
        point: sample.point * units.length_scale(),
        time: sample.time * units.time_scale(),
        e_plus: sample.e_plus * Complex64::new(es, 0.0),
        b_plus: sample.b_plus * Complex64::new(bs, 0.0),
        u_e: sample.u_e * us,
        u_b: sample.u_b * us,
    }
}

fn check_amplitude(amp: &ModeAmplitude) -> Result<()> {
    if amp.values().len() != amp.grid().n_modes() {
        return Err(Error::GridMismatch { values: amp.values().len(), modes: amp.grid().n_modes() });
    }
    Ok(())
}

/// Mean fields of the coherent state with amplitude `amp` at `(point, time)`,
/// both given in `units`.
pub fn synthesize_field(
    amp: &ModeAmplitude,
    mean_photons: f64,
    point: Vector3<f64>,
    time: f64,
    units: &UnitSystem,
) -> Result<FieldSample> {
    check_mean(mean_photons)?;
    check_amplitude(amp)?;
    if !(point.iter().all(|x| x.is_finite()) && time.is_finite()) {
        return domain("field point and time must be finite");
    }
    let p = point / units.length_scale();
    let t = time / units.time_scale();
    Ok(to_units(sample_normalized(amp, mean_photons, p, t), units))
}

/// One scan coordinate: `count` evenly spaced offsets covering `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanAxis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl ScanAxis {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        ScanAxis { min, max, count }
    }

    pub fn fixed(value: f64) -> Self {
        ScanAxis { min: value, max: value, count: 1 }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.count == 0 {
            return domain(format!("scan axis {name} needs at least one sample"));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.max < self.min {
            return domain(format!("scan axis {name} needs finite min ≤ max"));
        }
        Ok(())
    }

    /// Sample offsets; a single-sample axis sits at `min`.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + step * i as f64).collect()
    }

    pub fn step(&self) -> f64 {
        if self.count > 1 {
            (self.max - self.min) / (self.count - 1) as f64
        } else {
            0.0
        }
    }
}

/// A rectangular spacetime scan; offsets are relative to `origin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub x: ScanAxis,
    pub y: ScanAxis,
    pub z: ScanAxis,
    pub t: ScanAxis,
    pub origin: Focus,
}

impl ScanSpec {
    pub fn len(&self) -> usize {
        self.x.count * self.y.count * self.z.count * self.t.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    /// Rows in t-major, then z, y, x order.
    pub samples: Vec<FieldSample>,
    /// Row of the largest `U_e`; ties go to the lowest row.
    pub peak_electric: usize,
    pub peak_magnetic: usize,
}

fn argmax(values: impl Iterator<Item = f64>) -> usize {
    let mut best = 0;
    let mut best_value = f64::NEG_INFINITY;
    for (i, v) in values.enumerate() {
        if v > best_value {
            best = i;
            best_value = v;
        }
    }
    best
}

/// Evaluate the fields over every point of `spec`. Points are evaluated in
/// parallel; each sample is computed independently, so the output is
/// identical to a serial evaluation.
pub fn scan(amp: &ModeAmplitude, mean_photons: f64, spec: &ScanSpec, units: &UnitSystem) -> Result<ScanResult> {
    check_mean(mean_photons)?;
    check_amplitude(amp)?;
    spec.x.validate("x")?;
    spec.y.validate("y")?;
    spec.z.validate("z")?;
    spec.t.validate("t")?;
    let (xs, ys, zs, ts) = (spec.x.points(), spec.y.points(), spec.z.points(), spec.t.points());
    let mut coords = Vec::with_capacity(spec.len());
    for &t in &ts {
        for &z in &zs {
            for &y in &ys {
                for &x in &xs {
                    coords.push((Vector3::new(x, y, z), t));
                }
            }
        }
    }
    let ls = units.length_scale();
    let ts = units.time_scale();
    let samples: Vec<FieldSample> = coords
        .par_iter()
        .map(|(offset, t)| {
            let p = (spec.origin.point + offset) / ls;
            let time = (spec.origin.time + t) / ts;
            to_units(sample_normalized(amp, mean_photons, p, time), units)
        })
        .collect();
    let peak_electric = argmax(samples.iter().map(|s| s.u_e));
    let peak_magnetic = argmax(samples.iter().map(|s| s.u_b));
    Ok(ScanResult { samples, peak_electric, peak_magnetic })
}

/// `E+(r0, t0 + tau)` at the amplitude's focus for uniformly spaced offsets
/// `tau` (in `units`).
pub fn time_series_at_focus(
    amp: &ModeAmplitude,
    mean_photons: f64,
    taus: &[f64],
    units: &UnitSystem,
) -> Result<Vec<ComplexVector>> {
    check_mean(mean_photons)?;
    check_amplitude(amp)?;
    if taus.len() < 2 {
        return domain("time series needs at least two samples");
    }
    let dt = taus[1] - taus[0];
    if !(dt > 0.0) {
        return domain("time samples must be increasing");
    }
    let uniform = taus.windows(2).all(|w| ((w[1] - w[0]) - dt).abs() <= 1e-9 * dt.abs().max(taus[0].abs()));
    if !uniform {
        return domain("time samples must be uniformly spaced");
    }
    let rate = 1.0 / dt;
    let required = amp.grid().band().beta() * units.omega0 / PI;
    if rate <= required {
        return Err(Error::Undersampled { rate, required });
    }
    let focus = amp.focus();
    let es = if units.is_normalized() { 1.0 } else { units.electric_field_scale() };
    let ts = units.time_scale();
    Ok(taus
        .par_iter()
        .map(|tau| {
            let (e, _) = fields_normalized(amp, mean_photons, &focus.point, focus.time + tau / ts);
            e * Complex64::new(es, 0.0)
        })
        .collect())
}
