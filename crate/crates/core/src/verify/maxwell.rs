use nalgebra::Vector3;
use num_complex::Complex64;

use super::report::{Criterion, VerificationReport};
use crate::error::{domain, Result};
use crate::fields::{fields_normalized, squared_norm, ComplexVector};
use crate::states::ModeAmplitude;

/// Residual norms of the four free-space Maxwell equations, each relative to
/// the size of its leading term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellResiduals {
    /// `|curl E + dB/dt| / |curl E|`
    pub faraday: f64,
    /// `|curl B - dE/dt / c^2| / |curl B|`
    pub ampere: f64,
    /// `|div E| / |curl E|`
    pub gauss_electric: f64,
    /// `|div B| / |curl B|`
    pub gauss_magnetic: f64,
}

impl MaxwellResiduals {
    pub fn as_array(&self) -> [(&'static str, f64); 4] {
        [
            ("faraday", self.faraday),
            ("ampere", self.ampere),
            ("div E", self.gauss_electric),
            ("div B", self.gauss_magnetic),
        ]
    }
}

fn cnorm(v: &ComplexVector) -> f64 {
    squared_norm(v).sqrt()
}

/// Central-difference derivatives of `E+` and `B+` at one point.
#[derive(Clone, Copy)]
struct Derivatives {
    de: [ComplexVector; 3],
    db: [ComplexVector; 3],
    dedt: ComplexVector,
    dbdt: ComplexVector,
}

impl Derivatives {
    fn central(amp: &ModeAmplitude, mean_photons: f64, point: Vector3<f64>, time: f64, h: f64) -> Self {
        let eval = |p: Vector3<f64>, t: f64| fields_normalized(amp, mean_photons, &p, t);
        let scale = Complex64::new(0.5 / h, 0.0);
        let zero = ComplexVector::from_element(Complex64::new(0.0, 0.0));
        // d/dx_a of E and B, a = 0..3
        let (mut de, mut db) = ([zero; 3], [zero; 3]);
        for a in 0..3 {
            let mut step = Vector3::zeros();
            step[a] = h;
            let (ep, bp) = eval(point + step, time);
            let (em, bm) = eval(point - step, time);
            de[a] = (ep - em) * scale;
            db[a] = (bp - bm) * scale;
        }
        let (ep, bp) = eval(point, time + h);
        let (em, bm) = eval(point, time - h);
        Derivatives { de, db, dedt: (ep - em) * scale, dbdt: (bp - bm) * scale }
    }

    /// `(4 D(h/2) - D(h)) / 3`, which cancels the `h^2` error term.
    fn extrapolate(coarse: &Self, fine: &Self) -> Self {
        let r = |c: &ComplexVector, f: &ComplexVector| (f * Complex64::new(4.0, 0.0) - c) / Complex64::new(3.0, 0.0);
        Derivatives {
            de: std::array::from_fn(|a| r(&coarse.de[a], &fine.de[a])),
            db: std::array::from_fn(|a| r(&coarse.db[a], &fine.db[a])),
            dedt: r(&coarse.dedt, &fine.dedt),
            dbdt: r(&coarse.dbdt, &fine.dbdt),
        }
    }

    fn residuals(&self) -> MaxwellResiduals {
        let curl = |d: &[ComplexVector; 3]| ComplexVector::new(d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]);
        let div = |d: &[ComplexVector; 3]| d[0][0] + d[1][1] + d[2][2];
        let curl_e = curl(&self.de);
        let curl_b = curl(&self.db);
        MaxwellResiduals {
            faraday: cnorm(&(curl_e + self.dbdt)) / cnorm(&curl_e),
            ampere: cnorm(&(curl_b - self.dedt)) / cnorm(&curl_b),
            gauss_electric: div(&self.de).norm() / cnorm(&curl_e),
            gauss_magnetic: div(&self.db).norm() / cnorm(&curl_b),
        }
    }
}

/// Second-order central differences of `E+` and `B+` with spatial step `h`
/// and temporal step `h / c` (normalized units, `c = 1`).
pub fn central_difference_residuals(
    amp: &ModeAmplitude,
    mean_photons: f64,
    point: Vector3<f64>,
    time: f64,
    h: f64,
) -> MaxwellResiduals {
    Derivatives::central(amp, mean_photons, point, time, h).residuals()
}

/// Residuals from Richardson-extrapolated derivatives built on steps `h` and
/// `h/2`, fourth order in `h`.
pub fn extrapolated_residuals(
    amp: &ModeAmplitude,
    mean_photons: f64,
    point: Vector3<f64>,
    time: f64,
    h: f64,
) -> MaxwellResiduals {
    let coarse = Derivatives::central(amp, mean_photons, point, time, h);
    let fine = Derivatives::central(amp, mean_photons, point, time, 0.5 * h);
    Derivatives::extrapolate(&coarse, &fine).residuals()
}

/// Below this relative residual the difference quotients sit on the
/// roundoff floor and the convergence ratio is meaningless.
const ROUNDOFF_FLOOR: f64 = 1e-10;

/// Maxwell consistency of the synthesized fields at one spacetime point.
///
/// The plain second-order residuals at `h` and `h/2` must shrink by a factor
/// in `[3.5, 4.5]`, which shows that all of the residual is truncation error.
/// The residual itself, judged against 1e-3, is taken from the extrapolated
/// derivatives: at `h = lambda_2/50` the raw `(k h)^2 / 6` error of the
/// stencil alone reaches 2.6e-3. The raw residuals are kept in the metadata.
/// The ratio is skipped, with a warning, when the finer raw residual is
/// already at roundoff.
pub fn maxwell_residual(
    amp: &ModeAmplitude,
    mean_photons: f64,
    point: Vector3<f64>,
    time: f64,
    h: f64,
) -> Result<VerificationReport> {
    if !(h > 0.0 && h.is_finite()) {
        return domain(format!("finite-difference step must be positive, got {h}"));
    }
    if !(point.iter().all(|x| x.is_finite()) && time.is_finite()) {
        return domain("point and time must be finite");
    }
    if !(mean_photons > 0.0) {
        return domain("maxwell residuals need a nonzero field (mean photons > 0)");
    }
    let coarse_d = Derivatives::central(amp, mean_photons, point, time, h);
    let fine_d = Derivatives::central(amp, mean_photons, point, time, 0.5 * h);
    let coarse = coarse_d.residuals();
    let fine = fine_d.residuals();
    let extrapolated = Derivatives::extrapolate(&coarse_d, &fine_d).residuals();
    let mut r = VerificationReport::new("maxwell residuals");
    let raw = coarse.as_array();
    for (((name, c), (_, f)), (_, x)) in raw.into_iter().zip(fine.as_array()).zip(extrapolated.as_array()) {
        r.measure(format!("{name} residual"), x, 0.0, Criterion::AtMost(1e-3));
        if f < ROUNDOFF_FLOOR {
            r.warnings.push(format!("{name}: residual at h/2 is {f:.3e}, at the roundoff floor; ratio not checked"));
        } else {
            r.measure(format!("{name} richardson ratio"), c / f, 4.0, Criterion::Within { lo: 3.5, hi: 4.5 });
        }
    }
    r.meta("point", format!("({}, {}, {})", point.x, point.y, point.z)).meta("time", time).meta("h", h).meta("h_t", h);
    for (name, c) in raw {
        r.meta(format!("raw {name} residual at h"), format!("{c:.6e}"));
    }
    Ok(r)
}
