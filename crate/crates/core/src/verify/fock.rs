use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;

use super::checks::grid_meta;
use super::report::{Criterion, VerificationReport};
use crate::error::{domain, Result};
use crate::fields::fields_normalized;
use crate::geometry::Polarization;
use crate::states::{ModeAmplitude, PhotonStatistics};

/// Largest discrete mode set handled by direct summation.
pub const MAX_FOCK_MODES: usize = 200;
pub const MAX_FOCK_PHOTONS: usize = 3;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn digits(mut index: usize, base: usize, n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for slot in d.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    d
}

fn flatten(d: &[usize], base: usize) -> usize {
    d.iter().fold(0, |acc, &m| acc * base + m)
}

/// Explicitly symmetrized `N`-photon amplitude on `modes` discrete modes:
/// `Phi(m_1..m_N) = (1/N!) sum_perm prod_i x_{m_perm(i)}`, stored with
/// `m_1` most significant.
pub fn symmetrized_product(x: &[Complex64], n: usize) -> Vec<Complex64> {
    let modes = x.len();
    let perms = permutations(n);
    let norm = 1.0 / perms.len() as f64;
    (0..modes.pow(n as u32))
        .map(|idx| {
            let d = digits(idx, modes, n);
            let sum: Complex64 = perms.iter().map(|p| p.iter().map(|&i| x[d[i]]).product::<Complex64>()).sum();
            sum * norm
        })
        .collect()
}

/// Largest change of `Phi` under any transposition of two photon coordinates.
pub fn max_transposition_defect(phi: &[Complex64], modes: usize, n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for idx in 0..phi.len() {
        let d = digits(idx, modes, n);
        for a in 0..n {
            for b in a + 1..n {
                let mut e = d.clone();
                e.swap(a, b);
                worst = worst.max((phi[idx] - phi[flatten(&e, modes)]).norm());
            }
        }
    }
    worst
}

/// Direct Fock-space evaluation of the single-component energy density
/// `<(p.E-)(p.E+)>` for a factorizable state with photon-number coefficients
/// `stats`, against the closed factorized form `<N> pref |<filter, f>|^2`.
///
/// The continuous mode integrals become sums over the grid modes with
/// orthonormal coordinates `x_m = sqrt(w_m) f_m`; the filter is
/// `h_m = i sqrt(w_m) Omega^{3/2} (p.eps_m) e^{i(k.r - omega t)}`.
pub fn discrete_fock_check(
    amp: &ModeAmplitude,
    stats: &PhotonStatistics,
    axis: Vector3<f64>,
    point: Vector3<f64>,
    time: f64,
) -> Result<VerificationReport> {
    let grid = amp.grid();
    let modes = grid.n_modes();
    if modes > MAX_FOCK_MODES {
        return domain(format!("{modes} modes is too many for direct summation (max {MAX_FOCK_MODES})"));
    }
    let n_max = stats.n_max();
    if n_max > MAX_FOCK_PHOTONS {
        return domain(format!("n_max = {n_max} is too large for direct summation (max {MAX_FOCK_PHOTONS})"));
    }
    let axis = axis.normalize();
    let weights = grid.mode_weights();
    let x: Vec<Complex64> = weights.iter().zip(amp.values()).map(|(w, v)| v * w.sqrt()).collect();
    let mut filter = Vec::with_capacity(modes);
    for node in grid.nodes() {
        let f = &node.angular.frame;
        let common = Complex64::new(0.0, node.weight.sqrt() * node.omega.powf(1.5))
            * Complex64::cis(node.omega * (f.kappa.dot(&point) - time));
        for s in Polarization::BOTH {
            filter.push(common * axis.dot(&f.eps(s)));
        }
    }
    // hbar omega0 / (2 lambda0^3)
    let pref = 0.5 / (2.0 * PI).powi(3);

    let mut report = VerificationReport::new("discrete fock expectation");
    let mut direct = 0.0;
    for n in 1..=n_max {
        let phi = symmetrized_product(&x, n);
        let total: f64 = phi.iter().map(|c| c.norm_sqr()).sum();
        report.measure(format!("norm Phi_{n}"), total, 1.0, Criterion::Absolute(1e-10));
        if n >= 2 {
            report.measure(
                format!("symmetry Phi_{n}"),
                max_transposition_defect(&phi, modes, n),
                0.0,
                Criterion::AtMost(1e-15),
            );
        }
        // sum over companions m_2..m_N of |sum_m h_m Phi(m, m_2..m_N)|^2
        let stride = modes.pow(n as u32 - 1);
        let mut companions = 0.0;
        for rest in 0..stride {
            let inner: Complex64 = (0..modes).map(|m| filter[m] * phi[m * stride + rest]).sum();
            companions += inner.norm_sqr();
        }
        let c = stats.coefficients[n];
        direct += c * c * n as f64 * companions;
    }
    direct *= pref;

    let mean = stats.truncated_mean();
    let overlap: Complex64 = filter.iter().zip(&x).map(|(h, x)| h * x).sum();
    let factorized = pref * mean * overlap.norm_sqr();
    report.measure("direct vs factorized", direct, factorized, Criterion::Relative(1e-10));

    let (e, _) = fields_normalized(amp, mean, &point, time);
    let p_dot_e: Complex64 = e.iter().zip(axis.iter()).map(|(c, a)| c * *a).sum();
    report.measure("factorized vs field synthesis", factorized, p_dot_e.norm_sqr(), Criterion::Relative(1e-10));
    report.meta("modes", modes).meta("n_max", n_max).meta("truncated_mean", mean);
    grid_meta(&mut report, grid);
    Ok(report)
}
