use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use super::checks::grid_meta;
use super::report::{Criterion, VerificationReport};
use crate::bounds::{normalized_bound, FieldKind};
use crate::error::{domain, Result};
use crate::fields::{field_prefactor, squared_norm, ComplexVector};
use crate::geometry::{Polarization, QuadratureGrid};
use crate::states::{matched_amplitude, random_unit_coordinates, Focus, MatchedSpec, ModeAmplitude, RNG_ALGORITHM};

/// Histogram of `log10(ratio)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzOutcome {
    pub report: VerificationReport,
    /// Focal `U_e / bound` of every random trial, by trial index.
    pub ratios: Vec<f64>,
    pub matched_ratio: f64,
    pub histogram: Vec<HistogramBin>,
}

const DECADES: i32 = 12;
const BINS_PER_DECADE: i32 = 4;

/// Bins of width 1/4 decade covering `[1e-12, 10)`; the outer bins absorb
/// anything beyond.
pub fn ratio_histogram(ratios: &[f64]) -> Vec<HistogramBin> {
    let n = ((DECADES + 1) * BINS_PER_DECADE) as usize;
    let step = 1.0 / BINS_PER_DECADE as f64;
    let mut bins: Vec<HistogramBin> = (0..n)
        .map(|i| {
            let lo = -(DECADES as f64) + step * i as f64;
            HistogramBin { lo: 10f64.powf(lo), hi: 10f64.powf(lo + step), count: 0 }
        })
        .collect();
    for &r in ratios {
        let idx = if r > 0.0 { ((r.log10() + DECADES as f64) / step).floor() } else { 0.0 };
        let idx = (idx.max(0.0) as usize).min(n - 1);
        bins[idx].count += 1;
    }
    bins
}

/// Per-mode contribution to `E+(r0, t0)` from a unit orthonormal coordinate
/// `x_m = sqrt(w_m) value_m`.
fn focal_kernel(grid: &QuadratureGrid, mean_photons: f64, focus: &Focus) -> Vec<ComplexVector> {
    let pref = Complex64::new(0.0, field_prefactor(mean_photons));
    let mut out = Vec::with_capacity(grid.n_modes());
    for node in grid.nodes() {
        let f = &node.angular.frame;
        let phase = Complex64::cis(node.omega * (f.kappa.dot(&focus.point) - focus.time))
            * (node.weight.sqrt() * node.omega.powf(1.5))
            * pref;
        for s in Polarization::BOTH {
            out.push(f.eps(s).map(|x| phase * x));
        }
    }
    out
}

fn focal_density(kernel: &[ComplexVector], coords: &[Complex64]) -> f64 {
    let mut e = ComplexVector::from_element(Complex64::new(0.0, 0.0));
    for (g, x) in kernel.iter().zip(coords) {
        e += g * *x;
    }
    squared_norm(&e)
}

fn coordinates(amp: &ModeAmplitude) -> Vec<Complex64> {
    amp.grid().mode_weights().iter().zip(amp.values()).map(|(w, v)| v * w.sqrt()).collect()
}

/// Draw `trials` Haar-random unit amplitudes and compare each focal electric
/// density with the bound. Trial `i` is [`crate::states::random_band_amplitude_stream`]
/// with stream `i`, so every ratio can be reproduced individually.
pub fn monte_carlo_schwarz(
    grid: &Arc<QuadratureGrid>,
    mean_photons: f64,
    trials: usize,
    seed: u64,
    axis: Vector3<f64>,
    focus: Focus,
) -> Result<SchwarzOutcome> {
    if trials == 0 {
        return domain("monte carlo needs at least one trial");
    }
    let bound = normalized_bound(grid.band(), mean_photons);
    if !(bound > 0.0) {
        return domain("bound is zero (degenerate band or no photons); ratios undefined");
    }
    let kernel = focal_kernel(grid, mean_photons, &focus);
    let modes = grid.n_modes();
    let ratios: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| random_unit_coordinates(seed, t, modes).map(|x| focal_density(&kernel, &x) / bound))
        .collect::<Result<_>>()?;

    let fe = matched_amplitude(&MatchedSpec::with_direction(FieldKind::Electric, grid.band(), axis, focus)?, grid)?;
    let matched_coords = coordinates(&fe);
    let matched_ratio = focal_density(&kernel, &matched_coords) / bound;

    // per-node phases break the match unless they are all equal
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let chis: Vec<f64> = (0..grid.n_nodes()).map(|_| rng.random::<f64>() * 2.0 * PI).collect();
    let scrambled: Vec<Complex64> =
        matched_coords.iter().enumerate().map(|(m, x)| x * Complex64::cis(chis[m / 2])).collect();
    let scrambled_ratio = focal_density(&kernel, &scrambled) / bound;
    let global: Vec<Complex64> = matched_coords.iter().map(|x| x * Complex64::cis(chis[0])).collect();
    let global_ratio = focal_density(&kernel, &global) / bound;

    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    let mean_ratio = ratios.iter().sum::<f64>() / trials as f64;
    let mut report = VerificationReport::new("monte carlo schwarz dominance");
    report
        .measure("max random ratio", max_ratio, 1.0, Criterion::AtMost(1.0 + 1e-9))
        .measure("matched ratio", matched_ratio, 1.0, Criterion::AtLeast(1.0 - 1e-8))
        .measure("matched ratio upper", matched_ratio, 1.0, Criterion::AtMost(1.0 + 1e-9))
        .measure("phase-scrambled ratio", scrambled_ratio, 1.0, Criterion::AtMost(1.0 - 1e-8))
        .measure("global-phase ratio", global_ratio, 1.0, Criterion::Relative(1e-10))
        .meta("trials", trials)
        .meta("seed", seed)
        .meta("rng", RNG_ALGORITHM)
        .meta("mean_random_ratio", format!("{mean_ratio:.6e}"))
        .meta("mean_photons", mean_photons);
    grid_meta(&mut report, grid);
    Ok(SchwarzOutcome { report, histogram: ratio_histogram(&ratios), ratios, matched_ratio })
}
