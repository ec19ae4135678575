//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Reference values are recomputed here from the closed
//! forms rather than taken from the library.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::Instant;

use nalgebra::Vector3;
use pulse_density::spectral::{required_omega_order, SpectrumConfig};
use pulse_density::verify::{
    axial_profile_oracle, discrete_fock_check, extrapolated_residuals, magnetic_null_check, maxwell_residual,
    maxwell_sample_points, monte_carlo_schwarz, spectrum_slope_check, MAX_FOCK_MODES,
};
use pulse_density::{
    coherent_coefficients, matched_amplitude, narrowband_intensity_bound, random_band_amplitude, synthesize_field,
    ultimate_energy_density_bound, FieldKind, Focus, FrequencyBand, GridOrders, MatchedSpec, QuadratureGrid,
    UnitSystem,
};

type Outcome = (bool, String);
type Check = (&'static str, fn() -> Outcome);

fn band(a: f64, b: f64) -> FrequencyBand {
    FrequencyBand::new(a, b).unwrap()
}

fn grid(b: FrequencyBand, orders: GridOrders) -> Arc<QuadratureGrid> {
    Arc::new(QuadratureGrid::new(b, orders).unwrap())
}

/// `(pi/3) N (hbar w2 / l2^3 - hbar w1 / l1^3)` with `l = 2 pi / w`, normalized units.
fn closed_form(alpha: f64, beta: f64, n: f64) -> f64 {
    let term = |w: f64| if w == 0.0 { 0.0 } else { w / (2.0 * PI / w).powi(3) };
    PI / 3.0 * n * (term(beta) - term(alpha))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn c1_bound_value() -> Outcome {
    let units = UnitSystem::normalized();
    let b = band(0.5, 1.5);
    let v = ultimate_energy_density_bound(FieldKind::Electric, b, 1.0, &units).unwrap().value;
    let mut worst_lin: f64 = 0.0;
    for n in [0.0, 0.25, 2.0, 7.3, 1e3, 1e6] {
        let vn = ultimate_energy_density_bound(FieldKind::Electric, b, n, &units).unwrap().value;
        worst_lin = worst_lin.max((vn - n * v).abs() / (n * v).max(f64::MIN_POSITIVE));
    }
    let magnetic = ultimate_energy_density_bound(FieldKind::Magnetic, b, 1.0, &units).unwrap().value;
    let ok = (v - 0.0211086).abs() <= 1e-6
        && rel(v, closed_form(0.5, 1.5, 1.0)) < 1e-14
        && worst_lin <= 1e-12
        && magnetic == v;
    (ok, format!("bound = {v:.10e} (target 0.0211086 +- 1e-6), worst linearity defect {worst_lin:.1e}"))
}

fn c2_saturation() -> Outcome {
    let units = UnitSystem::normalized();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    let mut slowest: f64 = 0.0;
    let focus = Focus { point: Vector3::new(0.3, -0.4, 0.2), time: 1.7 };
    for (a, b) in [(0.5, 1.5), (0.0, 1.0), (0.9, 1.1)] {
        let g = grid(band(a, b), GridOrders::default());
        let bound = closed_form(a, b, 1.0);
        for kind in [FieldKind::Electric, FieldKind::Magnetic] {
            let start = Instant::now();
            let amp =
                matched_amplitude(&MatchedSpec::new(kind, band(a, b), Vector3::new(0.0, 0.6, 0.8), focus).unwrap(), &g)
                    .unwrap();
            let s = synthesize_field(&amp, 1.0, focus.point, focus.time, &units).unwrap();
            slowest = slowest.max(start.elapsed().as_secs_f64());
            let u = if kind == FieldKind::Electric { s.u_e } else { s.u_b };
            let e = rel(u, bound);
            worst = worst.max(e);
            ok &= e <= 1e-8;
        }
    }
    (ok, format!("worst relative error {worst:.2e} over 3 bands x {{E, B}} (tol 1e-8), slowest {slowest:.2}s"))
}

fn c3_schwarz() -> Outcome {
    let g = grid(band(0.5, 1.5), GridOrders::default());
    let out = monte_carlo_schwarz(&g, 1.0, 10_000, 42, Vector3::x(), Focus::origin()).unwrap();
    let max = out.ratios.iter().copied().fold(0.0, f64::max);
    let ok = out.ratios.len() == 10_000 && max <= 1.0 + 1e-9 && out.matched_ratio >= 1.0 - 1e-8;
    (ok, format!("10000 trials, max ratio {max:.3e} (<= 1+1e-9), matched ratio {:.15}", out.matched_ratio))
}

fn c4_maxwell() -> Outcome {
    let b = band(0.5, 1.5);
    let g = grid(b, GridOrders::default());
    let focus = Focus::origin();
    let amp = matched_amplitude(&MatchedSpec::new(FieldKind::Electric, b, Vector3::x(), focus).unwrap(), &g).unwrap();
    let h = 2.0 * PI / b.beta() / 50.0;
    let mut ok = true;
    let (mut worst, mut lo, mut hi) = (0.0f64, f64::INFINITY, 0.0f64);
    for (p, t) in maxwell_sample_points(42, 5, &focus) {
        let r = maxwell_residual(&amp, 1.0, p, t, h).unwrap();
        ok &= r.passed() && r.measurements.iter().filter(|m| m.name.ends_with("ratio")).count() == 4;
        for (_, x) in extrapolated_residuals(&amp, 1.0, p, t, h).as_array() {
            worst = worst.max(x);
        }
        for m in r.measurements.iter().filter(|m| m.name.ends_with("ratio")) {
            lo = lo.min(m.computed);
            hi = hi.max(m.computed);
        }
    }
    ok &= worst < 1e-3;
    (
        ok,
        format!(
            "5 points, h = lambda2/50: worst residual {worst:.2e} (< 1e-3), richardson ratios in [{lo:.4}, {hi:.4}]"
        ),
    )
}

fn c5_magnetic_null() -> Outcome {
    let g = grid(band(0.5, 1.5), GridOrders::default());
    let r = magnetic_null_check(&g, 1.0, Vector3::new(1.0, 1.0, 0.0), Focus::origin()).unwrap();
    let ub = r.measurement("U_b/bound for f_e").unwrap().computed;
    let ue = r.measurement("U_e/bound for f_b").unwrap().computed;
    (ub < 1e-12 && ue < 1e-12, format!("U_b/bound for f_e = {ub:.2e}, U_e/bound for f_b = {ue:.2e} (< 1e-12)"))
}

fn c6_spectrum() -> Outcome {
    let b = band(0.5, 1.5);
    let cfg = SpectrumConfig::for_band(b);
    let g = grid(b, GridOrders::new(required_omega_order(b, cfg.half_span), 4, 4));
    let out = spectrum_slope_check(&g, cfg).unwrap();
    let (s, p) = (out.fit.slope, out.fit.power_slope());
    let ok = (s - 3.0).abs() <= 0.05 && (p - 6.0).abs() <= 0.10;
    (
        ok,
        format!(
            "amplitude slope {s:.4} (3 +- 0.05), power slope {p:.4} (6 +- 0.1), {} bins fitted",
            out.fit.bins_fitted
        ),
    )
}

fn c7_narrowband() -> Outcome {
    let units = UnitSystem::normalized();
    let exact = ultimate_energy_density_bound(FieldKind::Electric, band(0.95, 1.05), 1.0, &units).unwrap().value;
    let approx = narrowband_intensity_bound(1.0, 0.1, 1.0, &units).unwrap();
    let ratio = exact * units.c / approx;
    ((ratio - 1.0025).abs() <= 5e-4, format!("exact/narrowband = {ratio:.10} (1.0025 +- 5e-4)"))
}

fn c8_oracle() -> Outcome {
    let b = band(0.5, 1.5);
    let g = grid(b, GridOrders::default());
    let focus = Focus { point: Vector3::new(-0.2, 0.1, 0.4), time: 0.3 };
    let axis = Vector3::new(0.0, 0.0, 1.0);
    let amp = matched_amplitude(&MatchedSpec::new(FieldKind::Electric, b, axis, focus).unwrap(), &g).unwrap();
    let mut worst: f64 = 0.0;
    for tau in [0.5, 5.0, 50.0] {
        let s = synthesize_field(&amp, 1.0, focus.point, focus.time + tau, &UnitSystem::normalized()).unwrap();
        let o = axial_profile_oracle(b, 1.0, axis, tau).unwrap();
        let diff: f64 = (s.e_plus - o).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let norm: f64 = o.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        worst = worst.max(diff / norm);
    }
    (worst <= 1e-8, format!("tau in {{0.5, 5, 50}}: worst relative error {worst:.2e} (<= 1e-8)"))
}

fn c9_fock() -> Outcome {
    let b = band(0.5, 1.5);
    // 192 modes, close to the direct-summation limit
    let g = grid(b, GridOrders::new(3, 4, 8));
    let modes = g.n_modes();
    let stats = coherent_coefficients(1.0, 3).unwrap();
    let focus = Focus::origin();
    let amps = [
        matched_amplitude(&MatchedSpec::new(FieldKind::Electric, b, Vector3::x(), focus).unwrap(), &g).unwrap(),
        random_band_amplitude(&g, 42).unwrap(),
    ];
    let mut ok = modes <= MAX_FOCK_MODES;
    let (mut dev, mut norm, mut sym) = (0.0f64, 0.0f64, 0.0f64);
    for amp in &amps {
        let r = discrete_fock_check(amp, &stats, Vector3::x(), Vector3::new(0.3, -0.2, 0.5), 0.7).unwrap();
        ok &= r.passed();
        for m in &r.measurements {
            if m.name == "direct vs factorized" {
                dev = dev.max(rel(m.computed, m.reference));
            } else if m.name.starts_with("norm") {
                norm = norm.max((m.computed - 1.0).abs());
            } else if m.name.starts_with("symmetry") {
                sym = sym.max(m.computed);
            }
        }
    }
    ok &= dev <= 1e-10 && norm <= 1e-10 && sym <= 1e-15;
    (
        ok,
        format!(
            "{modes} modes, N <= 3: direct vs factorized {dev:.1e}, norm defect {norm:.1e}, symmetry defect {sym:.1e}"
        ),
    )
}

fn c10_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("pulse-density-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut texts = Vec::new();
    let mut codes = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("verify{i}.txt"));
        let status = Command::new(env!("CARGO_BIN_EXE_pulse-density"))
            .args(["verify", "--alpha", "0.5", "--beta", "1.5", "--seed", "42", "--output"])
            .arg(&path)
            .status()
            .unwrap();
        codes.push(status.code());
        texts.push(std::fs::read(&path).unwrap());
    }
    let _ = std::fs::remove_dir_all(&dir);
    let same = texts[0] == texts[1];
    let ok = same && codes.iter().all(|c| *c == Some(0)) && !texts[0].is_empty();
    (
        ok,
        format!(
            "two runs of `verify --seed 42`: byte-identical = {same}, exit codes {codes:?}, {} bytes",
            texts[0].len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Check; 10] = [
        ("bound value and linearity", c1_bound_value),
        ("focal saturation", c2_saturation),
        ("schwarz dominance", c3_schwarz),
        ("maxwell residuals", c4_maxwell),
        ("magnetic null", c5_magnetic_null),
        ("spectral slope", c6_spectrum),
        ("narrowband consistency", c7_narrowband),
        ("oracle agreement", c8_oracle),
        ("discrete fock check", c9_fock),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = f();
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<26} {} ({:.1}s) {detail}",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
