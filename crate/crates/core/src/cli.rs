//! Command-line front end: `bound`, `synthesize`, `scan`, `spectrum`,
//! `verify` and `mc`.
//!
//! Exit codes are 0 on success, 1 when the inputs are well formed but violate
//! a precondition (or `verify` finds a failing check) and 2 on usage errors.
//! Numbers are written with 17 significant digits so reruns are byte-identical.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::Vector3;

use crate::bounds::{narrowband_intensity_bound, ultimate_energy_density_bound, FieldKind};
use crate::error::{domain, Error, Result};
use crate::fields::{scan, synthesize_field, FieldSample, ScanAxis, ScanSpec};
use crate::geometry::{FrequencyBand, GridOrders, QuadratureGrid, UnitSystem};
use crate::spectral::{required_omega_order, SpectrumConfig};
use crate::states::{matched_amplitude, random_band_amplitude, Focus, MatchedSpec, ModeAmplitude, RNG_ALGORITHM};
use crate::verify::{format_reports, monte_carlo_schwarz, run_suite, spectrum_slope_check, VerifyConfig};

const NM: f64 = 1e-9;
const FS: f64 = 1e-15;

#[derive(Parser, Debug)]
#[command(name = "pulse-density", version, about = "Energy-density bounds and optimal fields of bandlimited pulses")]
#[command(args_conflicts_with_subcommands = true, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the ultimate energy-density bound of a band.
    Bound {
        #[command(flatten)]
        band: BandArgs,
        #[arg(long, value_enum, default_value_t = Kind::Electric)]
        kind: Kind,
    },
    /// Fields and energy densities at one spacetime point, as a one-row CSV.
    Synthesize {
        #[command(flatten)]
        band: BandArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        state: StateArgs,
        /// Field point `x,y,z` (default: the focus).
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        point: Option<Vector3<f64>>,
        /// Field time (default: the focus time).
        #[arg(long)]
        time: Option<f64>,
        #[arg(long)]
        classical: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Fields over a rectangular spacetime grid of offsets from the focus, as CSV.
    Scan {
        #[command(flatten)]
        band: BandArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        state: StateArgs,
        /// x offsets `min:max:count` (default 0).
        #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
        x: Option<ScanAxis>,
        #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
        y: Option<ScanAxis>,
        #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
        z: Option<ScanAxis>,
        #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
        t: Option<ScanAxis>,
        #[arg(long)]
        classical: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Focal amplitude spectrum of the matched electric pulse and its in-band slope.
    Spectrum {
        #[command(flatten)]
        band: BandArgs,
        /// Spectral order (default: the smallest order that resolves the window).
        #[arg(long)]
        n_omega: Option<usize>,
        #[arg(long, default_value_t = 4)]
        n_theta: usize,
        #[arg(long, default_value_t = 4)]
        n_phi: usize,
        /// Time samples (default 4096, doubled as needed for narrow bands).
        #[arg(long)]
        samples: Option<usize>,
        /// Window half-width in normalized time (default 200, widened for narrow bands).
        #[arg(long)]
        half_span: Option<f64>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run every verification check and print a pass/fail table.
    Verify {
        #[command(flatten)]
        band: BandArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Measurement axis `x,y,z`.
        #[arg(long, value_parser = parse_vector, default_value = "1,0,0", allow_hyphen_values = true)]
        axis: Vector3<f64>,
        #[arg(long, value_parser = parse_vector, default_value = "0,0,0", allow_hyphen_values = true)]
        focus: Vector3<f64>,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Monte Carlo check that no random amplitude beats the bound; writes the ratio histogram.
    Mc {
        #[command(flatten)]
        band: BandArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_parser = parse_vector, default_value = "1,0,0", allow_hyphen_values = true)]
        axis: Vector3<f64>,
        #[arg(long, value_parser = parse_vector, default_value = "0,0,0", allow_hyphen_values = true)]
        focus: Vector3<f64>,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct BandArgs {
    /// Lower band edge in units of omega0 (default 0.5).
    #[arg(long, conflicts_with_all = ["lambda_min_nm", "lambda_max_nm"])]
    alpha: Option<f64>,
    /// Upper band edge in units of omega0 (default 1.5).
    #[arg(long, conflicts_with_all = ["lambda_min_nm", "lambda_max_nm"])]
    beta: Option<f64>,
    /// Shortest wavelength of the band [nm].
    #[arg(long, requires_all = ["lambda_max_nm", "lambda0_nm"])]
    lambda_min_nm: Option<f64>,
    /// Longest wavelength of the band [nm].
    #[arg(long, requires_all = ["lambda_min_nm", "lambda0_nm"])]
    lambda_max_nm: Option<f64>,
    /// Mean photon number.
    #[arg(long, default_value_t = 1.0)]
    n_mean: f64,
    /// Normalization wavelength [nm]; switches to SI output with lengths in nm and times in fs.
    #[arg(long)]
    lambda0_nm: Option<f64>,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, default_value_t = 32)]
    n_omega: usize,
    #[arg(long, default_value_t = 32)]
    n_theta: usize,
    #[arg(long, default_value_t = 16)]
    n_phi: usize,
}

#[derive(Args, Debug)]
struct StateArgs {
    /// `electric` or `magnetic` focus for the matched amplitude.
    #[arg(long, value_enum, default_value_t = Kind::Electric)]
    kind: Kind,
    /// Use a random normalized amplitude with this seed instead of the matched one.
    #[arg(long)]
    random_seed: Option<u64>,
    /// Polarization axis `x,y,z` of the matched amplitude.
    #[arg(long, value_parser = parse_vector, default_value = "1,0,0", allow_hyphen_values = true)]
    axis: Vector3<f64>,
    /// Focus position `x,y,z`.
    #[arg(long, value_parser = parse_vector, default_value = "0,0,0", allow_hyphen_values = true)]
    focus: Vector3<f64>,
    /// Focus time.
    #[arg(long, default_value_t = 0.0)]
    t0: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Electric,
    Magnetic,
}

impl From<Kind> for FieldKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Electric => FieldKind::Electric,
            Kind::Magnetic => FieldKind::Magnetic,
        }
    }
}

fn parse_vector(s: &str) -> std::result::Result<Vector3<f64>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got '{s}'"));
    }
    let mut v = Vector3::zeros();
    for (c, p) in v.iter_mut().zip(parts) {
        *c = p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}"))?;
    }
    Ok(v)
}

fn parse_axis(s: &str) -> std::result::Result<ScanAxis, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}"));
    match parts.as_slice() {
        [v] => Ok(ScanAxis::fixed(num(v)?)),
        [lo, hi, n] => {
            let n = n.trim().parse::<usize>().map_err(|e| format!("'{n}': {e}"))?;
            Ok(ScanAxis::new(num(lo)?, num(hi)?, n))
        }
        _ => Err(format!("expected 'value' or 'min:max:count', got '{s}'")),
    }
}

/// `{:.16e}`: 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Units the run reports in; positions and times on the command line use
/// the same units (normalized, or nm and fs in SI mode).
struct Context {
    band: FrequencyBand,
    mean: f64,
    units: UnitSystem,
}

impl Context {
    fn new(args: &BandArgs) -> Result<Self> {
        let units = match args.lambda0_nm {
            Some(l) => UnitSystem::si_from_wavelength(l * NM)?,
            None => UnitSystem::normalized(),
        };
        let band = match (args.lambda_min_nm, args.lambda_max_nm) {
            (Some(lo), Some(hi)) => FrequencyBand::from_wavelengths(lo * NM, hi * NM, &units)?,
            _ => FrequencyBand::new(args.alpha.unwrap_or(0.5), args.beta.unwrap_or(1.5))?,
        };
        if !(args.n_mean.is_finite() && args.n_mean >= 0.0) {
            return domain(format!("mean photon number must be ≥ 0, got {}", args.n_mean));
        }
        Ok(Context { band, mean: args.n_mean, units })
    }

    fn si(&self) -> bool {
        !self.units.is_normalized()
    }

    /// Command-line length to the SI/normalized value the library expects.
    fn length_in(&self, x: f64) -> f64 {
        if self.si() {
            x * NM
        } else {
            x
        }
    }

    fn time_in(&self, t: f64) -> f64 {
        if self.si() {
            t * FS
        } else {
            t
        }
    }

    fn length_out(&self, x: f64) -> f64 {
        if self.si() {
            x / NM
        } else {
            x
        }
    }

    fn time_out(&self, t: f64) -> f64 {
        if self.si() {
            t / FS
        } else {
            t
        }
    }

    /// Focus in normalized units.
    fn focus(&self, point: Vector3<f64>, t0: f64) -> Focus {
        Focus {
            point: point.map(|x| self.length_in(x)) / self.units.length_scale(),
            time: self.time_in(t0) / self.units.time_scale(),
        }
    }

    fn header(&self, out: &mut String, command: &str) {
        let _ = writeln!(out, "# tool = pulse-density {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "# command = {command}");
        let _ = writeln!(out, "# alpha = {}", num(self.band.alpha()));
        let _ = writeln!(out, "# beta = {}", num(self.band.beta()));
        let _ = writeln!(out, "# n_mean = {}", num(self.mean));
        if self.si() {
            let _ = writeln!(out, "# units = SI (lengths nm, times fs, fields V/m and T, densities J/m^3)");
            let _ = writeln!(out, "# lambda0_nm = {}", num(self.units.lambda0 / NM));
        } else {
            let _ = writeln!(out, "# units = normalized (hbar = eps0 = c = omega0 = 1)");
        }
    }
}

fn grid_header(out: &mut String, orders: GridOrders) {
    let _ = writeln!(out, "# grid = n_omega {} n_theta {} n_phi {}", orders.n_omega, orders.n_theta, orders.n_phi);
}

fn build_state(ctx: &Context, grid: &GridArgs, state: &StateArgs, out: &mut String) -> Result<ModeAmplitude> {
    let orders = GridOrders::new(grid.n_omega, grid.n_theta, grid.n_phi);
    let grid = Arc::new(QuadratureGrid::new(ctx.band, orders)?);
    let focus = ctx.focus(state.focus, state.t0);
    grid_header(out, orders);
    let amp = match state.random_seed {
        Some(seed) => {
            let _ = writeln!(out, "# state = random (seed {seed}, {RNG_ALGORITHM})");
            // a random amplitude has no focus of its own; anchor it to the requested one
            let r = random_band_amplitude(&grid, seed)?;
            ModeAmplitude::from_values(grid, r.values().to_vec(), focus)?
        }
        None => {
            let kind: FieldKind = state.kind.into();
            let _ = writeln!(out, "# state = matched {}", kind.name());
            let _ = writeln!(out, "# axis = {},{},{}", num(state.axis.x), num(state.axis.y), num(state.axis.z));
            matched_amplitude(&MatchedSpec::with_direction(kind, ctx.band, state.axis, focus)?, &grid)?
        }
    };
    let _ = writeln!(
        out,
        "# focus = {},{},{} t0 = {}",
        num(state.focus.x),
        num(state.focus.y),
        num(state.focus.z),
        num(state.t0)
    );
    Ok(amp)
}

const CSV_HEADER: &str = "x,y,z,t,Ue,Ub,ReEx,ImEx,ReEy,ImEy,ReEz,ImEz,ReBx,ImBx,ReBy,ImBy,ReBz,ImBz";

fn csv_header(out: &mut String, classical: bool) {
    out.push_str(CSV_HEADER);
    if classical {
        out.push_str(",UeClassical,UbClassical");
    }
    out.push('\n');
}

fn csv_row(out: &mut String, ctx: &Context, s: &FieldSample, classical: bool) {
    let mut cols = vec![
        num(ctx.length_out(s.point.x)),
        num(ctx.length_out(s.point.y)),
        num(ctx.length_out(s.point.z)),
        num(ctx.time_out(s.time)),
        num(s.u_e),
        num(s.u_b),
    ];
    for v in [&s.e_plus, &s.b_plus] {
        for c in v.iter() {
            cols.push(num(c.re));
            cols.push(num(c.im));
        }
    }
    if classical {
        cols.push(num(s.classical_electric_density(&ctx.units)));
        cols.push(num(s.classical_magnetic_density(&ctx.units)));
    }
    out.push_str(&cols.join(","));
    out.push('\n');
}

fn bound_text(ctx: &Context, kind: FieldKind) -> Result<String> {
    let norm = ultimate_energy_density_bound(kind, ctx.band, ctx.mean, &UnitSystem::normalized())?;
    let mut out = String::new();
    let _ = writeln!(out, "kind = {}", kind.name());
    let _ = writeln!(out, "alpha = {}", num(ctx.band.alpha()));
    let _ = writeln!(out, "beta = {}", num(ctx.band.beta()));
    let _ = writeln!(out, "n_mean = {}", num(ctx.mean));
    let _ = writeln!(out, "bound_normalized = {}", num(norm.value));
    if ctx.si() {
        let u = &ctx.units;
        let si = ultimate_energy_density_bound(kind, ctx.band, ctx.mean, u)?;
        let _ = writeln!(out, "lambda0_nm = {}", num(u.lambda0 / NM));
        let _ = writeln!(out, "omega0_rad_per_s = {}", num(u.omega0));
        let _ = writeln!(out, "bound_si_j_per_m3 = {}", num(si.value));
        let _ = writeln!(out, "intensity_si_w_per_m2 = {}", num(u.c * si.value));
        let center = 0.5 * (ctx.band.alpha() + ctx.band.beta());
        if center > 0.0 {
            let nb = narrowband_intensity_bound(center * u.omega0, ctx.band.delta_omega(u), ctx.mean, u)?;
            let _ = writeln!(out, "narrowband_intensity_si_w_per_m2 = {}", num(nb));
        }
    }
    Ok(out)
}

fn emit(text: &str, output: &Option<PathBuf>, out: &mut dyn Write) -> std::io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => out.write_all(text.as_bytes()),
    }
}

enum Outcome {
    Ok,
    ChecksFailed,
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> std::result::Result<Outcome, Failure> {
    match cmd {
        Command::Bound { band, kind } => {
            let ctx = Context::new(&band)?;
            emit(&bound_text(&ctx, kind.into())?, &None, out)?;
        }
        Command::Synthesize { band, grid, state, point, time, classical, output } => {
            let ctx = Context::new(&band)?;
            let mut text = String::new();
            ctx.header(&mut text, "synthesize");
            let amp = build_state(&ctx, &grid, &state, &mut text)?;
            let p = point.unwrap_or(state.focus).map(|x| ctx.length_in(x));
            let t = ctx.time_in(time.unwrap_or(state.t0));
            let s = synthesize_field(&amp, ctx.mean, p, t, &ctx.units)?;
            csv_header(&mut text, classical);
            csv_row(&mut text, &ctx, &s, classical);
            emit(&text, &output, out)?;
        }
        Command::Scan { band, grid, state, x, y, z, t, classical, output } => {
            let ctx = Context::new(&band)?;
            let mut text = String::new();
            ctx.header(&mut text, "scan");
            let amp = build_state(&ctx, &grid, &state, &mut text)?;
            let axis = |a: Option<ScanAxis>, f: &dyn Fn(f64) -> f64| {
                let a = a.unwrap_or(ScanAxis::fixed(0.0));
                ScanAxis::new(f(a.min), f(a.max), a.count)
            };
            let length = |v: f64| ctx.length_in(v);
            let time = |v: f64| ctx.time_in(v);
            let spec = ScanSpec {
                x: axis(x, &length),
                y: axis(y, &length),
                z: axis(z, &length),
                t: axis(t, &time),
                origin: Focus { point: state.focus.map(|v| ctx.length_in(v)), time: ctx.time_in(state.t0) },
            };
            let result = scan(&amp, ctx.mean, &spec, &ctx.units)?;
            let _ = writeln!(text, "# rows = {}", result.samples.len());
            csv_header(&mut text, classical);
            for s in &result.samples {
                csv_row(&mut text, &ctx, s, classical);
            }
            let (pe, pb) = (&result.samples[result.peak_electric], &result.samples[result.peak_magnetic]);
            let _ = writeln!(
                text,
                "# summary: peak Ue = {} at row {}, peak Ub = {} at row {}",
                num(pe.u_e),
                result.peak_electric,
                num(pb.u_b),
                result.peak_magnetic
            );
            emit(&text, &output, out)?;
        }
        Command::Spectrum { band, n_omega, n_theta, n_phi, samples, half_span, output } => {
            let ctx = Context::new(&band)?;
            let mut cfg = SpectrumConfig::for_band(ctx.band);
            if let Some(n) = samples {
                cfg.samples = n;
            }
            if let Some(h) = half_span {
                cfg.half_span = h;
            }
            if cfg.samples < 2 || !(cfg.half_span > 0.0 && cfg.half_span.is_finite()) {
                return Err(Error::Domain("spectrum needs at least two samples and a positive half span".into()).into());
            }
            let orders = GridOrders::new(
                n_omega.unwrap_or_else(|| required_omega_order(ctx.band, cfg.half_span)),
                n_theta,
                n_phi,
            );
            let grid = Arc::new(QuadratureGrid::new(ctx.band, orders)?);
            let outcome = spectrum_slope_check(&grid, cfg)?;
            let mut text = String::new();
            ctx.header(&mut text, "spectrum");
            grid_header(&mut text, orders);
            let _ = writeln!(text, "# samples = {} half_span = {} window = hann", cfg.samples, num(cfg.half_span));
            // omega is reported in units of omega0 in both unit modes
            text.push_str("omega,amplitude,power\n");
            for (o, a) in outcome.spectrum.omega.iter().zip(&outcome.spectrum.amplitude) {
                let _ = writeln!(text, "{},{},{}", num(*o), num(*a), num(a * a));
            }
            let fit = outcome.fit;
            let _ = writeln!(
                text,
                "# slope = {} power_slope = {} bins_in_band = {} bins_fitted = {} leakage = {}",
                num(fit.slope),
                num(fit.power_slope()),
                fit.bins_in_band,
                fit.bins_fitted,
                num(fit.leakage)
            );
            emit(&text, &output, out)?;
        }
        Command::Verify { band, grid, axis, focus, t0, seed, trials, output } => {
            let ctx = Context::new(&band)?;
            let mut cfg = VerifyConfig::new(ctx.band);
            cfg.mean_photons = ctx.mean;
            cfg.orders = GridOrders::new(grid.n_omega, grid.n_theta, grid.n_phi);
            cfg.axis = axis;
            cfg.focus = ctx.focus(focus, t0);
            cfg.seed = seed;
            cfg.trials = trials;
            let reports = run_suite(&cfg)?;
            let mut text = String::new();
            ctx.header(&mut text, "verify");
            let _ = writeln!(text, "# seed = {seed}");
            text.push_str(&format_reports(&reports));
            emit(&text, &output, out)?;
            if !reports.iter().all(|r| r.passed()) {
                return Ok(Outcome::ChecksFailed);
            }
        }
        Command::Mc { band, grid, axis, focus, t0, seed, trials, output } => {
            let ctx = Context::new(&band)?;
            let orders = GridOrders::new(grid.n_omega, grid.n_theta, grid.n_phi);
            let g = Arc::new(QuadratureGrid::new(ctx.band, orders)?);
            let outcome = monte_carlo_schwarz(&g, ctx.mean, trials, seed, axis, ctx.focus(focus, t0))?;
            let mut text = String::new();
            ctx.header(&mut text, "mc");
            grid_header(&mut text, orders);
            let _ = writeln!(text, "# seed = {seed} trials = {trials} rng = {RNG_ALGORITHM}");
            text.push_str("log10_lo,log10_hi,lo,hi,count\n");
            for b in &outcome.histogram {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{}",
                    num(b.lo.log10()),
                    num(b.hi.log10()),
                    num(b.lo),
                    num(b.hi),
                    b.count
                );
            }
            let max = outcome.ratios.iter().copied().fold(0.0, f64::max);
            let _ = writeln!(
                text,
                "# summary: max random ratio = {} matched ratio = {} passed = {}",
                num(max),
                num(outcome.matched_ratio),
                outcome.report.passed()
            );
            emit(&text, &output, out)?;
            if !outcome.report.passed() {
                return Ok(Outcome::ChecksFailed);
            }
        }
    }
    Ok(Outcome::Ok)
}

enum Failure {
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parse `args` (including the program name) and run the command, writing
/// results to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::ChecksFailed) => 1,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
