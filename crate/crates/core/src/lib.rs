//! Ultimate electric and magnetic energy densities of bandlimited
//! electromagnetic pulses.
//!
//! The crate evaluates the closed-form bound on the normal-ordered energy
//! density of photons confined to a frequency band, constructs the mode
//! amplitudes that saturate it, synthesizes the corresponding classical
//! fields by quadrature over momentum space, and checks every property of
//! those fields numerically.
//!
//! Internally everything runs in normalized units (`hbar = epsilon0 = c =
//! omega0 = 1`); [`geometry::UnitSystem`] converts to SI at the edges.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod spectral;
pub mod states;
pub mod verify;

pub use bounds::{
    narrowband_intensity_bound, normalization_constant, normalized_bound, ultimate_energy_density_bound, BoundReport,
    FieldKind,
};
pub use error::{Error, Result};
pub use fields::{scan, synthesize_field, time_series_at_focus, FieldSample, ScanAxis, ScanResult, ScanSpec};

pub use geometry::{build_quadrature, polarization_frame, FrequencyBand, GridOrders, QuadratureGrid, UnitSystem};
pub use states::{
    coherent_coefficients, matched_amplitude, random_band_amplitude, Focus, MatchedSpec, ModeAmplitude,
    PhotonStatistics,
};
