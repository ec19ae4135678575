//! Independent oracles and numerical verification of every checkable
//! property: bound saturation, Schwarz dominance, Maxwell consistency,
//! spectral law, magnetic null and the Fock-space expectation formula.

mod checks;
mod fock;
mod maxwell;
mod oracle;
mod report;
mod schwarz;
mod suite;

pub use checks::{
    magnetic_null_check, narrowband_consistency_check, oracle_agreement_check, saturation_check, spectrum_slope_check,
    SpectrumOutcome,
};
pub use fock::{discrete_fock_check, max_transposition_defect, symmetrized_product, MAX_FOCK_MODES, MAX_FOCK_PHOTONS};
pub use maxwell::{central_difference_residuals, extrapolated_residuals, maxwell_residual, MaxwellResiduals};
pub use oracle::{axial_profile_oracle, cubic_moment_integral};
pub use report::{format_reports, Criterion, Measurement, VerificationReport};
pub use schwarz::{monte_carlo_schwarz, ratio_histogram, HistogramBin, SchwarzOutcome};
pub use suite::{maxwell_sample_points, run_suite, VerifyConfig};
