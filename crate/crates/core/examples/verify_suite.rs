//! Run the whole verification suite and print the report table.
//!
//! cargo run --release --example verify_suite

use pulse_density::verify::{format_reports, run_suite, VerifyConfig};
use pulse_density::FrequencyBand;

fn main() -> pulse_density::Result<()> {
    let mut cfg = VerifyConfig::new(FrequencyBand::new(0.5, 1.5)?);
    cfg.trials = 2000;
    let reports = run_suite(&cfg)?;
    print!("{}", format_reports(&reports));
    std::process::exit(if reports.iter().all(|r| r.passed()) { 0 } else { 1 });
}
