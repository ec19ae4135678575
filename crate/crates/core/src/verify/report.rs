use std::fmt::Write as _;

/// Acceptance rule for one measured quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Criterion {
    /// `|computed - reference| <= tol |reference|`
    Relative(f64),
    /// `|computed - reference| <= tol`
    Absolute(f64),
    /// `lo <= computed <= hi`
    Within { lo: f64, hi: f64 },
    /// `computed <= limit`
    AtMost(f64),
    /// `computed >= limit`
    AtLeast(f64),
}

impl Criterion {
    pub fn accepts(&self, computed: f64, reference: f64) -> bool {
        match *self {
            Criterion::Relative(tol) => (computed - reference).abs() <= tol * reference.abs(),
            Criterion::Absolute(tol) => (computed - reference).abs() <= tol,
            Criterion::Within { lo, hi } => computed >= lo && computed <= hi,
            Criterion::AtMost(limit) => computed <= limit,
            Criterion::AtLeast(limit) => computed >= limit,
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            Criterion::Relative(tol) => format!("rel<={tol:e}"),
            Criterion::Absolute(tol) => format!("abs<={tol:e}"),
            Criterion::Within { lo, hi } => format!("in[{lo},{hi}]"),
            Criterion::AtMost(limit) => format!("<={limit:e}"),
            Criterion::AtLeast(limit) => format!(">={limit:e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub name: String,
    pub computed: f64,
    pub reference: f64,
    pub criterion: Criterion,
    pub passed: bool,
}

/// Outcome of one verification procedure.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub check: String,
    pub measurements: Vec<Measurement>,
    /// Everything needed to reproduce the run (grid orders, seed, steps).
    pub metadata: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerificationReport { check: check.into(), ..Default::default() }
    }

    pub fn measure(
        &mut self,
        name: impl Into<String>,
        computed: f64,
        reference: f64,
        criterion: Criterion,
    ) -> &mut Self {
        let passed = criterion.accepts(computed, reference);
        self.measurements.push(Measurement { name: name.into(), computed, reference, criterion, passed });
        self
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.metadata.push((key.into(), value.to_string()));
        self
    }

    pub fn passed(&self) -> bool {
        !self.measurements.is_empty() && self.measurements.iter().all(|m| m.passed)
    }

    pub fn measurement(&self, name: &str) -> Option<&Measurement> {
        self.measurements.iter().find(|m| m.name == name)
    }
}

/// Plain-text table of reports; numbers carry 17 significant digits so the
/// text is stable across identical runs.
pub fn format_reports(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "[{}] {}", if r.passed() { "PASS" } else { "FAIL" }, r.check);
        for (k, v) in &r.metadata {
            let _ = writeln!(out, "    # {k} = {v}");
        }
        for m in &r.measurements {
            let _ = writeln!(
                out,
                "    {:<4} {:<32} computed={:<24} reference={:<24} {}",
                if m.passed { "ok" } else { "FAIL" },
                m.name,
                format!("{:.16e}", m.computed),
                format!("{:.16e}", m.reference),
                m.criterion.describe()
            );
        }
        for w in &r.warnings {
            let _ = writeln!(out, "    warning: {w}");
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(out, "{} checks, {} passed, {} failed", reports.len(), reports.len() - failed, failed);
    out
}
