//! End-to-end case reproductions with built-in pass/fail evaluation.

pub mod fault;
pub mod lorenz;

/// On-attractor Lorenz state: the classic (sigma 10, rho 28, beta 8/3)
/// system integrated for 100 s from (1, 1, 1) at dt = 1e-3. Starting here
/// keeps the first windows free of off-attractor transients.
pub const LORENZ_CASE_INITIAL_STATE: [f64; 3] = [-6.011914594404, -9.314206259724, 17.807379196751];

/// One verdict line of a case report.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Aggregated case verdict.
#[derive(Debug, Clone)]
pub struct CaseReport {
    pub case: &'static str,
    pub checks: Vec<CheckLine>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// One PASS/FAIL line per check plus a summary verdict.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{verdict} reproduce-{}: {}/{} checks passed\n",
            self.case,
            self.checks.iter().filter(|c| c.pass).count(),
            self.checks.len()
        ));
        out
    }
}

/// Tag an error with the pipeline stage it came from.
pub(crate) fn stage<T>(name: &str, r: crate::error::Result<T>) -> crate::error::Result<T> {
    use crate::error::CliError;
    r.map_err(|e| match e {
        CliError::Config(m) => CliError::Config(format!("stage {name}: {m}")),
        CliError::Runtime(m) => CliError::Runtime(format!("stage {name}: {m}")),
    })
}

/// First window index whose sample range contains `sample`.
pub(crate) fn first_window_containing(sample: usize, length: usize, stride: usize) -> usize {
    if sample < length {
        0
    } else {
        (sample - length) / stride + 1
    }
}
