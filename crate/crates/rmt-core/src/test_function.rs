//! Test functions applied to eigenvalues before summation.
//!
//! The built-in choices all have closed-form derivatives, which the CLT
//! variance quadrature needs on the diagonal of its divided difference.
//! Tabulated functions fall back to central differences with step 1e-5.

use crate::error::{Result, RmtError};

const CENTRAL_DIFF_STEP: f64 = 1e-5;

/// A scalar function of an eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    /// phi(x) = x; the LES reduces to the trace.
    Identity,
    /// phi(x) = x^k. `Power(0)` counts eigenvalues, `Power(2)` is the default indicator.
    Power(u32),
    /// phi(x) = ln x; requires the spectrum bounded away from zero.
    Log,
    /// Chebyshev polynomial of the first kind, on the support rescaled to [-1, 1].
    Chebyshev { degree: u32, lo: f64, hi: f64 },
    /// Piecewise-linear interpolation of tabulated points.
    Custom(Tabulated),
}

/// Tabulated (x, y) samples with strictly increasing x.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Tabulated {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(RmtError::Domain(
                "tabulated function needs >= 2 points with matching lengths".into(),
            ));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(RmtError::Domain(
                "tabulated abscissae must be strictly increasing".into(),
            ));
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(RmtError::Domain("tabulated points must be finite".into()));
        }
        Ok(Self { xs, ys })
    }

    fn eval(&self, x: f64) -> Result<f64> {
        let (first, last) = (self.xs[0], *self.xs.last().unwrap());
        if x < first || x > last {
            return Err(RmtError::Domain(format!(
                "{x} outside tabulated range [{first}, {last}]"
            )));
        }
        let idx = match self.xs.binary_search_by(|p| p.partial_cmp(&x).unwrap()) {
            Ok(i) => return Ok(self.ys[i]),
            Err(i) => i.clamp(1, self.xs.len() - 1),
        };
        let (x0, x1) = (self.xs[idx - 1], self.xs[idx]);
        let (y0, y1) = (self.ys[idx - 1], self.ys[idx]);
        Ok(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }
}

impl TestFunction {
    /// Evaluate at an eigenvalue.
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            TestFunction::Identity => Ok(x),
            TestFunction::Power(k) => Ok(x.powi(*k as i32)),
            TestFunction::Log => {
                if x <= 0.0 {
                    Err(RmtError::Domain(format!("log of non-positive value {x}")))
                } else {
                    Ok(x.ln())
                }
            }
            TestFunction::Chebyshev { degree, lo, hi } => {
                let u = rescale(x, *lo, *hi);
                Ok(chebyshev_t(*degree, u))
            }
            TestFunction::Custom(tab) => tab.eval(x),
        }
    }

    /// First derivative, closed form for the built-ins.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        match self {
            TestFunction::Identity => Ok(1.0),
            TestFunction::Power(0) => Ok(0.0),
            TestFunction::Power(k) => Ok(f64::from(*k) * x.powi(*k as i32 - 1)),
            TestFunction::Log => {
                if x <= 0.0 {
                    Err(RmtError::Domain(format!("log' of non-positive value {x}")))
                } else {
                    Ok(1.0 / x)
                }
            }
            TestFunction::Chebyshev { degree, lo, hi } => {
                // T_k'(u) = k U_{k-1}(u), chain rule for the rescaling.
                let u = rescale(x, *lo, *hi);
                let du_dx = 2.0 / (hi - lo);
                Ok(f64::from(*degree) * chebyshev_u(degree.saturating_sub(1), u) * du_dx)
            }
            TestFunction::Custom(tab) => {
                let h = CENTRAL_DIFF_STEP;
                Ok((tab.eval(x + h)? - tab.eval(x - h)?) / (2.0 * h))
            }
        }
    }

    /// Short descriptor used in CSV metadata and reports.
    pub fn descriptor(&self) -> String {
        match self {
            TestFunction::Identity => "identity".into(),
            TestFunction::Power(k) => format!("power{k}"),
            TestFunction::Log => "log".into(),
            TestFunction::Chebyshev { degree, lo, hi } => format!("cheb{degree}[{lo},{hi}]"),
            TestFunction::Custom(_) => "custom".into(),
        }
    }

    /// Reject combinations that are undefined on the given support,
    /// e.g. the logarithm when the lower edge touches zero.
    pub fn validate_on_support(&self, lo: f64, _hi: f64) -> Result<()> {
        if matches!(self, TestFunction::Log) && lo <= 1e-9 {
            return Err(RmtError::Domain(format!(
                "log test function needs support bounded away from 0 (lower edge {lo:.3e}); \
                 requires c < 1"
            )));
        }
        Ok(())
    }
}

fn rescale(x: f64, lo: f64, hi: f64) -> f64 {
    (2.0 * x - hi - lo) / (hi - lo)
}

/// Chebyshev polynomial of the first kind, by recurrence (valid outside [-1, 1] too).
fn chebyshev_t(k: u32, u: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => u,
        _ => {
            let (mut a, mut b) = (1.0, u);
            for _ in 2..=k {
                let next = 2.0 * u * b - a;
                a = b;
                b = next;
            }
            b
        }
    }
}

/// Chebyshev polynomial of the second kind.
fn chebyshev_u(k: u32, u: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => 2.0 * u,
        _ => {
            let (mut a, mut b) = (1.0, 2.0 * u);
            for _ in 2..=k {
                let next = 2.0 * u * b - a;
                a = b;
                b = next;
            }
            b
        }
    }
}
