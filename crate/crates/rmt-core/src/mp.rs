//! Marchenko-Pastur null model for the covariance scaling M = (1/N) Gamma Gamma^T.
//!
//! With unit-variance entries and aspect ratio c = N/T <= 1, the limiting
//! eigenvalue density is supported on
//!
//! ```text
//! [lambda-, lambda+] = [1 + 1/c - 2/sqrt(c), 1 + 1/c + 2/sqrt(c)]
//! ```
//!
//! parameterized by zeta(theta) = 1 + 1/c + (2/sqrt(c)) sin(theta) over
//! (-pi/2, pi/2). Integrals against the density are computed after the
//! substitution lambda = zeta(theta), which turns the square-root edge
//! behavior into a smooth cos^2 factor:
//!
//! ```text
//! integral phi(lambda) rho(lambda) dlambda
//!   = (2 / (c pi)) integral phi(zeta(theta)) cos^2(theta) / zeta(theta) dtheta
//! ```
//!
//! so a modest Gauss-Legendre rule reaches machine accuracy.

use crate::error::{Result, RmtError};
use crate::quadrature::GaussLegendre;
use crate::test_function::TestFunction;

use std::f64::consts::{FRAC_PI_2, PI};

/// Node count for density/mean quadrature; doubled once to confirm stability.
pub(crate) const MEAN_NODES: usize = 256;
/// Relative stability demanded between a rule and its doubled refinement.
pub(crate) const REFINE_TOL: f64 = 1e-8;

/// The Marchenko-Pastur law for a given aspect ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MpLaw {
    c: f64,
    lower: f64,
    upper: f64,
}

impl MpLaw {
    /// Requires 0 < c <= 1 (the CLT regime).
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(RmtError::AspectRatioOutOfRange { c });
        }
        let s = 2.0 / c.sqrt();
        let center = 1.0 + 1.0 / c;
        Ok(Self {
            c,
            lower: center - s,
            upper: center + s,
        })
    }

    pub fn aspect_ratio(&self) -> f64 {
        self.c
    }

    /// Support endpoints (lambda-, lambda+).
    pub fn support(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    /// zeta(theta) = 1 + 1/c + (2/sqrt(c)) sin(theta).
    pub fn zeta(&self, theta: f64) -> f64 {
        1.0 + 1.0 / self.c + 2.0 / self.c.sqrt() * theta.sin()
    }

    /// Density sqrt((lambda+ - x)(x - lambda-)) / (2 pi x) inside the support, 0 outside.
    pub fn density(&self, x: f64) -> f64 {
        if x <= self.lower || x >= self.upper || x <= 0.0 {
            return 0.0;
        }
        ((self.upper - x) * (x - self.lower)).sqrt() / (2.0 * PI * x)
    }

    /// Distribution function of the law, by quadrature in theta-space.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.lower {
            return 0.0;
        }
        if x >= self.upper {
            return 1.0;
        }
        let b = 2.0 / self.c.sqrt();
        let t = ((x - 1.0 - 1.0 / self.c) / b).clamp(-1.0, 1.0).asin();
        let rule = GaussLegendre::new(128);
        let integral = rule.integrate(-FRAC_PI_2, t, |theta| {
            let cos = theta.cos();
            cos * cos / self.zeta(theta)
        });
        (2.0 / (self.c * PI) * integral).clamp(0.0, 1.0)
    }

    /// integral of phi against the density, with one node-doubling stability check.
    pub fn integrate_phi(&self, phi: &TestFunction) -> Result<f64> {
        phi.validate_on_support(self.lower, self.upper)?;
        let coarse = self.integrate_phi_with(phi, MEAN_NODES)?;
        let fine = self.integrate_phi_with(phi, 2 * MEAN_NODES)?;
        if (fine - coarse).abs() > REFINE_TOL * fine.abs().max(1.0) {
            return Err(RmtError::Numeric(format!(
                "mean quadrature unstable under refinement: {coarse} vs {fine} (phi = {})",
                phi.descriptor()
            )));
        }
        Ok(fine)
    }

    fn integrate_phi_with(&self, phi: &TestFunction, nodes: usize) -> Result<f64> {
        let rule = GaussLegendre::new(nodes);
        let mut acc = 0.0;
        for (theta, w) in rule.scaled(-FRAC_PI_2, FRAC_PI_2) {
            let z = self.zeta(theta);
            let cos = theta.cos();
            acc += w * phi.eval(z)? * cos * cos / z;
        }
        Ok(2.0 / (self.c * PI) * acc)
    }
}

/// Support endpoints for aspect ratio c; errors outside (0, 1].
pub fn mp_support(c: f64) -> Result<(f64, f64)> {
    Ok(MpLaw::new(c)?.support())
}

/// Density at `lambda` for aspect ratio c; zero outside the support.
pub fn mp_density(lambda: f64, c: f64) -> Result<f64> {
    Ok(MpLaw::new(c)?.density(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn support_at_unit_ratio() {
        assert_eq!(mp_support(1.0).unwrap(), (0.0, 4.0));
    }

    #[test]
    fn support_at_quarter_ratio() {
        let (lo, hi) = mp_support(0.25).unwrap();
        assert_abs_diff_eq!(lo, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hi, 9.0, epsilon = 1e-12);
    }

    #[test]
    fn support_at_lorenz_case_ratio() {
        // c = 3/2000, the 3-channel/2000-sample window shape.
        let (lo, hi) = mp_support(3.0 / 2000.0).unwrap();
        assert_abs_diff_eq!(lo, 616.03, epsilon = 0.01);
        assert_abs_diff_eq!(hi, 719.31, epsilon = 0.01);
    }

    #[test]
    fn rejects_out_of_regime_ratio() {
        assert!(mp_support(0.0).is_err());
        assert!(mp_support(1.5).is_err());
        assert!(mp_support(-0.1).is_err());
    }

    #[test]
    fn density_vanishes_outside_support() {
        assert_eq!(mp_density(0.5, 0.25).unwrap(), 0.0);
        assert_eq!(mp_density(9.5, 0.25).unwrap(), 0.0);
    }

    #[test]
    fn density_value_at_center_for_c_one() {
        // c = 1: rho(2) = sqrt(2 * 2) / (4 pi) = 1 / (2 pi).
        let got = mp_density(2.0, 1.0).unwrap();
        assert_abs_diff_eq!(got, 1.0 / (2.0 * PI), epsilon = 1e-12);
    }

    #[test]
    fn density_integrates_to_one() {
        // Adaptive-free check: theta-space quadrature of phi = 1.
        for &c in &[0.05, 0.25, 0.5, 1.0] {
            let law = MpLaw::new(c).unwrap();
            let total = law.integrate_phi(&TestFunction::Power(0)).unwrap();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-6);
        }
        // Direct lambda-space Simpson cross-check at c = 0.25.
        let law = MpLaw::new(0.25).unwrap();
        let (lo, hi) = law.support();
        let n = 200_001;
        let h = (hi - lo) / (n - 1) as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let x = lo + i as f64 * h;
            let w = if i == 0 || i == n - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += w * law.density(x);
        }
        assert_abs_diff_eq!(acc * h / 3.0, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn first_moment_is_inverse_ratio() {
        for &c in &[0.1, 0.25, 0.5, 1.0] {
            let law = MpLaw::new(c).unwrap();
            let mean = law.integrate_phi(&TestFunction::Identity).unwrap();
            assert_abs_diff_eq!(mean, 1.0 / c, epsilon = 1e-8 / c);
        }
    }

    #[test]
    fn second_moment_closed_form() {
        // E[lambda^2] = (1 + c) / c^2 under this scaling.
        for &c in &[0.25, 0.5, 1.0] {
            let law = MpLaw::new(c).unwrap();
            let m2 = law.integrate_phi(&TestFunction::Power(2)).unwrap();
            assert_abs_diff_eq!(m2, (1.0 + c) / (c * c), epsilon = 1e-6 / (c * c));
        }
    }

    #[test]
    fn cdf_monotone_and_normalized() {
        let law = MpLaw::new(0.25).unwrap();
        let (lo, hi) = law.support();
        assert_eq!(law.cdf(lo - 1.0), 0.0);
        assert_eq!(law.cdf(hi + 1.0), 1.0);
        let mut prev = 0.0;
        for i in 0..=100 {
            let x = lo + (hi - lo) * i as f64 / 100.0;
            let f = law.cdf(x);
            assert!(f >= prev - 1e-12, "cdf not monotone at {x}");
            prev = f;
        }
        assert_abs_diff_eq!(law.cdf(hi), 1.0, epsilon = 1e-9);
    }
}
