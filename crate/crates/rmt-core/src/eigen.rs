//! Symmetric eigenvalue extraction.

use nalgebra::linalg::SymmetricEigen;

use crate::error::{Result, RmtError};
use crate::matrix::CovarianceMatrix;

/// Ascending eigenvalues of a symmetric matrix.
///
/// The input is symmetrized as (M + M^T)/2 before decomposition to absorb
/// floating-point asymmetry. Fails (with no partial result) if the solver
/// does not converge or if the eigenvalue sum drifts from the trace by more
/// than 1e-8 relative.
pub fn eigenvalues_sym(m: &CovarianceMatrix) -> Result<Vec<f64>> {
    let order = m.order();
    let sym = (m.as_dmatrix() + m.as_dmatrix().transpose()) * 0.5;
    let trace = sym.trace();
    let decomp = SymmetricEigen::try_new(sym, 1.0e-13, 10_000)
        .ok_or(RmtError::EigenNoConvergence { order })?;
    let mut eigs: Vec<f64> = decomp.eigenvalues.iter().copied().collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    let sum: f64 = eigs.iter().sum();
    if (sum - trace).abs() > 1e-8 * trace.abs().max(1.0) {
        return Err(RmtError::Numeric(format!(
            "eigenvalue sum {sum} disagrees with trace {trace}"
        )));
    }
    Ok(eigs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{covariance, gen_test_matrix, DataMatrix, EntryDistribution};
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;

    #[test]
    fn diagonal_matrix() {
        let m = CovarianceMatrix::from_dmatrix(DMatrix::from_diagonal(
            &nalgebra::DVector::from_vec(vec![3.0, 1.0, 2.0]),
        ))
        .unwrap();
        let eigs = eigenvalues_sym(&m).unwrap();
        assert_eq!(eigs.len(), 3);
        assert_abs_diff_eq!(eigs[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[1], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[2], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn scaled_identity_covariance() {
        let n = 7;
        let m = DataMatrix::from_dmatrix(DMatrix::identity(n, n)).unwrap();
        let eigs = eigenvalues_sym(&covariance(&m)).unwrap();
        for &e in &eigs {
            assert_abs_diff_eq!(e, 1.0 / n as f64, epsilon = 1e-12);
        }
    }

    #[test]
    fn covariance_spectra_are_nonnegative_within_roundoff() {
        // Sample covariances are PSD up to floating-point noise: the most
        // negative eigenvalue stays above -1e-10 times the largest.
        for seed in 0..10 {
            let g = gen_test_matrix(12, 40, EntryDistribution::Gaussian, 600 + seed).unwrap();
            let eigs = eigenvalues_sym(&covariance(&g)).unwrap();
            let max = eigs.last().copied().unwrap();
            assert!(
                eigs[0] >= -1e-10 * max,
                "seed {seed}: min {} max {max}",
                eigs[0]
            );
        }
    }

    #[test]
    fn random_5x5_matches_characteristic_polynomial_roots() {
        // Independent oracle: Faddeev-LeVerrier coefficients + bisection.
        let g = gen_test_matrix(5, 5, EntryDistribution::Gaussian, 31).unwrap();
        let cov = covariance(&g);
        let eigs = eigenvalues_sym(&cov).unwrap();
        let roots = char_poly_roots(cov.as_dmatrix());
        assert_eq!(eigs.len(), roots.len());
        for (e, r) in eigs.iter().zip(roots.iter()) {
            assert_abs_diff_eq!(e, r, epsilon = 1e-8);
        }
    }

    /// Brute-force eigenvalues of a small symmetric matrix: characteristic
    /// polynomial via Faddeev-LeVerrier, roots by grid bracketing + bisection.
    /// Test-only; independent of the production decomposition path.
    fn char_poly_roots(m: &DMatrix<f64>) -> Vec<f64> {
        let n = m.nrows();
        // p(x) = x^n + c[1] x^{n-1} + ... + c[n], via M_{k+1} = A (M_k + c_k I).
        let identity = DMatrix::<f64>::identity(n, n);
        let mut m_k = m.clone();
        let mut coeffs = vec![1.0f64];
        for k in 1..=n {
            let c = -m_k.trace() / k as f64;
            coeffs.push(c);
            if k < n {
                m_k = m * (&m_k + &identity * c);
            }
        }
        let eval = |x: f64| -> f64 {
            let mut acc = 0.0;
            for &c in &coeffs {
                acc = acc * x + c;
            }
            acc
        };
        // Gershgorin bound for the search interval.
        let mut bound = 0.0f64;
        for i in 0..n {
            let mut radius = 0.0;
            for j in 0..n {
                radius += m[(i, j)].abs();
            }
            bound = bound.max(radius);
        }
        let (lo, hi) = (-bound - 1.0, bound + 1.0);
        let steps = 200_000;
        let h = (hi - lo) / steps as f64;
        let mut roots = Vec::new();
        let mut prev_x = lo;
        let mut prev_f = eval(lo);
        for i in 1..=steps {
            let x = lo + i as f64 * h;
            let f = eval(x);
            if prev_f == 0.0 {
                roots.push(prev_x);
            } else if prev_f * f < 0.0 {
                let (mut a, mut b) = (prev_x, x);
                let (mut fa, _) = (prev_f, f);
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    let fm = eval(mid);
                    if fa * fm <= 0.0 {
                        b = mid;
                    } else {
                        a = mid;
                        fa = fm;
                    }
                }
                roots.push(0.5 * (a + b));
            }
            prev_x = x;
            prev_f = f;
        }
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        roots
    }

    #[test]
    fn faddeev_leverrier_on_known_spectrum() {
        // Sanity-check the oracle itself against a diagonal matrix.
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.5, 1.5, 2.5, 3.5, 4.5]));
        let roots = char_poly_roots(&d);
        for (r, want) in roots.iter().zip([0.5, 1.5, 2.5, 3.5, 4.5]) {
            assert_abs_diff_eq!(r, &want, epsilon = 1e-9);
        }
    }
}
