//! Monte-Carlo cross-checks of the analytic null model against sampled
//! spectra.

use rmt_core::*;

/// The closed-form density value at the bulk center of the c = 1 law is
/// confirmed by the eigenvalue histogram of a single large Gaussian matrix.
#[test]
fn mp_density_matches_eigenvalue_histogram_at_c_one() {
    let n = 400;
    let m = gen_test_matrix(n, n, EntryDistribution::Gaussian, 404).unwrap();
    let eigs = eigenvalues_sym(&covariance(&m)).unwrap();
    let (lo, hi) = (1.8, 2.2);
    let count = eigs.iter().filter(|&&e| e >= lo && e < hi).count();
    let density = count as f64 / (n as f64 * (hi - lo));
    let expected = mp_density(2.0, 1.0).unwrap();
    assert!(
        (density - expected).abs() < 0.03,
        "histogram density {density:.4} vs closed form {expected:.4}"
    );
}

/// E[tau] for phi = x^2 at c = 1, N = 100: the limit predicts 200; the
/// sample average over 1000 Gaussian matrices lands within 5%.
#[test]
fn les_mean_square_matches_monte_carlo() {
    let n = 100;
    let phi = TestFunction::Power(2);
    let trials = 1000;
    let mut acc = 0.0;
    for k in 0..trials {
        let m = gen_test_matrix(n, n, EntryDistribution::Gaussian, 50_000 + k).unwrap();
        let eigs = eigenvalues_sym(&covariance(&m)).unwrap();
        acc += les(&eigs, &phi).unwrap();
    }
    let empirical = acc / trials as f64;
    let predicted = les_mean(&phi, n, 1.0).unwrap();
    assert!((predicted - 200.0).abs() < 1e-6);
    assert!(
        (empirical / predicted - 1.0).abs() < 0.05,
        "empirical {empirical:.2} vs predicted {predicted:.2}"
    );
}

/// Variance quadrature against Monte Carlo for a non-Gaussian entry law:
/// Rademacher entries have kappa4 = -2, which cuts the variance through the
/// second term of the CLT formula.
#[test]
fn les_variance_tracks_kurtosis_term() {
    let (n, t) = (100, 400);
    let c = n as f64 / t as f64;
    let phi = TestFunction::Power(2);
    let trials = 600;
    let mut taus = Vec::with_capacity(trials);
    for k in 0..trials {
        let m = gen_test_matrix(n, t, EntryDistribution::Rademacher, 90_000 + k as u64).unwrap();
        let eigs = eigenvalues_sym(&covariance(&m)).unwrap();
        taus.push(les(&eigs, &phi).unwrap());
    }
    let mean = taus.iter().sum::<f64>() / trials as f64;
    let var = taus.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
    let gauss = les_variance(&phi, &SpectralNull::new(c, 0.0).unwrap()).unwrap();
    let rade = les_variance(&phi, &SpectralNull::new(c, -2.0).unwrap()).unwrap();
    assert!(rade < gauss, "kappa4 = -2 must reduce the variance");
    // 600 trials put the sampling error of Var near 12%; allow 25%.
    assert!(
        (var / rade - 1.0).abs() < 0.25,
        "empirical {var:.1} vs kappa4-adjusted prediction {rade:.1} (gaussian {gauss:.1})"
    );
}
