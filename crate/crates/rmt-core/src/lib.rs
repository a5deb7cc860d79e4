//! Spectral mathematics for covariance-based situation awareness.
//!
//! The pipeline is: stack multi-channel samples into an N x T data matrix,
//! form the sample covariance M = (1/N) Gamma Gamma^T, extract eigenvalues,
//! and reduce them to a linear eigenvalue statistic tau = sum phi(lambda_i).
//! Under an i.i.d. null, tau is asymptotically Gaussian with mean and
//! variance computable from the Marchenko-Pastur law; deviations flag
//! structural change in the underlying system.

mod eigen;
mod error;
mod les;
mod matrix;
mod mp;
mod quadrature;
mod test_function;

pub use eigen::eigenvalues_sym;
pub use error::{Result, RmtError};
pub use les::{kurtosis_excess, les, les_mean, les_variance, SpectralNull};
pub use matrix::{covariance, gen_test_matrix, CovarianceMatrix, DataMatrix, EntryDistribution};
pub use mp::{mp_density, mp_support, MpLaw};
pub use quadrature::GaussLegendre;
pub use test_function::{Tabulated, TestFunction};
