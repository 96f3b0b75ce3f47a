#pragma once

#include <Eigen/Dense>
#include <vector>

#include "specsense/model.hpp"

namespace specsense {

/// Autocorrelation of the receive low-pass filter, sampled at lags
/// m*T0/K and normalized so phi[0] == 1. The induced noise correlation
/// matrix is Toeplitz with entries Q(i,j) = phi[|i-j|].
struct FilterAcf {
    std::vector<double> phi;

    /// Root-raised-cosine receive filter: its autocorrelation is the
    /// raised-cosine pulse evaluated at the over-sampled lag grid.
    static FilterAcf raised_cosine(double rolloff, int oversampling, int n_lags);

    /// phi = (1, 0, 0, ...): noise already white.
    static FilterAcf delta(int n_lags);
};

/// Toeplitz correlation matrix Q (p x p) induced by the filter ACF.
Eigen::MatrixXd filter_correlation(const FilterAcf& acf, const ModelDims& dims);

/// Symmetric positive definite square root Q^(1/2); coloring white noise
/// with it yields noise of covariance sigma^2 Q.
Eigen::MatrixXd correlation_sqrt(const FilterAcf& acf, const ModelDims& dims);

/// Whitening transform Q^(-1/2). Throws if Q is numerically singular
/// (smallest eigenvalue below 1e-12 of the largest).
Eigen::MatrixXd whitening_matrix(const FilterAcf& acf, const ModelDims& dims);

/// Applies W to every observation vector; hypothesis, dims and the
/// nominal noise power carry over unchanged.
ObservationBlock whiten(const ObservationBlock& block, const Eigen::MatrixXd& W);

}  // namespace specsense
