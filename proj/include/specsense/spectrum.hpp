#pragma once

#include <Eigen/Dense>
#include <vector>

#include "specsense/model.hpp"

namespace specsense {

/// Descending eigenvalues of a sampled covariance matrix; the only
/// input every detector needs.
struct EigSpectrum {
    std::vector<double> values;  // l_1 >= ... >= l_p, floored positive
    int p = 0;
    int n_obs = 0;
};

/// Builds an EigSpectrum from already-sorted-or-not values; sorts
/// descending and applies the positivity floor.
EigSpectrum make_spectrum(std::vector<double> values, int n_obs);

/// (1/N) sum_i x_i x_i^dag, symmetrized to be exactly Hermitian.
Eigen::MatrixXcd sample_covariance(const ObservationBlock& block);

/// All p eigenvalues of a Hermitian matrix, sorted non-increasing.
/// Eigenvalues below 1e-12 of the spectral scale are clamped to that
/// floor so downstream logarithms stay finite.
EigSpectrum eig_descending(const Eigen::MatrixXcd& R, int n_obs);

/// Convenience: spectrum of the sampled covariance of a block.
EigSpectrum spectrum_of(const ObservationBlock& block);

}  // namespace specsense
