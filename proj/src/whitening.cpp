#include "specsense/whitening.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specsense {

namespace {

// Raised-cosine pulse r(tau) in symbol units, r(0) = 1.
double raised_cosine_pulse(double tau, double beta) {
    const double pi = std::numbers::pi;
    if (std::abs(tau) < 1e-12) return 1.0;
    if (beta > 0.0) {
        const double denom_zero = std::abs(2.0 * beta * std::abs(tau) - 1.0);
        if (denom_zero < 1e-9)  // removable singularity at tau = 1/(2 beta)
            return (pi / 4.0) * std::sin(pi * tau) / (pi * tau);
    }
    const double sinc = std::sin(pi * tau) / (pi * tau);
    return sinc * std::cos(pi * beta * tau) / (1.0 - 4.0 * beta * beta * tau * tau);
}

}  // namespace

FilterAcf FilterAcf::raised_cosine(double rolloff, int oversampling, int n_lags) {
    if (rolloff < 0.0 || rolloff > 1.0)
        throw std::invalid_argument("FilterAcf: rolloff must be in [0, 1]");
    if (oversampling < 1 || n_lags < 1)
        throw std::invalid_argument("FilterAcf: oversampling and n_lags must be positive");
    FilterAcf acf;
    acf.phi.resize(n_lags);
    for (int m = 0; m < n_lags; ++m)
        acf.phi[m] = raised_cosine_pulse(static_cast<double>(m) / oversampling, rolloff);
    return acf;
}

FilterAcf FilterAcf::delta(int n_lags) {
    FilterAcf acf;
    acf.phi.assign(static_cast<size_t>(n_lags), 0.0);
    acf.phi[0] = 1.0;
    return acf;
}

Eigen::MatrixXd filter_correlation(const FilterAcf& acf, const ModelDims& dims) {
    const int p = dims.p();
    if (static_cast<int>(acf.phi.size()) < p)
        throw std::invalid_argument("filter_correlation: ACF has fewer than p lags");
    if (std::abs(acf.phi[0] - 1.0) > 1e-12)
        throw std::invalid_argument("filter_correlation: ACF not normalized (phi[0] != 1)");
    Eigen::MatrixXd Q(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) Q(i, j) = acf.phi[static_cast<size_t>(std::abs(i - j))];
    return Q;
}

namespace {

// Q = V diag(lambda) V^T -> f(Q) = V diag(f(lambda)) V^T, rejecting
// spectra that are not safely positive.
Eigen::MatrixXd spd_spectral_map(const Eigen::MatrixXd& Q, double (*f)(double)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("whitening: eigendecomposition failed");
    const Eigen::VectorXd& lam = es.eigenvalues();
    const double lmax = lam.maxCoeff();
    if (lam.minCoeff() <= 1e-12 * lmax)
        throw std::runtime_error("whitening: filter correlation matrix is numerically singular");
    Eigen::VectorXd mapped(lam.size());
    for (int i = 0; i < lam.size(); ++i) mapped(i) = f(lam(i));
    return es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Eigen::MatrixXd correlation_sqrt(const FilterAcf& acf, const ModelDims& dims) {
    return spd_spectral_map(filter_correlation(acf, dims), [](double x) { return std::sqrt(x); });
}

Eigen::MatrixXd whitening_matrix(const FilterAcf& acf, const ModelDims& dims) {
    return spd_spectral_map(filter_correlation(acf, dims),
                            [](double x) { return 1.0 / std::sqrt(x); });
}

ObservationBlock whiten(const ObservationBlock& block, const Eigen::MatrixXd& W) {
    if (W.rows() != block.p() || W.cols() != block.p())
        throw std::invalid_argument("whiten: W must be p x p");
    ObservationBlock out = block;
    out.vectors = W * block.vectors;
    return out;
}

}  // namespace specsense
