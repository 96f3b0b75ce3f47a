#include "specsense/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specsense {

namespace {

// Floor tiny/negative eigenvalues: exact-arithmetic covariances are PSD,
// so anything below 1e-12 of the spectral scale is roundoff.
void apply_floor(std::vector<double>& values) {
    if (values.empty()) return;
    const double scale = std::max(values.front(), 0.0);
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    const double floor = 1e-12 * std::max(scale, mean);
    for (double& v : values) v = std::max(v, floor);
}

}  // namespace

EigSpectrum make_spectrum(std::vector<double> values, int n_obs) {
    if (values.empty()) throw std::invalid_argument("make_spectrum: empty spectrum");
    std::sort(values.begin(), values.end(), std::greater<double>());
    apply_floor(values);
    EigSpectrum spec;
    spec.p = static_cast<int>(values.size());
    spec.n_obs = n_obs;
    spec.values = std::move(values);
    return spec;
}

Eigen::MatrixXcd sample_covariance(const ObservationBlock& block) {
    if (block.n() == 0) throw std::invalid_argument("sample_covariance: empty block");
    const double inv_n = 1.0 / static_cast<double>(block.n());
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(block.p(), block.p());
    R.selfadjointView<Eigen::Lower>().rankUpdate(block.vectors, inv_n);
    R.triangularView<Eigen::StrictlyUpper>() = R.adjoint();
    return 0.5 * (R + R.adjoint().eval());
}

EigSpectrum eig_descending(const Eigen::MatrixXcd& R, int n_obs) {
    if (R.rows() != R.cols() || R.rows() == 0)
        throw std::invalid_argument("eig_descending: matrix must be square and non-empty");
    const double scale = R.cwiseAbs().maxCoeff();
    if ((R - R.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * std::max(scale, 1e-300))
        throw std::invalid_argument("eig_descending: input is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (R + R.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_descending: eigensolver did not converge");

    std::vector<double> values(es.eigenvalues().size());
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        values[i] = es.eigenvalues()(es.eigenvalues().size() - 1 - i);
    apply_floor(values);

    EigSpectrum spec;
    spec.p = static_cast<int>(values.size());
    spec.n_obs = n_obs;
    spec.values = std::move(values);
    return spec;
}

EigSpectrum spectrum_of(const ObservationBlock& block) {
    return eig_descending(sample_covariance(block), block.n());
}

}  // namespace specsense
