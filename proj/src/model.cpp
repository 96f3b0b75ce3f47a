#include "specsense/model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace specsense {

ModelDims::ModelDims(int M, int K, int L, int N) : M_(M), K_(K), L_(L), N_(N) {
    if (M < 1 || K < 1 || L < 1 || N < 1)
        throw std::invalid_argument("ModelDims: M, K, L, N must be positive");
    // over-determined condition: p = M*K > q = L+M-1
    if (static_cast<long>(M) * K <= static_cast<long>(L) + M - 1)
        throw std::invalid_argument("ModelDims: require M*K > L+M-1 (over-determined model)");
}

Eigen::MatrixXcd build_channel_matrix(const ChannelRealization& ch, const ModelDims& dims) {
    const int K = dims.K(), L = dims.L(), M = dims.M();
    if (ch.taps.rows() != K || ch.taps.cols() != L)
        throw std::invalid_argument("build_channel_matrix: taps shape does not match dims");

    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dims.p(), dims.q());
    for (int m = 0; m < M; ++m)
        for (int k = 0; k < K; ++k)
            for (int j = 0; j < L; ++j)
                H(m * K + k, m + j) = ch.taps(k, L - 1 - j);
    return H;
}

ChannelRealization sample_channel(const ModelDims& dims, Rng& rng, ReceiveMode mode) {
    ChannelRealization ch;
    ch.mode = mode;
    ch.taps.resize(dims.K(), dims.L());
    do {
        for (int k = 0; k < dims.K(); ++k)
            for (int i = 0; i < dims.L(); ++i) ch.taps(k, i) = rng.complex_gaussian();
    } while (ch.taps.norm() < 1e-12);  // degenerate all-zero draw: resample
    return ch;
}

double calibrated_noise_power(const Eigen::MatrixXcd& H, double snr_db) {
    const double snr_lin = std::pow(10.0, snr_db / 10.0);
    return H.squaredNorm() / (static_cast<double>(H.rows()) * snr_lin);
}

ObservationBlock generate_observations(const ChannelRealization& ch, const ModelDims& dims,
                                       double snr_db, Hypothesis hypothesis, Rng& rng,
                                       const Eigen::MatrixXd* noise_coloring) {
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("generate_observations: snr_db must be finite");
    const int p = dims.p(), q = dims.q(), N = dims.N(), M = dims.M(), L = dims.L();
    if (noise_coloring && (noise_coloring->rows() != p || noise_coloring->cols() != p))
        throw std::invalid_argument("generate_observations: coloring matrix must be p x p");

    const Eigen::MatrixXcd H = build_channel_matrix(ch, dims);
    const double sigma2 = calibrated_noise_power(H, snr_db);
    const double sigma = std::sqrt(sigma2);

    ObservationBlock block{Eigen::MatrixXcd(p, N), hypothesis, sigma2, dims};

    // Noise first so H0/H1 share the identical realization at a given seed.
    for (int i = 0; i < N; ++i)
        for (int r = 0; r < p; ++r) block.vectors(r, i) = sigma * rng.complex_gaussian();
    if (noise_coloring) block.vectors = (*noise_coloring) * block.vectors;

    if (hypothesis == Hypothesis::H1) {
        // One contiguous BPSK stream; s_i is the sliding length-q window
        // ending at symbol i*M, so consecutive windows share L-1 symbols.
        std::vector<double> stream(static_cast<size_t>(N) * M + L - 1);
        for (double& s : stream) s = rng.bpsk();
        Eigen::VectorXcd si(q);
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < q; ++j) si(j) = stream[static_cast<size_t>(i) * M + j];
            block.vectors.col(i) += H * si;
        }
    }
    return block;
}

}  // namespace specsense
