#pragma once

#include <Eigen/Dense>

#include "specsense/rng.hpp"

namespace specsense {

enum class Hypothesis { H0, H1 };

enum class ReceiveMode { MultiAntenna, OverSampling };

/// Dimensions of the over-determined observation model. An observation
/// window of M symbols seen through K antennas (or a K-fold over-sampler)
/// over an L-tap channel gives p = M*K observed samples driven by
/// q = L+M-1 source symbols; the constructor rejects shapes with p <= q.
class ModelDims {
public:
    ModelDims(int M, int K, int L, int N);

    int M() const { return M_; }
    int K() const { return K_; }
    int L() const { return L_; }
    int N() const { return N_; }
    int p() const { return M_ * K_; }
    int q() const { return L_ + M_ - 1; }

    bool operator==(const ModelDims&) const = default;

private:
    int M_, K_, L_, N_;
};

/// One draw of the multipath channel: taps(k, i) is the i-th tap seen at
/// the k-th antenna (or k-th over-sampling point).
struct ChannelRealization {
    Eigen::MatrixXcd taps;  // K x L
    ReceiveMode mode = ReceiveMode::MultiAntenna;
};

/// N received vectors of dimension p, stacked as columns.
struct ObservationBlock {
    Eigen::MatrixXcd vectors;  // p x N
    Hypothesis hypothesis = Hypothesis::H0;
    double noise_power = 1.0;  // sigma^2 per entry (nominal for whitened data)
    ModelDims dims;

    int p() const { return static_cast<int>(vectors.rows()); }
    int n() const { return static_cast<int>(vectors.cols()); }
};

/// Assembles the p x q block-banded channel matrix: row block m (K rows)
/// carries the reversed tap vectors [h_k(L-1) ... h_k(0)] starting at
/// column m, zero elsewhere.
Eigen::MatrixXcd build_channel_matrix(const ChannelRealization& ch, const ModelDims& dims);

/// K x L i.i.d. CN(0,1) taps. Resamples in the (probability-zero) event
/// that every tap magnitude underflows.
ChannelRealization sample_channel(const ModelDims& dims, Rng& rng,
                                  ReceiveMode mode = ReceiveMode::MultiAntenna);

/// Generates one block of N observations. The noise power is calibrated
/// per channel so that Tr(H H^dag) / (p sigma^2) equals the requested
/// linear SNR; under H0 the signal term is omitted but the noise stream
/// (and its power) is byte-identical to the H1 draw at the same seed.
/// An optional coloring matrix C replaces each noise vector by C*w
/// (used for over-sampled, filter-correlated noise).
ObservationBlock generate_observations(const ChannelRealization& ch, const ModelDims& dims,
                                       double snr_db, Hypothesis hypothesis, Rng& rng,
                                       const Eigen::MatrixXd* noise_coloring = nullptr);

/// sigma^2 implied by the SNR calibration above for a given channel.
double calibrated_noise_power(const Eigen::MatrixXcd& H, double snr_db);

}  // namespace specsense
