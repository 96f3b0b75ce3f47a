#include "specsense/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specsense {

BaselineKind BaselineKind::ed_uncertain(double x_db) {
    if (x_db < 0.0) throw std::invalid_argument("BaselineKind: uncertainty must be >= 0 dB");
    return {Tag::ED_Uncertain, x_db};
}

double block_energy(const ObservationBlock& block) { return block.vectors.squaredNorm(); }

double baseline_statistic(const BaselineKind& kind, const EigSpectrum& spec,
                          double block_energy, double sigma2_nominal) {
    const int p = spec.p;
    const auto& l = spec.values;
    const double pn = static_cast<double>(p) * spec.n_obs;
    switch (kind.tag) {
        case BaselineKind::Tag::ED:
        case BaselineKind::Tag::ED_Uncertain:
            if (!(sigma2_nominal > 0.0))
                throw std::invalid_argument("baseline_statistic: ED needs sigma2 > 0");
            return block_energy / (pn * sigma2_nominal);
        case BaselineKind::Tag::EV_MME:
            if (l.back() <= 0.0)
                throw std::runtime_error("baseline_statistic: degenerate spectrum (l_p <= 0)");
            return l.front() / l.back();
        case BaselineKind::Tag::EV_EME:
            if (l.back() <= 0.0)
                throw std::runtime_error("baseline_statistic: degenerate spectrum (l_p <= 0)");
            return block_energy / (pn * l.back());
        case BaselineKind::Tag::EV_BCED: {
            double mean = 0.0;
            for (double v : l) mean += v;
            mean /= p;
            return l.front() / mean;
        }
        case BaselineKind::Tag::EV_AGM: {
            double mean = 0.0, logsum = 0.0;
            for (double v : l) {
                mean += v;
                logsum += std::log(v);
            }
            mean /= p;
            return std::exp(std::log(mean) - logsum / p);
        }
    }
    throw std::logic_error("baseline_statistic: unreachable");
}

double empirical_threshold(const BaselineKind& kind, const ModelDims& dims, double target_pf,
                           int trials, Rng& rng) {
    if (!(target_pf > 0.0 && target_pf < 1.0))
        throw std::invalid_argument("empirical_threshold: target_pf must be in (0, 1)");
    if (trials < 20.0 / target_pf)
        throw std::invalid_argument("empirical_threshold: too few trials for this quantile");

    std::vector<double> stats;
    stats.reserve(static_cast<size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        const ChannelRealization ch = sample_channel(dims, rng);
        const ObservationBlock block = generate_observations(ch, dims, 0.0, Hypothesis::H0, rng);
        const EigSpectrum spec = spectrum_of(block);
        stats.push_back(baseline_statistic(kind, spec, block_energy(block), block.noise_power));
    }
    std::sort(stats.begin(), stats.end());
    // smallest sampled value whose exceedance fraction is <= target
    const auto rank = static_cast<size_t>(
        std::ceil((1.0 - target_pf) * static_cast<double>(trials))) - 1;
    return stats[std::min(rank, stats.size() - 1)];
}

SensingDecision ed_uncertain_decide(const ObservationBlock& block, double x_db,
                                    double threshold, Rng& rng) {
    if (x_db < 0.0) throw std::invalid_argument("ed_uncertain_decide: x_db must be >= 0");
    const double u_db = x_db > 0.0 ? rng.uniform(-x_db, x_db) : 0.0;
    const double mismatch = std::pow(10.0, u_db / 10.0);
    const double pn = static_cast<double>(block.p()) * block.n();
    const double stat = mismatch * block_energy(block) / (pn * block.noise_power);
    SensingDecision d;
    d.detector = DetectorFamily::GITC;  // threshold-style rule
    d.statistic = stat;
    d.threshold = threshold;
    d.hypothesis = stat > threshold ? Hypothesis::H1 : Hypothesis::H0;
    return d;
}

}  // namespace specsense
