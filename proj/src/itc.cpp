#include "specsense/itc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace specsense {

namespace {

void check_spectrum(const EigSpectrum& spec) {
    if (spec.p < 2 || static_cast<int>(spec.values.size()) != spec.p)
        throw std::invalid_argument("itc: spectrum needs p >= 2 values");
    if (spec.values.back() <= 0.0)
        throw std::invalid_argument("itc: spectrum must be strictly positive after flooring");
}

// log(AM) - mean(log) over the trailing p-k eigenvalues; >= 0 by AM-GM.
double log_am_gm_gap(int k, const EigSpectrum& spec) {
    const int p = spec.p;
    double sum = 0.0, logsum = 0.0;
    for (int i = k; i < p; ++i) {
        sum += spec.values[static_cast<size_t>(i)];
        logsum += std::log(spec.values[static_cast<size_t>(i)]);
    }
    const int m = p - k;
    return std::log(sum / m) - logsum / m;
}

}  // namespace

double itc_data_term(int k, const EigSpectrum& spec) {
    check_spectrum(spec);
    if (k < 0 || k > spec.p - 1) throw std::out_of_range("itc: k must be in [0, p-1]");
    return 2.0 * spec.n_obs * (spec.p - k) * log_am_gm_gap(k, spec);
}

double aic(int k, const EigSpectrum& spec) {
    return itc_data_term(k, spec) + 2.0 * k * (2.0 * spec.p - k) + 2.0;
}

double mdl(int k, const EigSpectrum& spec) {
    return 0.5 * itc_data_term(k, spec) +
           (0.5 * k * (2.0 * spec.p - k) + 0.5) * std::log(static_cast<double>(spec.n_obs));
}

int oitc_estimate(const EigSpectrum& spec, Criterion crit) {
    check_spectrum(spec);
    int best_k = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < spec.p; ++k) {
        const double v = crit == Criterion::AIC ? aic(k, spec) : mdl(k, spec);
        if (v < best) {  // strict: ties keep the smaller k
            best = v;
            best_k = k;
        }
    }
    return best_k;
}

double gitc_log_statistic(const EigSpectrum& spec) {
    check_spectrum(spec);
    const int p = spec.p;
    double sum_all = 0.0;
    for (double v : spec.values) sum_all += v;
    double sum_tail = sum_all - spec.values[0];
    const double log_t = p * std::log(sum_all / p) -
                         (p - 1) * std::log(sum_tail / (p - 1)) - std::log(spec.values[0]);
    return std::max(log_t, 0.0);  // AM-GM: T >= 1, so roundoff below 0 is noise
}

double gitc_statistic(const EigSpectrum& spec) { return std::exp(gitc_log_statistic(spec)); }

double criterion_threshold(Criterion crit, int p, int n_obs) {
    if (p < 2 || n_obs < 2) throw std::invalid_argument("criterion_threshold: need p, N >= 2");
    const double n = static_cast<double>(n_obs);
    if (crit == Criterion::AIC) return std::exp((2.0 * p - 1.0) / n);
    return std::exp((p - 0.5) * std::log(n) / n);
}

SensingDecision gitc_decide(const EigSpectrum& spec, double gamma) {
    if (!(gamma >= 1.0))  // also rejects NaN
        throw std::domain_error("gitc_decide: gamma must be >= 1");
    SensingDecision d;
    d.detector = DetectorFamily::GITC;
    d.statistic = gitc_statistic(spec);
    d.threshold = gamma;
    d.hypothesis =
        gitc_log_statistic(spec) > std::log(gamma) ? Hypothesis::H1 : Hypothesis::H0;
    return d;
}

SensingDecision sitc_decide(const EigSpectrum& spec, Criterion crit) {
    SensingDecision d = gitc_decide(spec, criterion_threshold(crit, spec.p, spec.n_obs));
    d.detector = DetectorFamily::SITC;
    return d;
}

}  // namespace specsense
