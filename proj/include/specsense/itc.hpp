#pragma once

#include "specsense/spectrum.hpp"

namespace specsense {

enum class Criterion { AIC, MDL };

enum class DetectorFamily { OITC, SITC, GITC };

struct SensingDecision {
    Hypothesis hypothesis = Hypothesis::H0;
    double statistic = 1.0;  // the generalized decision variable T
    double threshold = 1.0;  // gamma
    DetectorFamily detector = DetectorFamily::SITC;
};

/// Data term shared by both criteria: 2 N (p-k) * log(AM/GM) over the
/// trailing eigenvalues l_{k+1..p}. Non-negative, non-increasing in k.
double itc_data_term(int k, const EigSpectrum& spec);

/// AIC(k) = data term + 2k(2p-k) + 2.
double aic(int k, const EigSpectrum& spec);

/// MDL(k) = data term / 2 + (k(2p-k)/2 + 1/2) log N.
double mdl(int k, const EigSpectrum& spec);

/// Full model-order estimate: argmin over k = 0..p-1, ties toward the
/// smallest k.
int oitc_estimate(const EigSpectrum& spec, Criterion crit);

/// log of the generalized decision statistic
/// T = (AM of all)^p / ((AM of l_2..l_p)^(p-1) * l_1); clamped at 0
/// since AM-GM guarantees T >= 1.
double gitc_log_statistic(const EigSpectrum& spec);

/// T itself (saturates at +inf for extreme spectra; decisions compare
/// in the log domain).
double gitc_statistic(const EigSpectrum& spec);

/// The threshold that makes the generalized rule coincide with the
/// simplified criterion comparison: exp((2p-1)/N) for AIC,
/// exp((p-0.5) log N / N) for MDL.
double criterion_threshold(Criterion crit, int p, int n_obs);

/// Generalized rule: H1 iff T > gamma (ties decide H0). gamma < 1 is
/// rejected. gamma may be +infinity (always H0).
SensingDecision gitc_decide(const EigSpectrum& spec, double gamma);

/// Simplified rule: H1 iff criterion(0) > criterion(1), evaluated
/// through the identical comparison as gitc_decide at the criterion
/// threshold so the two agree decision-for-decision.
SensingDecision sitc_decide(const EigSpectrum& spec, Criterion crit);

}  // namespace specsense
