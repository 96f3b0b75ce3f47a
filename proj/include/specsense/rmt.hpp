#pragma once

#include <variant>
#include <vector>

#include "specsense/itc.hpp"
#include "specsense/model.hpp"

namespace specsense {

/// The two real roots in (0, p) of f(x) = x^p - p x^(p-1) + (p-1)^(p-1)/gamma,
/// bracketing the stationary point p-1 (coalescing onto it at gamma = 1).
struct RootPair {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

/// Centering/scaling that maps the largest sample eigenvalue of a white
/// complex Wishart matrix onto the Tracy-Widom order-2 law:
/// s = (u N - (sqrt(N)+sqrt(p))^2) / ((sqrt(N)+sqrt(p)) (1/sqrt(N)+1/sqrt(p))^(1/3)),
/// with u standing in for l_1/sigma^2.
double johnstone_transform(double u, int n_obs, int p);

/// Bisection root finder for the structured polynomial above. The
/// polynomial is evaluated in the log domain (scaled by (p-1)^(p-1)) so
/// large p cannot overflow. Requires gamma >= 1; relative tolerance 1e-12.
RootPair itc_polynomial_roots(int p, double gamma);

/// Signed, scaled evaluation f(x)/(p-1)^(p-1) used by the root finder and
/// its tests.
double itc_polynomial_scaled(int p, double gamma, double x);

/// Closed-form false-alarm probability of the generalized eigenvalue rule
/// at threshold gamma (noise-only largest eigenvalue vs. Tracy-Widom).
/// Independent of the noise power by construction.
double pf_analytic(int p, int n_obs, double gamma);

/// Inputs to the conditional detection-probability approximation.
struct AnalyticContext {
    int p = 0;
    int n_obs = 0;
    double gamma = 1.0;
    double sigma2 = 1.0;
    double epsilon = 1.0;        // (1/p) Tr(H Rs H^dag) + sigma^2
    std::vector<double> deltas;  // eigenvalues of H Rs H^dag, descending
};

/// Builds the context for a channel draw (Rs = I): signal eigenvalues,
/// epsilon, and the effective threshold.
AnalyticContext make_analytic_context(const ChannelRealization& ch, const ModelDims& dims,
                                      double sigma2, double gamma);

/// Q(delta): the conditional detection probability with the Weyl shift
/// delta applied to the largest-eigenvalue window; clamped to [0, 1].
double q_function(double delta, const AnalyticContext& ctx, const RootPair& roots);

/// Either a criterion (threshold implied by p, N) or an explicit gamma.
using CriterionOrGamma = std::variant<Criterion, double>;

struct PdEstimate {
    double estimate = 0.0;  // Q(rho)
    double lower = 0.0;     // Q(delta_p)
    double upper = 0.0;     // Q(delta_1)
    double rho = 0.0;
    double q_rho_minus = 0.0;  // Q(0.9 rho): sensitivity probe
    double q_rho_plus = 0.0;   // Q(1.1 rho)
    bool rho_rule_is_default = false;  // explicit gamma used the AIC rho rule
    bool reordered = false;            // bounds were swapped to restore order
};

/// Conditional P_d for one channel draw: rho = (delta_p+delta_1)/2 for
/// AIC (and for explicit GITC thresholds), 3/4 (delta_p+delta_1) for MDL.
PdEstimate pd_conditional(const ChannelRealization& ch, const ModelDims& dims, double sigma2,
                          const CriterionOrGamma& crit_or_gamma);

/// Same, reusing an already-built context (its gamma field is replaced
/// by the effective threshold of crit_or_gamma).
PdEstimate pd_conditional(const AnalyticContext& ctx, const CriterionOrGamma& crit_or_gamma);

/// Thrown by calibrate_gamma when the target lies outside what the
/// closed form can reach at this (p, N); carries the attainable range.
struct CalibrationRangeError : std::runtime_error {
    CalibrationRangeError(double lo, double hi, double target);
    double attainable_min, attainable_max, target;
};

/// Solves pf_analytic(p, N, gamma) = target_pf for gamma by bisection on
/// the monotone non-increasing map gamma -> P_f.
double calibrate_gamma(double target_pf, int p, int n_obs);

}  // namespace specsense
