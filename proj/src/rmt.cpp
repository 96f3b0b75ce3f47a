#include "specsense/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "specsense/tracy_widom.hpp"

namespace specsense {

double johnstone_transform(double u, int n_obs, int p) {
    if (n_obs < 1 || p < 1) throw std::invalid_argument("johnstone_transform: need N, p >= 1");
    const double sn = std::sqrt(static_cast<double>(n_obs));
    const double sp = std::sqrt(static_cast<double>(p));
    const double center = (sn + sp) * (sn + sp);
    const double scale = (sn + sp) * std::cbrt(1.0 / sn + 1.0 / sp);
    return (u * n_obs - center) / scale;
}

double itc_polynomial_scaled(int p, double gamma, double x) {
    // f(x)/(p-1)^(p-1) = 1/gamma - exp((p-1) log(x/(p-1)) + log(p-x))
    // for x in [0, p]; the exp term vanishes at both endpoints.
    if (x <= 0.0 || x >= static_cast<double>(p)) return 1.0 / gamma;
    const double pm1 = static_cast<double>(p - 1);
    return 1.0 / gamma - std::exp(pm1 * std::log(x / pm1) + std::log(p - x));
}

RootPair itc_polynomial_roots(int p, double gamma) {
    if (p < 2) throw std::invalid_argument("itc_polynomial_roots: need p >= 2");
    if (!(gamma >= 1.0)) throw std::domain_error("itc_polynomial_roots: gamma must be >= 1");
    const double pm1 = static_cast<double>(p - 1);
    if (gamma == 1.0) return {pm1, pm1};

    auto f = [&](double x) { return itc_polynomial_scaled(p, gamma, x); };
    // sign pattern: f(0) > 0, f(p-1) <= 0, f(p) > 0
    auto bisect = [&](double lo, double hi, bool root_at_hi_side) {
        // invariant: f(lo) and f(hi) have opposite signs (f <= 0 on the
        // p-1 side of the bracket)
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) return mid;
            const double fm = f(mid);
            const bool mid_nonpos = fm <= 0.0;
            if (root_at_hi_side == mid_nonpos)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    };
    // left root in (0, p-1]: f > 0 at 0, f <= 0 at p-1
    const double alpha1 = bisect(0.0, pm1, true);
    // right root in [p-1, p): f <= 0 at p-1, f > 0 at p
    const double alpha2 = bisect(pm1, static_cast<double>(p), false);
    return {alpha1, alpha2};
}

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// shared four-term Tracy-Widom bracket: F2(t(p)) - F2(t(a)) + F2(t(b)) - F2(t(0))
double tw_bracket(int p, int n_obs, double a, double b) {
    const double f_top = tw2_cdf(johnstone_transform(static_cast<double>(p), n_obs, p));
    const double f_a = tw2_cdf(johnstone_transform(a, n_obs, p));
    const double f_b = tw2_cdf(johnstone_transform(b, n_obs, p));
    const double f_bottom = tw2_cdf(johnstone_transform(0.0, n_obs, p));
    return clamp01(f_top - f_a + f_b - f_bottom);
}

}  // namespace

double pf_analytic(int p, int n_obs, double gamma) {
    const RootPair roots = itc_polynomial_roots(p, gamma);
    return tw_bracket(p, n_obs, p - roots.alpha1, p - roots.alpha2);
}

AnalyticContext make_analytic_context(const ChannelRealization& ch, const ModelDims& dims,
                                      double sigma2, double gamma) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("make_analytic_context: sigma2 must be > 0");
    const Eigen::MatrixXcd H = build_channel_matrix(ch, dims);
    const Eigen::MatrixXcd S = H * H.adjoint();  // H Rs H^dag with Rs = I
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("make_analytic_context: eigensolver failed");

    AnalyticContext ctx;
    ctx.p = dims.p();
    ctx.n_obs = dims.N();
    ctx.gamma = gamma;
    ctx.sigma2 = sigma2;
    ctx.deltas.resize(static_cast<size_t>(ctx.p));
    for (int i = 0; i < ctx.p; ++i)
        ctx.deltas[static_cast<size_t>(i)] = std::max(0.0, es.eigenvalues()(ctx.p - 1 - i));
    double mean = 0.0;
    for (double d : ctx.deltas) mean += d;
    ctx.epsilon = sigma2 + mean / ctx.p;
    return ctx;
}

double q_function(double delta, const AnalyticContext& ctx, const RootPair& roots) {
    const double a = ((ctx.p - roots.alpha1) * ctx.epsilon - delta) / ctx.sigma2;
    const double b = ((ctx.p - roots.alpha2) * ctx.epsilon - delta) / ctx.sigma2;
    return tw_bracket(ctx.p, ctx.n_obs, a, b);
}

PdEstimate pd_conditional(const AnalyticContext& ctx_base, const CriterionOrGamma& crit_or_gamma) {
    double gamma;
    double rho_factor = 0.5;
    bool default_rule = false;
    if (const auto* crit = std::get_if<Criterion>(&crit_or_gamma)) {
        gamma = criterion_threshold(*crit, ctx_base.p, ctx_base.n_obs);
        rho_factor = (*crit == Criterion::MDL) ? 0.75 : 0.5;
    } else {
        gamma = std::get<double>(crit_or_gamma);
        default_rule = true;  // rho rule for explicit thresholds follows the AIC choice
    }

    AnalyticContext ctx = ctx_base;
    ctx.gamma = gamma;
    const RootPair roots = itc_polynomial_roots(ctx.p, gamma);

    PdEstimate out;
    out.rho = rho_factor * (ctx.deltas.front() + ctx.deltas.back());
    out.rho_rule_is_default = default_rule;
    out.estimate = q_function(out.rho, ctx, roots);
    out.lower = q_function(ctx.deltas.back(), ctx, roots);
    out.upper = q_function(ctx.deltas.front(), ctx, roots);
    out.q_rho_minus = q_function(0.9 * out.rho, ctx, roots);
    out.q_rho_plus = q_function(1.1 * out.rho, ctx, roots);
    if (out.lower > out.upper) {
        std::swap(out.lower, out.upper);
        out.reordered = true;
    }
    return out;
}

PdEstimate pd_conditional(const ChannelRealization& ch, const ModelDims& dims, double sigma2,
                          const CriterionOrGamma& crit_or_gamma) {
    return pd_conditional(make_analytic_context(ch, dims, sigma2, 1.0), crit_or_gamma);
}

CalibrationRangeError::CalibrationRangeError(double lo, double hi, double tgt)
    : std::runtime_error([&] {
          std::ostringstream msg;
          msg << "calibrate_gamma: target " << tgt << " outside attainable range [" << lo
              << ", " << hi << "]";
          return msg.str();
      }()),
      attainable_min(lo),
      attainable_max(hi),
      target(tgt) {}

double calibrate_gamma(double target_pf, int p, int n_obs) {
    if (!(target_pf > 0.0 && target_pf < 1.0))
        throw std::invalid_argument("calibrate_gamma: target_pf must be in (0, 1)");
    constexpr double kGammaMax = 22026.465794806718;  // exp(10)
    const double pf_lo_gamma = pf_analytic(p, n_obs, 1.0);      // largest attainable
    const double pf_hi_gamma = pf_analytic(p, n_obs, kGammaMax);  // smallest attainable
    if (target_pf > pf_lo_gamma || target_pf < pf_hi_gamma)
        throw CalibrationRangeError(pf_hi_gamma, pf_lo_gamma, target_pf);

    double lo = 1.0, hi = kGammaMax;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-9 * mid) break;
        if (pf_analytic(p, n_obs, mid) > target_pf)
            lo = mid;  // P_f non-increasing in gamma
        else
            hi = mid;
    }
    const double gamma = 0.5 * (lo + hi);
    if (std::abs(pf_analytic(p, n_obs, gamma) - target_pf) > 1e-4)
        throw CalibrationRangeError(pf_hi_gamma, pf_lo_gamma, target_pf);
    return gamma;
}

}  // namespace specsense
