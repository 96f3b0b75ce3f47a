#pragma once

#include <vector>

// Reference evaluation of the Tracy-Widom order-2 CDF, independent of the
// library's interpolation table. F2(s) = exp(-integral_s^inf (x-s) q(x)^2 dx)
// with q the Hastings-McLeod solution of q'' = s q + 2 q^3, q(s) ~ Ai(s) for
// s -> +inf. The ODE system (q, q', J, I) with J = integral q^2 and
// I = integral (x-s) q^2 is integrated downward from s0 by classic RK4;
// initial values come from closed-form Airy integrals, so the only error
// source is the ODE discretization.

namespace tw2_oracle {

// Airy function and derivative for x > 0 (modified-Bessel route).
double airy_ai(double x);
double airy_ai_prime(double x);

struct Options {
    double s_start = 10.0;  // integration starts here; Ai(s_start)^2 ~ 1e-20
    double max_step = 2.5e-4;
};

// F2 at the given points (any order, must lie below opts.s_start).
std::vector<double> f2_cdf(const std::vector<double>& s_points, const Options& opts = {});

double f2_cdf_one(double s, const Options& opts = {});

}  // namespace tw2_oracle
