#pragma once

#include <cmath>

#include "invdpp/core.hpp"

namespace invdpp {

// log Gamma(x), x > 0.  Not safe to call concurrently with itself on some
// libms (signgam); all kernel coefficient tables are therefore built up
// front, outside parallel regions.
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw domain_error("log_gamma: requires x > 0");
    return std::lgamma(x);
}

// log of the (generalized) binomial coefficient binom(a, k) for a > k-1 >= -1.
inline double log_binomial(double a, int k) {
    if (k < 0) throw domain_error("log_binomial: k < 0");
    if (k == 0) return 0.0;
    return log_gamma(a + 1.0) - log_gamma(static_cast<double>(k) + 1.0) - log_gamma(a - k + 1.0);
}

// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace detail {

// Regularized lower incomplete gamma P(a, x): series for x < a+1, Lentz
// continued fraction otherwise.
inline double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw domain_error("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    double b = x + 1.0 - a, c = 1e308, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return 1.0 - std::exp(-x + a * std::log(x) - lg) * h;
}

} // namespace detail

// CDF of the chi-squared distribution with k degrees of freedom.
inline double chi2_cdf(double x, double k) {
    if (x <= 0.0) return 0.0;
    return detail::gamma_p(0.5 * k, 0.5 * x);
}

} // namespace invdpp
