#include "echomem/special.hpp"

#include <cmath>
#include <stdexcept>

namespace echomem::num {

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955126;

double dawson_series(double x) {
    // F(x) = sum_n (-2)^n x^(2n+1) / (2n+1)!!, alternating, |x| < 1.
    double term = x;
    double sum = x;
    const double x2 = x * x;
    for (int n = 1; n < 40; ++n) {
        term *= -2.0 * x2 / static_cast<double>(2 * n + 1);
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
}

double dawson_rybicki(double x) {
    // F(x) = (1/sqrt(pi)) lim_{h->0} sum_{n odd} exp(-(x-nh)^2)/n.
    // h = 0.2 puts the sampling error at exp(-(pi/2h)^2) ~ 2e-27.
    const double h = 0.2;
    const double cut = 6.5; // exp(-cut^2) ~ 4e-19
    const int n_lo = static_cast<int>(std::floor((x - cut) / h));
    const int n_hi = static_cast<int>(std::ceil((x + cut) / h));
    double sum = 0.0;
    for (int n = n_lo | 1; n <= n_hi; n += 2) {
        const double d = x - n * h;
        sum += std::exp(-d * d) / static_cast<double>(n);
    }
    return sum / std::sqrt(M_PI);
}

} // namespace

double dawson(double x) {
    if (std::isnan(x)) return x;
    const double ax = std::fabs(x);
    if (ax < 1.0) return dawson_series(x);
    return dawson_rybicki(x);
}

double scaled_erfi(double x) { return kTwoOverSqrtPi * dawson(x); }

double erfi(double x) {
    if (std::fabs(x) > 30.0)
        throw std::domain_error("erfi: |x| > 30, use scaled_erfi");
    const double v = std::exp(x * x) * scaled_erfi(x);
    if (!std::isfinite(v))
        throw std::range_error("erfi: exp(x^2) overflow, use scaled_erfi");
    return v;
}

} // namespace echomem::num
