#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "volnet/errors.hpp"

namespace volnet {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace detail {

/// Regularized lower incomplete gamma P(a, x) by series expansion (x < a+1)
/// or continued fraction (otherwise).
inline double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Lentz continued fraction for Q(a, x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

} // namespace detail

/// Upper tail of the chi-square distribution with k degrees of freedom.
inline double chi2_sf(double x, double k) {
    if (x <= 0.0) return 1.0;
    return 1.0 - detail::gamma_p(0.5 * k, 0.5 * x);
}

/// Log density of a Student-t variate standardized to unit variance
/// (requires nu > 2), evaluated at z.
inline double std_t_logpdf(double z, double nu) {
    return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
           0.5 * std::log(kPi * (nu - 2.0)) -
           0.5 * (nu + 1.0) * std::log1p(z * z / (nu - 2.0));
}

inline double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

/// Sample variance with divisor n-1.
inline double variance(std::span<const double> x) {
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

inline double median(std::vector<double> x) {
    if (x.empty()) throw ConfigError("median of empty range");
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();
    return n % 2 == 1 ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);
}

/// Quantile with linear interpolation between order statistics (the common
/// "type 7" convention), q in [0, 1].
inline double quantile(std::vector<double> x, double q) {
    if (x.empty()) throw ConfigError("quantile of empty range");
    std::sort(x.begin(), x.end());
    if (q <= 0.0) return x.front();
    if (q >= 1.0) return x.back();
    const double pos = q * static_cast<double>(x.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    return x[lo] + frac * (x[lo + 1] - x[lo]);
}

} // namespace volnet
