#pragma once

#include <cmath>
#include <limits>
#include <numbers>

namespace fracspl {

/// log |Gamma(x)| for x > 0. Thin wrapper so the accuracy contract has one home.
inline double log_gamma(double x) {
    return std::lgamma(x);
}

/// 1/Gamma(x) for arbitrary real x. Zero at the poles x = 0, -1, -2, ...
/// For x <= 0 the reflection formula keeps the sign right without touching signgam.
inline double rgamma(double x) {
    if (x > 0.0) return std::exp(-std::lgamma(x));
    if (x == std::floor(x)) return 0.0;
    // 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
    const double s = std::sin(std::numbers::pi * x);
    return s * std::exp(std::lgamma(1.0 - x)) / std::numbers::pi;
}

inline double gamma_fn(double x) {
    const double r = rgamma(x);
    if (r == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / r;
}

}  // namespace fracspl
