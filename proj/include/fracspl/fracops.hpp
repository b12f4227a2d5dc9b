#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fracspl/grid.hpp"

namespace fracspl {

/// Backward difference quotient (z_i - z_{i-1}) / tau, 1 <= i <= n.
inline double delta(const SampledPath& z, std::size_t i) {
    if (i < 1 || i > z.grid.step_count) throw std::out_of_range("delta: index outside 1..n");
    return (z[i] - z[i - 1]) / z.grid.tau();
}

/// Second difference quotient (delta z_i - delta z_{i-1}) / tau with the
/// seeded initial velocity delta z_0 := prior_delta0.
inline double delta2(const SampledPath& z, double prior_delta0, std::size_t i) {
    if (i < 1 || i > z.grid.step_count) throw std::out_of_range("delta2: index outside 1..n");
    const double d_i = delta(z, i);
    const double d_im1 = (i == 1) ? prior_delta0 : delta(z, i - 1);
    return (d_i - d_im1) / z.grid.tau();
}

/// Right-endpoint discrete convolution (kappa * z)^c_i = sum_{l=1..i} kappa_{i+1-l} z_l tau.
/// At i = 0 the value is 0, defined only when z_0 = 0.
inline double discrete_conv(const KernelSamples& kernel, const SampledPath& z, std::size_t i) {
    if (i > z.grid.step_count) throw std::out_of_range("discrete_conv: index outside 0..n");
    if (i == 0) {
        if (z[0] != 0.0)
            throw std::invalid_argument("discrete_conv: (kappa*z)^c_0 requires z_0 = 0");
        return 0.0;
    }
    const double tau = z.grid.tau();
    double acc = 0.0;
    for (std::size_t l = 1; l <= i; ++l) acc += kernel.at(i + 1 - l) * z[l];
    return acc * tau;
}

/// Full path of (kappa * z)^c_i for i = 0..n. Node 0 is set to 0 regardless of z_0
/// (callers relying on the i = 0 contract should use discrete_conv directly).
inline SampledPath discrete_conv_path(const KernelSamples& kernel, const SampledPath& z) {
    std::vector<double> out(z.size(), 0.0);
    const double tau = z.grid.tau();
    for (std::size_t i = 1; i <= z.grid.step_count; ++i) {
        double acc = 0.0;
        for (std::size_t l = 1; l <= i; ++l) acc += kernel.at(i + 1 - l) * z[l];
        out[i] = acc * tau;
    }
    return SampledPath(z.grid, std::move(out));
}

namespace detail {

/// Right-endpoint cumulative sum: (I^1 z)_i = sum_{l=1..i} z_l tau.
inline SampledPath cumulative_integral(const SampledPath& z) {
    std::vector<double> out(z.size(), 0.0);
    const double tau = z.grid.tau();
    for (std::size_t i = 1; i <= z.grid.step_count; ++i) out[i] = out[i - 1] + z[i] * tau;
    return SampledPath(z.grid, std::move(out));
}

}  // namespace detail

/// Discrete fractional integral I^alpha z = g_{1-alpha} * z for alpha in (0,1);
/// for alpha >= 1 the integer part is realised as repeated cumulative sums.
inline SampledPath frac_integral(double alpha, const SampledPath& z) {
    if (!(alpha > 0.0)) throw std::domain_error("frac_integral: order must be positive");
    SampledPath cur = z;
    double rem = alpha;
    while (rem >= 1.0) {
        cur = detail::cumulative_integral(cur);
        rem -= 1.0;
    }
    if (rem > 0.0) {
        KernelSamples kernel(1.0 - rem, cur.grid);
        cur = discrete_conv_path(kernel, cur);
    }
    return cur;
}

/// Discrete Caputo derivative: node i holds delta (g_alpha * (z - z_0))^c_i.
/// Node 0 is left at zero by convention.
inline SampledPath caputo_discrete(double alpha, const SampledPath& z) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("caputo_discrete: order must lie in (0,1)");
    std::vector<double> shifted(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) shifted[i] = z[i] - z[0];
    KernelSamples kernel(alpha, z.grid);
    SampledPath conv = discrete_conv_path(kernel, SampledPath(z.grid, std::move(shifted)));
    std::vector<double> out(z.size(), 0.0);
    for (std::size_t i = 1; i <= z.grid.step_count; ++i) out[i] = delta(conv, i);
    return SampledPath(z.grid, std::move(out));
}

}  // namespace fracspl
