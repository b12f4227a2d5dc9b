#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fracspl/gamma.hpp"

namespace fracspl {

/// Uniform partition of [0, T] into n steps of size tau = T/n.
struct TimeGrid {
    double final_time;
    std::size_t step_count;

    TimeGrid(double T, std::size_t n) : final_time(T), step_count(n) {
        if (!(T > 0.0)) throw std::domain_error("TimeGrid: final time must be positive");
        if (n < 1) throw std::domain_error("TimeGrid: need at least one step");
    }

    double tau() const { return final_time / static_cast<double>(step_count); }
    double node(std::size_t i) const { return static_cast<double>(i) * tau(); }
    std::size_t node_count() const { return step_count + 1; }
};

/// Scalar samples z_0..z_n on a time grid.
struct SampledPath {
    TimeGrid grid;
    std::vector<double> values;  // size n+1

    SampledPath(const TimeGrid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.node_count())
            throw std::invalid_argument("SampledPath: need n+1 samples");
        for (double x : values)
            if (!std::isfinite(x)) throw std::invalid_argument("SampledPath: non-finite sample");
    }

    static SampledPath zero(const TimeGrid& g) {
        return SampledPath(g, std::vector<double>(g.node_count(), 0.0));
    }

    template <class F>
    static SampledPath from_function(const TimeGrid& g, F&& f) {
        std::vector<double> v(g.node_count());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.node(i));
        return SampledPath(g, std::move(v));
    }

    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

/// Riemann-Liouville kernel g_gamma(t) = t^{-gamma} / Gamma(1-gamma), t > 0.
inline double rl_kernel(double gamma, double t) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::domain_error("rl_kernel: order must lie in (0,1)");
    if (!(t > 0.0)) throw std::domain_error("rl_kernel: t must be positive");
    return std::pow(t, -gamma) * rgamma(1.0 - gamma);
}

/// g_gamma sampled at t_1..t_n. The singular node t_0 = 0 is never stored.
struct KernelSamples {
    double gamma;
    TimeGrid grid;
    std::vector<double> values;  // values[i-1] = g_gamma(t_i), i = 1..n

    KernelSamples(double g, const TimeGrid& tg) : gamma(g), grid(tg), values(tg.step_count) {
        for (std::size_t i = 1; i <= tg.step_count; ++i)
            values[i - 1] = rl_kernel(g, tg.node(i));
    }

    /// Raw samples, e.g. for the fault-injection suite. Must be positive.
    KernelSamples(const TimeGrid& tg, std::vector<double> raw) : gamma(0.5), grid(tg), values(std::move(raw)) {
        if (values.size() != tg.step_count)
            throw std::invalid_argument("KernelSamples: need one sample per step");
    }

    /// kappa_i with 1-based index, as in the discrete convolution sum.
    double at(std::size_t i) const { return values[i - 1]; }
};

}  // namespace fracspl
