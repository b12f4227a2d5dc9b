#pragma once

// Explicit 1D solution on (0, L) with constant conductivity: sine eigenmodes
// with the multinomial Mittag-Leffler time factors. Ground truth for the
// Rothe solver.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fracspl/spl.hpp"

namespace fracspl {

struct SpectralConfig {
    double L;
    double k_bar;
    ModelParams params;
    std::size_t n_modes;
    std::size_t quad_points;  // composite-trapezoid intervals for Fourier coefficients

    void validate() const {
        params.validate();
        if (!(L > 0.0)) throw std::domain_error("SpectralConfig: L must be positive");
        if (!(k_bar > 0.0)) throw std::domain_error("SpectralConfig: conductivity must be positive");
        if (n_modes < 1) throw std::domain_error("SpectralConfig: need at least one mode");
    }

    std::size_t effective_quad_points() const {
        return std::max({quad_points, std::size_t{1024}, 20 * n_modes});
    }

    double sigma(std::size_t n) const {
        const double w = static_cast<double>(n) * std::numbers::pi / L;
        return params.a + k_bar * w * w;
    }
};

/// Normalised eigenfunction X_n(x) = sqrt(2/L) sin(n pi x / L).
inline double eigenfunction(std::size_t n, double L, double x) {
    if (n < 1) throw std::domain_error("eigenfunction: mode index starts at 1");
    if (x < 0.0 || x > L) throw std::domain_error("eigenfunction: x outside [0,L]");
    return std::sqrt(2.0 / L) * std::sin(static_cast<double>(n) * std::numbers::pi * x / L);
}

/// Composite-trapezoid approximation of (f, X_n) from samples on the uniform
/// quadrature grid (quad_points intervals, endpoints included).
inline double fourier_coefficient(const std::vector<double>& f_samples, std::size_t n,
                                  const SpectralConfig& config) {
    const std::size_t q = f_samples.size() - 1;
    if (f_samples.size() < 2) throw std::invalid_argument("fourier_coefficient: too few samples");
    if (q < 10 * config.n_modes)
        throw std::invalid_argument("fourier_coefficient: quadrature grid under-resolves the modes");
    const double dx = config.L / static_cast<double>(q);
    double s = 0.0;
    for (std::size_t i = 0; i <= q; ++i) {
        const double w = (i == 0 || i == q) ? 0.5 : 1.0;
        s += w * f_samples[i] * eigenfunction(n, config.L, static_cast<double>(i) * dx);
    }
    return s * dx;
}

// ---------------------------------------------------------------------------
// Time factors

/// T_n^1(t) = 1 - sigma/(rho c tau_q^a) t^{a+1} E_{(a+1,1,a),a+2}(triple); 1 at t = 0.
inline double t_factor_1(double t, const SplCoefficients& coeff, SeriesControl ctl = {}) {
    if (!(t >= 0.0)) throw std::domain_error("t_factor_1: t must be nonnegative");
    if (t == 0.0) return 1.0;
    const ModelParams& p = coeff.model;
    const double pre = coeff.sigma / (p.rho_c() * p.tau_q_alpha) * std::pow(t, p.alpha + 1.0);
    return 1.0 - pre * mml_auto(coeff.query(t, p.alpha + 2.0), ctl);
}

/// Unsimplified three-term form of T_n^1; agreement with t_factor_1 exercises
/// the multinomial recurrence.
inline double t_factor_1_three_term(double t, const SplCoefficients& coeff, SeriesControl ctl = {}) {
    if (!(t >= 0.0)) throw std::domain_error("t_factor_1: t must be nonnegative");
    if (t == 0.0) return 1.0;
    const ModelParams& p = coeff.model;
    const double e1 = mml_auto(coeff.query(t, 1.0), ctl);
    const double e2 = mml_auto(coeff.query(t, 2.0), ctl);
    const double ea1 = mml_auto(coeff.query(t, p.alpha + 1.0), ctl);
    return e1 + p.a / p.rho_c() * t * e2 + std::pow(t, p.alpha) / p.tau_q_alpha * ea1;
}

/// T_n^2(t) = t E_{(a+1,1,a),2}(triple); 0 at t = 0.
inline double t_factor_2(double t, const SplCoefficients& coeff, SeriesControl ctl = {}) {
    if (!(t >= 0.0)) throw std::domain_error("t_factor_2: t must be nonnegative");
    if (t == 0.0) return 0.0;
    return t * mml_auto(coeff.query(t, 2.0), ctl);
}

/// (T_n^1)'(t) = -sigma/(rho c tau_q^a) t^a E_{(a+1,1,a),a+1}(triple), t > 0.
inline double dt_factor_1(double t, const SplCoefficients& coeff, SeriesControl ctl = {}) {
    if (!(t > 0.0)) throw std::domain_error("dt_factor_1: t must be positive");
    const ModelParams& p = coeff.model;
    return -coeff.sigma / (p.rho_c() * p.tau_q_alpha) * std::pow(t, p.alpha) *
           mml_auto(coeff.query(t, p.alpha + 1.0), ctl);
}

/// (T_n^2)'(t) = E_{(a+1,1,a),1}(triple); 1 at t = 0.
inline double dt_factor_2(double t, const SplCoefficients& coeff, SeriesControl ctl = {}) {
    if (!(t >= 0.0)) throw std::domain_error("dt_factor_2: t must be nonnegative");
    if (t == 0.0) return 1.0;
    return mml_auto(coeff.query(t, 1.0), ctl);
}

/// sup over (r, t) of r^{1/2} t^a / (1 + r t^{a+1}). The inner maximum over r
/// at fixed t is attained at r* = t^{-(a+1)} with value t^{(a-1)/2}/2, which
/// grows as t -> 0 for a < 1; the supremum over t >= t_min is therefore
/// reported together with a flag that it sits at the lower t limit.
struct MTildeResult {
    double value;
    double attained_t;
    bool at_lower_limit;
};

inline MTildeResult m_tilde(double alpha, double T, double t_min = 1e-3, std::size_t t_samples = 512) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("m_tilde: alpha outside (0,1)");
    if (!(T > 0.0) || !(t_min > 0.0) || !(t_min < T)) throw std::domain_error("m_tilde: bad time range");
    double best = 0.0, best_t = t_min;
    for (std::size_t i = 0; i <= t_samples; ++i) {
        const double t = t_min + (T - t_min) * static_cast<double>(i) / static_cast<double>(t_samples);
        const double inner = 0.5 * std::pow(t, (alpha - 1.0) / 2.0);
        if (inner > best) {
            best = inner;
            best_t = t;
        }
    }
    return {best, best_t, best_t == t_min};
}

// ---------------------------------------------------------------------------
// Series solution

struct SpectralModel {
    SpectralConfig config;
    std::vector<double> sigma;  // sigma_n, n = 1..N
    std::vector<double> c;      // (U0, X_n)
    std::vector<double> d;      // (V0, X_n)
};

/// Mode data from initial samples on the quadrature grid.
inline SpectralModel build_spectral_model(const SpectralConfig& config,
                                          const std::vector<double>& U0_samples,
                                          const std::vector<double>& V0_samples) {
    config.validate();
    SpectralModel m{config, {}, {}, {}};
    for (std::size_t n = 1; n <= config.n_modes; ++n) {
        m.sigma.push_back(config.sigma(n));
        m.c.push_back(fourier_coefficient(U0_samples, n, config));
        m.d.push_back(fourier_coefficient(V0_samples, n, config));
    }
    return m;
}

struct SpectralField {
    std::vector<double> x;
    std::vector<double> t;
    std::vector<std::vector<double>> u;    // u[it][ix]
    std::vector<std::vector<double>> dtu;  // dtu[it][ix]
    std::vector<double> l2_u;              // Parseval norms over retained modes
    std::vector<double> l2_dtu;
    std::size_t modes_skipped = 0;  // negligible-coefficient modes not evaluated
};

/// Truncated-series evaluation. Modes whose coefficients are negligible
/// against the data norm are skipped: their contribution is bounded by the
/// coefficient times the uniform T_n bounds.
inline SpectralField spectral_solve(const SpectralConfig& config,
                                    const std::vector<double>& U0_samples,
                                    const std::vector<double>& V0_samples,
                                    const std::vector<double>& x_eval,
                                    const std::vector<double>& t_eval,
                                    SeriesControl ctl = {}) {
    const SpectralModel model = build_spectral_model(config, U0_samples, V0_samples);

    double data_scale = 0.0;
    for (std::size_t n = 0; n < model.sigma.size(); ++n)
        data_scale = std::max({data_scale, std::abs(model.c[n]), std::abs(model.d[n])});
    const double skip_below = 1e-14 * data_scale;

    SpectralField field;
    field.x = x_eval;
    field.t = t_eval;
    field.u.assign(t_eval.size(), std::vector<double>(x_eval.size(), 0.0));
    field.dtu.assign(t_eval.size(), std::vector<double>(x_eval.size(), 0.0));
    field.l2_u.assign(t_eval.size(), 0.0);
    field.l2_dtu.assign(t_eval.size(), 0.0);

    for (std::size_t n = 0; n < model.sigma.size(); ++n) {
        if (std::abs(model.c[n]) <= skip_below && std::abs(model.d[n]) <= skip_below) {
            ++field.modes_skipped;
            continue;
        }
        const SplCoefficients coeff(config.params, model.sigma[n]);
        for (std::size_t it = 0; it < t_eval.size(); ++it) {
            const double t = t_eval[it];
            const double T1 = t_factor_1(t, coeff, ctl);
            const double T2 = t_factor_2(t, coeff, ctl);
            const double dT1 = (t > 0.0) ? dt_factor_1(t, coeff, ctl) : 0.0;
            const double dT2 = dt_factor_2(t, coeff, ctl);
            const double amp = model.c[n] * T1 + model.d[n] * T2;
            const double damp = model.c[n] * dT1 + model.d[n] * dT2;
            field.l2_u[it] += amp * amp;
            field.l2_dtu[it] += damp * damp;
            for (std::size_t ix = 0; ix < x_eval.size(); ++ix) {
                const double X = eigenfunction(n + 1, config.L, x_eval[ix]);
                field.u[it][ix] += X * amp;
                field.dtu[it][ix] += X * damp;
            }
        }
    }
    for (double& v : field.l2_u) v = std::sqrt(v);
    for (double& v : field.l2_dtu) v = std::sqrt(v);
    return field;
}

}  // namespace fracspl
