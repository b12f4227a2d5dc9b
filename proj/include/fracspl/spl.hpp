#pragma once

// Single-phase-lag model constants and the two representations of the
// time kernel G(t) for one spatial mode: the multinomial Mittag-Leffler
// closed form and the double sum over derivative Mittag-Leffler terms.
// Their agreement is the standing cross-check of the whole mode machinery.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracspl/mittag.hpp"

namespace fracspl {

struct ModelParams {
    double alpha;        // fractional order, in (0,1)
    double tau_q_alpha;  // tau_q^alpha, enters the equations only in this power
    double rho;
    double c;
    double a;

    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("ModelParams: alpha outside (0,1)");
        if (!(tau_q_alpha > 0.0)) throw std::domain_error("ModelParams: tau_q^alpha must be positive");
        if (!(rho > 0.0 && c > 0.0)) throw std::domain_error("ModelParams: rho, c must be positive");
        if (!(a >= 0.0)) throw std::domain_error("ModelParams: a must be nonnegative");
    }

    double rho_c() const { return rho * c; }
};

/// Per-mode coefficients: the exponent triple (alpha+1, 1, alpha) and the
/// argument triple of every E_{(alpha+1,1,alpha),beta} appearing in the mode
/// solution.
struct SplCoefficients {
    ModelParams model;
    double sigma;  // eigenvalue, > 0

    SplCoefficients(const ModelParams& m, double sigma_n) : model(m), sigma(sigma_n) {
        model.validate();
        if (!(sigma > 0.0)) throw std::domain_error("SplCoefficients: sigma must be positive");
    }

    MLQuery query(double t, double beta) const {
        MLQuery q;
        q.alphas = {model.alpha + 1.0, 1.0, model.alpha};
        q.beta = beta;
        q.zs = {-sigma / (model.rho_c() * model.tau_q_alpha) * std::pow(t, model.alpha + 1.0),
                -model.a / model.rho_c() * t,
                -1.0 / model.tau_q_alpha * std::pow(t, model.alpha)};
        return q;
    }
};

/// mml_eval with automatic degree-cap growth; retries only when the cap, not
/// cancellation, stopped the series.
inline MLResult mml_eval_auto(const MLQuery& q, SeriesControl ctl = {}) {
    for (;;) {
        try {
            return mml_eval(q, ctl);
        } catch (const DegreeCapError&) {
            if (ctl.max_total_degree >= (1u << 21)) throw;
            ctl.max_total_degree *= 4;
        }
    }
}

inline double mml_auto(const MLQuery& q, SeriesControl ctl = {}) { return mml_eval_auto(q, ctl).value; }

/// G(t) = t^alpha / (rho c tau_q^alpha) * E_{(alpha+1,1,alpha),alpha+1}(triple); 0 at t = 0.
inline double g_mml(double t, const SplCoefficients& coeff, SeriesControl ctl = {}) {
    if (!(t >= 0.0)) throw std::domain_error("g_mml: t must be nonnegative");
    if (t == 0.0) return 0.0;
    const double a = coeff.model.alpha;
    const double pre = std::pow(t, a) / (coeff.model.rho_c() * coeff.model.tau_q_alpha);
    return pre * mml_auto(coeff.query(t, a + 1.0), ctl);
}

struct DoubleSumResult {
    double value = 0.0;
    double tail_estimate = 0.0;  // magnitude estimate of the discarded tail
    std::size_t m_used = 0;
};

namespace detail {

/// m-th derivative of E_{alpha,beta} at z in MPFR arithmetic. The Gamma
/// arguments are assembled from alpha and beta in extended precision because
/// the caller's cancellation budget passes straight through every term.
inline BigFloat ml2_deriv_big(const BigFloat& alpha, const BigFloat& beta, const BigFloat& z,
                              std::size_t m, mpfr_prec_t prec) {
    BigFloat sum(0.0, prec);
    BigFloat zpow(1.0, prec);
    BigFloat fr = BigFloat::gamma(BigFloat(static_cast<double>(m) + 1.0, prec));  // (j+m)!/j!
    double peak = -1e300;
    int guard = 0;
    for (std::size_t j = 0; j <= 200000; ++j) {
        const BigFloat arg =
            alpha * BigFloat(static_cast<double>(j + m), prec) + beta;
        const BigFloat term = fr * zpow / BigFloat::gamma(arg);
        sum += term;
        const double lt = term.log2_abs();
        peak = std::max(peak, lt);
        const double ref = std::max(sum.log2_abs(), peak) - static_cast<double>(prec) + 16.0;
        if (lt <= ref) {
            if (++guard >= 3) return sum;
        } else {
            guard = 0;
        }
        fr *= BigFloat(static_cast<double>(j + 1 + m), prec);
        fr /= BigFloat(static_cast<double>(j + 1), prec);
        zpow *= z;
    }
    throw ConvergenceError("ml2_deriv_big: series did not converge");
}

}  // namespace detail

/// Double-sum representation of G(t), truncated at outer index m_max. The
/// outer alternating sum cancels by a factor that grows like exp(2 sigma
/// t^{alpha+1} / (rho c tau_q^alpha)), far past double precision for the
/// eigenvalues of interest, so the whole evaluation runs in MPFR with the
/// precision sized from that growth estimate.
inline DoubleSumResult g_double_sum_eval(double t, const SplCoefficients& coeff, std::size_t m_max,
                                         SeriesControl ctl = {}) {
    if (!(t >= 0.0)) throw std::domain_error("g_double_sum: t must be nonnegative");
    DoubleSumResult out;
    if (t == 0.0) return out;

    const ModelParams& p = coeff.model;
    const double x = coeff.sigma / (p.rho_c() * p.tau_q_alpha) * std::pow(t, p.alpha + 1.0);
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(
        std::clamp(2.0 * x * std::numbers::log2e + 192.0, 320.0, 1048576.0));

    const BigFloat alpha_b(p.alpha, prec);
    const BigFloat t_b(t, prec);
    const BigFloat tau_b(p.tau_q_alpha, prec);
    const BigFloat sig_ratio =
        BigFloat(coeff.sigma, prec) / (BigFloat(p.rho_c(), prec) * tau_b);
    const BigFloat z = BigFloat(0.0, prec) - BigFloat::pow(t_b, alpha_b) / tau_b;
    const bool has_a = p.a > 0.0;
    const BigFloat ratio_ak =
        has_a ? BigFloat(p.a, prec) * tau_b / BigFloat(coeff.sigma, prec) : BigFloat(0.0, prec);

    BigFloat sum(0.0, prec);
    BigFloat outer(1.0, prec);  // sig_ratio^m / m!
    double prev_lt = -1e300;
    const double log2_rel_tol = std::log2(ctl.rel_tol);
    for (std::size_t m = 0; m <= m_max; ++m) {
        if (m > 0) {
            outer *= sig_ratio;
            outer /= BigFloat(static_cast<double>(m), prec);
        }
        BigFloat inner(0.0, prec);
        BigFloat bin(1.0, prec);   // C(m, k)
        BigFloat powk(1.0, prec);  // ratio_ak^k
        for (std::size_t k = 0; k <= m; ++k) {
            if (k > 0) {
                if (!has_a) break;
                bin *= BigFloat(static_cast<double>(m - k + 1), prec);
                bin /= BigFloat(static_cast<double>(k), prec);
                powk *= ratio_ak;
            }
            // t^{(alpha+1)(m+1) - alpha k - 1} = t^{alpha(m+1-k) + m}
            const BigFloat texp = alpha_b * BigFloat(static_cast<double>(m + 1 - k), prec) +
                                  BigFloat(static_cast<double>(m), prec);
            const BigFloat beta_mk = alpha_b * (BigFloat(1.0, prec) - BigFloat(static_cast<double>(k), prec)) +
                                     BigFloat(static_cast<double>(m + 1), prec);
            const BigFloat eml = detail::ml2_deriv_big(alpha_b, beta_mk, z, m, prec);
            inner += bin * powk * BigFloat::pow(t_b, texp) * eml;
        }
        BigFloat term = outer * inner;
        if (m & 1) term = BigFloat(0.0, prec) - term;
        sum += term;
        out.m_used = m;
        const double lt = term.log2_abs();
        const double ls = sum.log2_abs();
        out.tail_estimate = std::exp2(std::min(lt, 1000.0));
        if (m > 2 && lt <= ls + log2_rel_tol && prev_lt <= ls + log2_rel_tol) break;
        prev_lt = lt;
    }
    out.value = (sum / (BigFloat(p.rho_c(), prec) * tau_b)).to_double();
    out.tail_estimate /= p.rho_c() * p.tau_q_alpha;
    return out;
}

/// Value-only variant; rejects a truncation whose tail estimate is not
/// negligible against the value.
inline double g_double_sum(double t, const SplCoefficients& coeff, std::size_t m_max,
                           SeriesControl ctl = {}) {
    const DoubleSumResult r = g_double_sum_eval(t, coeff, m_max, ctl);
    const double scale = std::max(std::abs(r.value), 1e-300);
    if (r.tail_estimate > 1e-9 * scale)
        throw ConvergenceError("g_double_sum: tail estimate exceeds tolerance at m_max");
    return r.value;
}

}  // namespace fracspl
