#pragma once

// Two-parameter and multinomial Mittag-Leffler functions.
//
// The multinomial series is evaluated by one of two routes:
//   - composition enumeration (odometer over k_1 + .. + k_m = k) in log space,
//     the definitional route, adequate for small and moderate arguments;
//   - an integer-lattice recurrence when the exponents alpha_j are commensurable
//     (alpha_j = n_j * r): grouping terms by the common Gamma argument turns the
//     composition sum into a linear recurrence A_N = sum_j z_j A_{N-n_j}, A_0 = 1,
//     with E = sum_N A_N / Gamma(beta + r N). This is O(N) per evaluation.
// On large negative arguments the alternating series cancels catastrophically
// (intermediate terms reach e^1000 and beyond for the eigenvalue range the
// spectral solver needs), so the lattice route escalates to MPFR with a
// precision sized from the observed peak term.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracspl/bigfloat.hpp"
#include "fracspl/gamma.hpp"

namespace fracspl {

struct SeriesControl {
    double rel_tol = 1e-14;
    std::size_t max_total_degree = 400;  // cap on the outer total degree k
    int underflow_guard = 3;             // consecutive negligible blocks before stopping
};

struct MLQuery {
    std::vector<double> alphas;
    double beta = 1.0;
    std::vector<double> zs;

    void validate() const {
        if (alphas.empty() || alphas.size() != zs.size())
            throw std::invalid_argument("MLQuery: need matching non-empty alphas and zs");
        for (double a : alphas)
            if (!(a > 0.0)) throw std::invalid_argument("MLQuery: exponents must be positive");
    }
};

struct MLResult {
    double value = 0.0;
    std::size_t terms_used = 0;   // lattice degrees or composition blocks consumed
    double tail_estimate = 0.0;   // magnitude of the last retained block
    bool high_precision = false;  // true when the MPFR route produced the value
};

class ConvergenceError : public std::runtime_error {
  public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// The degree cap, not cancellation, stopped the series; callers may retry
/// with a larger cap.
class DegreeCapError : public ConvergenceError {
  public:
    explicit DegreeCapError(const std::string& what) : ConvergenceError(what) {}
};

inline MLResult mml_eval(const MLQuery& q, SeriesControl ctl = {});

// ---------------------------------------------------------------------------
// Two-parameter function E_{alpha,beta}(z) = sum_k z^k / Gamma(beta + alpha k)

/// The m = 1 case of the multinomial evaluator, so alternating series with
/// heavy cancellation inherit the high-precision escalation.
inline double ml2(double alpha, double beta, double z, SeriesControl ctl = {}) {
    if (!(alpha > 0.0)) throw std::domain_error("ml2: alpha must be positive");
    if (z == 0.0) return rgamma(beta);
    MLQuery q;
    q.alphas = {alpha};
    q.beta = beta;
    q.zs = {z};
    return mml_eval(q, ctl).value;
}

/// m-th derivative of E_{alpha,beta} at z via the term-wise differentiated series.
inline double ml2_deriv(double alpha, double beta, double z, std::size_t m, SeriesControl ctl = {}) {
    if (!(alpha > 0.0)) throw std::domain_error("ml2_deriv: alpha must be positive");
    const double lz = (z == 0.0) ? 0.0 : std::log(std::abs(z));
    double sum = 0.0;
    int guard = 0;
    for (std::size_t k = 0; k <= ctl.max_total_degree; ++k) {
        const double km = static_cast<double>(k + m);
        const double arg = alpha * km + beta;
        const double lfact = log_gamma(km + 1.0) - log_gamma(static_cast<double>(k) + 1.0);
        const double sgn = (z < 0.0 && (k & 1)) ? -1.0 : 1.0;
        double term;
        if (z == 0.0) {
            term = (k == 0) ? std::exp(lfact) * rgamma(arg) : 0.0;
        } else if (arg > 0.0) {
            term = sgn * std::exp(lfact + static_cast<double>(k) * lz - log_gamma(arg));
        } else {
            term = sgn * std::exp(lfact + static_cast<double>(k) * lz) * rgamma(arg);
        }
        if (!std::isfinite(term)) throw ConvergenceError("ml2_deriv: term overflow");
        sum += term;
        if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) {
            if (++guard >= ctl.underflow_guard) return sum;
        } else {
            guard = 0;
        }
    }
    throw DegreeCapError("ml2_deriv: series did not converge within degree cap");
}

// ---------------------------------------------------------------------------
// Multinomial function

namespace detail {

struct Lattice {
    bool ok = false;
    double r = 0.0;                // common quantum, alpha_j = n_j * r
    std::vector<long> n;           // lattice steps per variable
};

/// Rational fit alpha_j ~= n_j * r with small integer n_j. Returns ok = false
/// when no common quantum with denominator <= 64 fits to 1e-12.
inline Lattice commensurable(const std::vector<double>& alphas) {
    Lattice lat;
    const double amin = *std::min_element(alphas.begin(), alphas.end());
    for (long q = 1; q <= 64; ++q) {
        const double r = amin / static_cast<double>(q);
        bool fits = true;
        std::vector<long> n(alphas.size());
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            const double ratio = alphas[j] / r;
            const long nj = std::lround(ratio);
            if (nj < 1 || nj > 100000 || std::abs(ratio - static_cast<double>(nj)) > 1e-12 * ratio) {
                fits = false;
                break;
            }
            n[j] = nj;
        }
        if (fits) {
            lat.ok = true;
            lat.r = r;
            lat.n = std::move(n);
            return lat;
        }
    }
    return lat;
}

/// One A_N value with a base-2 exponent offset, so the recurrence never
/// overflows a double even when A_N ~ e^30000.
struct Scaled {
    double mant = 0.0;
    long ex = 0;
};

inline Scaled normalise(double x, long ex) {
    if (x == 0.0) return {0.0, 0};
    int e = 0;
    const double m = std::frexp(x, &e);
    return {m, ex + e};
}

struct DoubleScan {
    double sum = 0.0;
    double max_log2_term = -1e300;
    double last_block = 0.0;
    std::size_t degrees = 0;
    bool converged = false;
    bool representable = true;  // false when exp2 of some term overflows a double
};

/// Lattice recurrence in scaled double arithmetic. Produces the sum (when
/// representable) plus the peak-term statistics the escalation logic needs.
inline DoubleScan lattice_scan_double(const MLQuery& q, const Lattice& lat, const SeriesControl& ctl) {
    DoubleScan out;
    const long stride = *std::max_element(lat.n.begin(), lat.n.end());
    const long n_cap = static_cast<long>(ctl.max_total_degree) * stride;
    const int guard_needed = ctl.underflow_guard * static_cast<int>(stride);
    const double log2_rel_tol = std::log2(ctl.rel_tol);

    std::vector<Scaled> ring(static_cast<std::size_t>(stride) + 1);
    int guard = 0;
    for (long N = 0; N <= n_cap; ++N) {
        Scaled a;
        if (N == 0) {
            a = {0.5, 1};  // A_0 = 1
        } else {
            long emax = std::numeric_limits<long>::min();
            for (std::size_t j = 0; j < lat.n.size(); ++j) {
                const long Np = N - lat.n[j];
                if (Np < 0 || q.zs[j] == 0.0) continue;
                const Scaled& p = ring[static_cast<std::size_t>(Np % (stride + 1))];
                if (p.mant != 0.0) emax = std::max(emax, p.ex);
            }
            double acc = 0.0;
            if (emax != std::numeric_limits<long>::min()) {
                for (std::size_t j = 0; j < lat.n.size(); ++j) {
                    const long Np = N - lat.n[j];
                    if (Np < 0 || q.zs[j] == 0.0) continue;
                    const Scaled& p = ring[static_cast<std::size_t>(Np % (stride + 1))];
                    if (p.mant == 0.0) continue;
                    acc += q.zs[j] * std::ldexp(p.mant, static_cast<int>(p.ex - emax));
                }
            }
            a = normalise(acc, emax);
        }
        ring[static_cast<std::size_t>(N % (stride + 1))] = a;
        out.degrees = static_cast<std::size_t>(N);

        const double garg = q.beta + lat.r * static_cast<double>(N);
        double term;
        double log2t;
        if (a.mant == 0.0) {
            term = 0.0;
            log2t = -1e300;
        } else if (garg > 0.0) {
            log2t = std::log2(std::abs(a.mant)) + static_cast<double>(a.ex) - log_gamma(garg) / std::numbers::ln2;
            term = (a.mant < 0.0 ? -1.0 : 1.0) * std::exp2(log2t);
        } else {
            const double g = rgamma(garg);
            if (g == 0.0) {
                term = 0.0;
                log2t = -1e300;
            } else {
                log2t = std::log2(std::abs(a.mant)) + static_cast<double>(a.ex) + std::log2(std::abs(g));
                term = (std::signbit(a.mant) != std::signbit(g) ? -1.0 : 1.0) * std::exp2(log2t);
            }
        }
        out.max_log2_term = std::max(out.max_log2_term, log2t);
        if (!std::isfinite(term)) out.representable = false;
        if (out.representable) out.sum += term;
        out.last_block = std::exp2(std::min(log2t, 1023.0));

        // Stop once terms sit below tolerance relative to the running sum
        // (or far below the peak when the sum itself is not representable).
        const double ref = (out.representable && out.sum != 0.0)
                               ? std::log2(std::abs(out.sum)) + log2_rel_tol
                               : out.max_log2_term - 1400.0;
        if (log2t <= ref) {
            if (++guard >= guard_needed && N > 0) {
                out.converged = true;
                return out;
            }
        } else {
            guard = 0;
        }
    }
    return out;
}

/// Reciprocal-Gamma table 1/Gamma(beta + r N), grown lazily, cached per thread.
struct RGammaCache {
    mpfr_prec_t prec = 0;
    std::vector<BigFloat> inv;
};

inline const std::vector<BigFloat>& rgamma_table(double beta, double r, long n_max, mpfr_prec_t prec) {
    thread_local std::map<std::pair<double, double>, RGammaCache> cache;
    RGammaCache& c = cache[{beta, r}];
    if (c.prec < prec) {
        c.prec = prec;
        c.inv.clear();
    }
    const BigFloat one(1.0, c.prec);
    while (static_cast<long>(c.inv.size()) <= n_max) {
        const long N = static_cast<long>(c.inv.size());
        const double arg = beta + r * static_cast<double>(N);
        if (arg > 0.0) {
            BigFloat a(0.0, c.prec);
            // beta + r*N assembled in extended precision to keep the table exact
            a = BigFloat(beta, c.prec) + BigFloat(r, c.prec) * BigFloat(static_cast<double>(N), c.prec);
            c.inv.push_back(one / BigFloat::gamma(a));
        } else {
            c.inv.push_back(BigFloat(rgamma(arg), c.prec));
        }
    }
    return c.inv;
}

/// Lattice recurrence in MPFR arithmetic; precision sized from the double scan.
inline MLResult lattice_mpfr(const MLQuery& q, const Lattice& lat, const SeriesControl& ctl,
                             double peak_log2) {
    const mpfr_prec_t prec =
        static_cast<mpfr_prec_t>(std::clamp(peak_log2 + 192.0, 256.0, 4.0e6));
    const long stride = *std::max_element(lat.n.begin(), lat.n.end());
    const long n_cap = static_cast<long>(ctl.max_total_degree) * stride;
    const int guard_needed = ctl.underflow_guard * static_cast<int>(stride);
    const double log2_rel_tol = std::log2(ctl.rel_tol);

    std::vector<BigFloat> zb;
    zb.reserve(q.zs.size());
    for (double z : q.zs) zb.emplace_back(z, prec);
    std::vector<BigFloat> ring(static_cast<std::size_t>(stride) + 1, BigFloat(0.0, prec));
    BigFloat sum(0.0, prec);
    double max_log2 = -1e300;
    double last_block = 0.0;
    int guard = 0;

    for (long N = 0; N <= n_cap; ++N) {
        BigFloat a(0.0, prec);
        if (N == 0) {
            a = BigFloat(1.0, prec);
        } else {
            for (std::size_t j = 0; j < lat.n.size(); ++j) {
                const long Np = N - lat.n[j];
                if (Np < 0) continue;
                a = BigFloat::fma_add(a, zb[j], ring[static_cast<std::size_t>(Np % (stride + 1))]);
            }
        }
        ring[static_cast<std::size_t>(N % (stride + 1))] = a;

        const std::vector<BigFloat>& invg = rgamma_table(q.beta, lat.r, N, prec);
        const BigFloat term = a * invg[static_cast<std::size_t>(N)];
        sum += term;
        const double lt = term.is_zero() ? -1e300 : term.log2_abs();
        max_log2 = std::max(max_log2, lt);
        last_block = std::exp2(std::min(lt, 1023.0));

        const double ref = sum.is_zero() ? max_log2 - static_cast<double>(prec)
                                         : sum.log2_abs() + log2_rel_tol;
        if (lt <= ref) {
            if (++guard >= guard_needed && N > 0) {
                MLResult res;
                res.value = sum.to_double();
                res.terms_used = static_cast<std::size_t>(N);
                res.tail_estimate = last_block;
                res.high_precision = true;
                return res;
            }
        } else {
            guard = 0;
        }
    }
    throw DegreeCapError("mml: high-precision series did not converge within degree cap");
}

/// Composition-enumeration route, log-space doubles. Definitional; used for
/// exponent tuples with no common quantum.
inline MLResult odometer_double(const MLQuery& q, const SeriesControl& ctl) {
    const std::size_t m = q.alphas.size();
    std::vector<double> lz(m);
    for (std::size_t j = 0; j < m; ++j)
        lz[j] = (q.zs[j] == 0.0) ? -std::numeric_limits<double>::infinity()
                                 : std::log(std::abs(q.zs[j]));

    double sum = 0.0;
    double max_abs_term = 0.0;
    double last_block = 0.0;
    int guard = 0;
    std::vector<std::size_t> ks(m, 0);
    for (std::size_t k = 0; k <= ctl.max_total_degree; ++k) {
        const double lkfact = log_gamma(static_cast<double>(k) + 1.0);
        double block = 0.0;
        // odometer over compositions k_1 + .. + k_m = k
        std::fill(ks.begin(), ks.end(), 0);
        ks[0] = k;
        while (true) {
            double lnum = lkfact;
            double garg = q.beta;
            double sgn = 1.0;
            bool zero = false;
            for (std::size_t j = 0; j < m; ++j) {
                if (ks[j] > 0 && q.zs[j] == 0.0) {
                    zero = true;
                    break;
                }
                lnum += static_cast<double>(ks[j]) * lz[j] - log_gamma(static_cast<double>(ks[j]) + 1.0);
                garg += q.alphas[j] * static_cast<double>(ks[j]);
                if (q.zs[j] < 0.0 && (ks[j] & 1)) sgn = -sgn;
            }
            if (!zero) {
                double term;
                if (garg > 0.0)
                    term = sgn * std::exp(lnum - log_gamma(garg));
                else
                    term = sgn * std::exp(lnum) * rgamma(garg);
                if (!std::isfinite(term))
                    throw ConvergenceError("mml: term overflow in composition sum");
                block += term;
                max_abs_term = std::max(max_abs_term, std::abs(term));
            }
            // advance the odometer
            if (m == 1) break;
            std::size_t j = 0;
            while (j + 1 < m && ks[j] == 0) ++j;
            if (j + 1 == m) break;
            const std::size_t carry = ks[j];
            ks[j] = 0;
            ks[0] = carry - 1;
            ++ks[j + 1];
        }
        sum += block;
        last_block = std::abs(block);
        if (last_block <= ctl.rel_tol * std::abs(sum)) {
            if (++guard >= ctl.underflow_guard && k > 0) {
                // Fewer than ~8 good digits left after cancellation: the
                // high-precision route needs a common exponent quantum, which
                // this tuple lacks, so report rather than return noise.
                if (max_abs_term * 0x1p-52 > 1e-8 * std::abs(sum))
                    throw ConvergenceError(
                        "mml: catastrophic cancellation; exponents admit no common quantum for the "
                        "high-precision route");
                MLResult res;
                res.value = sum;
                res.terms_used = k;
                res.tail_estimate = last_block;
                return res;
            }
        } else {
            guard = 0;
        }
    }
    throw DegreeCapError("mml: series did not converge within degree cap");
}

}  // namespace detail

/// Multinomial Mittag-Leffler E_{(alpha_1..alpha_m),beta}(z_1..z_m) with diagnostics.
inline MLResult mml_eval(const MLQuery& q, SeriesControl ctl) {
    q.validate();
    const detail::Lattice lat = detail::commensurable(q.alphas);
    if (!lat.ok) return detail::odometer_double(q, ctl);

    const detail::DoubleScan scan = detail::lattice_scan_double(q, lat, ctl);
    if (!scan.converged)
        throw DegreeCapError("mml: series did not converge within degree cap");
    // Rounding noise of the double pass is ~2^{peak-52}; it must sit below
    // rel_tol of the computed sum, otherwise redo the sum in MPFR.
    const bool accurate =
        scan.representable && std::isfinite(scan.sum) && scan.sum != 0.0 &&
        scan.max_log2_term - 52.0 <= std::log2(std::abs(scan.sum)) + std::log2(ctl.rel_tol);
    if (accurate) {
        MLResult res;
        res.value = scan.sum;
        res.terms_used = scan.degrees;
        res.tail_estimate = scan.last_block;
        return res;
    }
    return detail::lattice_mpfr(q, lat, ctl, scan.max_log2_term);
}

inline double mml(const MLQuery& q, SeriesControl ctl = {}) { return mml_eval(q, ctl).value; }

/// The map t -> t^gamma * E_{(alpha..),beta+1}(q_1 t^{alpha_1}, .., q_m t^{alpha_m}).
struct MLTimePower {
    std::vector<double> alphas;
    std::vector<double> qs;
    double beta = 1.0;

    MLQuery at(double t, double beta_shift = 1.0) const {
        MLQuery out;
        out.alphas = alphas;
        out.beta = beta + beta_shift;
        out.zs.resize(qs.size());
        for (std::size_t j = 0; j < qs.size(); ++j) out.zs[j] = qs[j] * std::pow(t, alphas[j]);
        return out;
    }
};

/// d/dt [ t^gamma E_{(alpha..),beta+1}(q_1 t^{alpha_1},..) ]
///   = t^{gamma-1} E_{(alpha..),beta}(..) + (gamma - beta) t^{gamma-1} E_{(alpha..),beta+1}(..)
inline double mml_t_derivative(double gamma, const MLTimePower& f, double t, SeriesControl ctl = {}) {
    if (!(t > 0.0)) throw std::domain_error("mml_t_derivative: t must be positive");
    const double e_beta = mml(f.at(t, 0.0), ctl);
    const double e_beta1 = mml(f.at(t, 1.0), ctl);
    return std::pow(t, gamma - 1.0) * (e_beta + (gamma - f.beta) * e_beta1);
}

}  // namespace fracspl
