#pragma once

// Minimal RAII wrapper around mpfr_t. Only the handful of operations the
// Mittag-Leffler series needs; precision is fixed per value and propagates
// as the max of the operands.

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

namespace fracspl {

class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { a += b; return a; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { a -= b; return a; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { a *= b; return a; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { a /= b; return a; }

    /// |this| compared against |o|: true iff |this| < |o|.
    bool abs_less(const BigFloat& o) const { return mpfr_cmpabs(v_, o.v_) < 0; }

    /// log2 |x|, or very negative when zero. Used for tail control.
    double log2_abs() const {
        if (mpfr_zero_p(v_)) return -1e300;
        mpfr_exp_t e = mpfr_get_exp(v_);
        return static_cast<double>(e);
    }

    static BigFloat pow(const BigFloat& base, const BigFloat& e) {
        BigFloat r(std::max(base.prec(), e.prec()));
        mpfr_pow(r.v_, base.v_, e.v_, MPFR_RNDN);
        return r;
    }

    static BigFloat gamma(const BigFloat& x) {
        BigFloat r(x.prec());
        mpfr_gamma(r.v_, x.v_, MPFR_RNDN);
        return r;
    }

    static BigFloat fma_add(const BigFloat& acc, const BigFloat& a, const BigFloat& b) {
        BigFloat r(acc);
        mpfr_fma(r.v_, a.v_, b.v_, acc.v_, MPFR_RNDN);
        return r;
    }

  private:
    mpfr_t v_;
};

}  // namespace fracspl
