#pragma once

// Minimal RAII handle over an MPFR value with an explicit per-value precision.
// Binary operations produce a result at the larger of the operand precisions,
// so no global precision state is consulted.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace mcs::detail {

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 53) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(mpfr_prec_t prec, double d) { mpfr_init2(v_, prec); mpfr_set_d(v_, d, MPFR_RNDN); }
    BigFloat(mpfr_prec_t prec, long i) { mpfr_init2(v_, prec); mpfr_set_si(v_, i, MPFR_RNDN); }
    BigFloat(mpfr_prec_t prec, const mpz_class& z) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, o.precision()); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, o.precision());
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, o.precision());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool finite() const { return mpfr_number_p(v_) != 0; }
    /// log2|v|, -inf for zero.
    double log2_abs() const {
        if (mpfr_zero_p(v_)) return -HUGE_VAL;
        long e = 0;
        double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
        return std::log2(std::fabs(m)) + static_cast<double>(e);
    }
    mpz_class round_to_integer() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }

    /// cos(2*pi*k/m) at the given precision.
    static BigFloat cos_turns(mpfr_prec_t prec, long k, long m) {
        BigFloat r(prec);
        BigFloat angle = turns(prec, k, m);
        mpfr_cos(r.v_, angle.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat sin_turns(mpfr_prec_t prec, long k, long m) {
        BigFloat r(prec);
        BigFloat angle = turns(prec, k, m);
        mpfr_sin(r.v_, angle.v_, MPFR_RNDN);
        return r;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        return apply(a, b, mpfr_add);
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        return apply(a, b, mpfr_sub);
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        return apply(a, b, mpfr_mul);
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        return apply(a, b, mpfr_div);
    }
    friend BigFloat operator-(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
    friend BigFloat abs(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

private:
    using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

    static BigFloat apply(const BigFloat& a, const BigFloat& b, BinaryOp op) {
        BigFloat r(std::max(a.precision(), b.precision()));
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    static BigFloat turns(mpfr_prec_t prec, long k, long m) {
        // A few guard bits so the reduction by 2*pi*k/m loses nothing at prec.
        BigFloat angle(prec + 16);
        mpfr_const_pi(angle.v_, MPFR_RNDN);
        mpfr_mul_si(angle.v_, angle.v_, 2 * k, MPFR_RNDN);
        mpfr_div_si(angle.v_, angle.v_, m, MPFR_RNDN);
        return angle;
    }

    mpfr_t v_;
};

BigFloat abs(const BigFloat& a);

}  // namespace mcs::detail
