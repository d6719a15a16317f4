#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cassert>
#include <utility>

namespace sanum {

inline constexpr mpfr_prec_t kDefaultPrec = 256;
inline constexpr mpfr_prec_t kMaxPrec = 4096;

// RAII wrapper for a single mpfr value.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = kDefaultPrec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  private:
    mpfr_t v_;
};

// Closed interval [lo, hi] maintained with directed rounding: lo is always
// rounded down, hi always up, so the true value stays bracketed through any
// sequence of operations.
class Interval {
  public:
    BigFloat lo, hi;

    explicit Interval(mpfr_prec_t prec = kDefaultPrec) : lo(prec), hi(prec) {}

    static Interval zero(mpfr_prec_t prec = kDefaultPrec) { return Interval(prec); }

    static Interval of_ui(unsigned long v, mpfr_prec_t prec = kDefaultPrec) {
        Interval r(prec);
        mpfr_set_ui(r.lo.get(), v, MPFR_RNDD);
        mpfr_set_ui(r.hi.get(), v, MPFR_RNDU);
        return r;
    }

    // ln of a positive integer.
    static Interval log_z(const mpz_class& z, mpfr_prec_t prec = kDefaultPrec) {
        assert(sgn(z) > 0);
        Interval r(prec);
        BigFloat t(prec);
        mpfr_set_z(t.get(), z.get_mpz_t(), MPFR_RNDD);
        mpfr_log(r.lo.get(), t.get(), MPFR_RNDD);
        mpfr_set_z(t.get(), z.get_mpz_t(), MPFR_RNDU);
        mpfr_log(r.hi.get(), t.get(), MPFR_RNDU);
        return r;
    }

    // ln of a positive rational.
    static Interval log_q(const mpq_class& q, mpfr_prec_t prec = kDefaultPrec) {
        assert(sgn(q) > 0);
        Interval r(prec);
        BigFloat t(prec);
        mpfr_set_q(t.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_log(r.lo.get(), t.get(), MPFR_RNDD);
        mpfr_set_q(t.get(), q.get_mpq_t(), MPFR_RNDU);
        mpfr_log(r.hi.get(), t.get(), MPFR_RNDU);
        return r;
    }

    // ln(1 + 1/z) for a positive integer z; positive and tight even when the
    // result is far below the working precision's ulp at 1.
    static Interval log1p_inv_z(const mpz_class& z, mpfr_prec_t prec = kDefaultPrec) {
        assert(sgn(z) > 0);
        Interval r(prec);
        BigFloat t(prec);
        // lower bound: divide rounding down, log1p rounding down
        mpfr_set_z(t.get(), z.get_mpz_t(), MPFR_RNDU);
        mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDD);
        mpfr_log1p(r.lo.get(), t.get(), MPFR_RNDD);
        mpfr_set_z(t.get(), z.get_mpz_t(), MPFR_RNDD);
        mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDU);
        mpfr_log1p(r.hi.get(), t.get(), MPFR_RNDU);
        return r;
    }

    Interval& operator+=(const Interval& o) {
        mpfr_add(lo.get(), lo.get(), o.lo.get(), MPFR_RNDD);
        mpfr_add(hi.get(), hi.get(), o.hi.get(), MPFR_RNDU);
        return *this;
    }

    Interval& operator-=(const Interval& o) {
        mpfr_sub(lo.get(), lo.get(), o.hi.get(), MPFR_RNDD);
        mpfr_sub(hi.get(), hi.get(), o.lo.get(), MPFR_RNDU);
        return *this;
    }

    friend Interval operator+(Interval a, const Interval& b) { return a += b; }
    friend Interval operator-(Interval a, const Interval& b) { return a -= b; }

    // this += k * o, for k >= 0.
    Interval& add_mul_ui(const Interval& o, unsigned long k) {
        if (k == 0) return *this;
        BigFloat t(lo.prec());
        mpfr_mul_ui(t.get(), o.lo.get(), k, MPFR_RNDD);
        mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
        mpfr_mul_ui(t.get(), o.hi.get(), k, MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
        return *this;
    }

    // this += [d - err, d + err]; for folding a double-tracked delta into an
    // interval-tracked base.
    Interval& add_centered(double d, double err) {
        assert(err >= 0);
        // d +/- err must not collapse in double round-to-nearest first; each
        // bound gets its own correctly-directed operations.
        mpfr_add_d(lo.get(), lo.get(), d, MPFR_RNDD);
        mpfr_sub_d(lo.get(), lo.get(), err, MPFR_RNDD);
        mpfr_add_d(hi.get(), hi.get(), d, MPFR_RNDU);
        mpfr_add_d(hi.get(), hi.get(), err, MPFR_RNDU);
        return *this;
    }

    // Product of two intervals with nonnegative lower bounds.
    static Interval mul_nonneg(const Interval& a, const Interval& b) {
        assert(mpfr_sgn(a.lo.get()) >= 0 && mpfr_sgn(b.lo.get()) >= 0);
        Interval r(a.lo.prec());
        mpfr_mul(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
        mpfr_mul(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
        return r;
    }

    // Quotient of two intervals with positive lower bounds.
    static Interval div_pos(const Interval& a, const Interval& b) {
        assert(mpfr_sgn(a.lo.get()) > 0 && mpfr_sgn(b.lo.get()) > 0);
        Interval r(a.lo.prec());
        mpfr_div(r.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
        mpfr_div(r.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
        return r;
    }

    double mid() const {
        BigFloat t(lo.prec());
        mpfr_add(t.get(), lo.get(), hi.get(), MPFR_RNDN);
        mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDN);
        return t.to_double();
    }

    double width() const {
        BigFloat t(lo.prec());
        mpfr_sub(t.get(), hi.get(), lo.get(), MPFR_RNDU);
        return t.to_double();
    }

    bool strictly_less(const Interval& o) const {
        return mpfr_cmp(hi.get(), o.lo.get()) < 0;
    }
    bool strictly_greater(const Interval& o) const { return o.strictly_less(*this); }
    bool disjoint(const Interval& o) const {
        return strictly_less(o) || o.strictly_less(*this);
    }
    bool contains_zero() const {
        return mpfr_sgn(lo.get()) <= 0 && mpfr_sgn(hi.get()) >= 0;
    }
};

}  // namespace sanum
