#include "sanum/abundancy.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sanum {

Abundancy abundancy(const Signature& s, PrimeTable& pt) {
    Abundancy a;
    a.num = 1;
    a.den = 1;
    a.ln = Interval::zero(pt.prec());
    mpz_class p, t;
    std::uint32_t lo = 1;
    for (const Run& run : s.runs()) {
        for (std::uint32_t i = lo; i <= run.hi; ++i) {
            p = static_cast<unsigned long>(pt.prime(i));
            mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), run.value + 1);  // p^{e+1}
            a.num *= t - 1;
            a.den *= (t / p) * (p - 1);
        }
        lo = run.hi + 1;
    }
    a.ln = Interval::log_z(a.num, pt.prec());
    a.ln -= Interval::log_z(a.den, pt.prec());
    return a;
}

std::strong_ordering compare_abundancy(const Abundancy& a, const Abundancy& b) {
    if (a.ln.strictly_less(b.ln)) return std::strong_ordering::less;
    if (b.ln.strictly_less(a.ln)) return std::strong_ordering::greater;
    mpz_class lhs = a.num * b.den;
    mpz_class rhs = b.num * a.den;
    int c = cmp(lhs, rhs);
    if (c == 0) return std::strong_ordering::equal;
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

double LogMagnitude::log10() const { return value() / M_LN10; }

LogMagnitude log_magnitude(const Signature& s, PrimeTable& pt) {
    return LogMagnitude{ln_interval(s, pt)};
}

double ln_abundancy_step_d(std::uint64_t p, ExpT e_from) {
    // S = p + p^2 + ... + p^{e+1}; returns log1p(1/S). Once S overflows
    // double range the term is far below 1e-300 and contributes nothing.
    double S = 0, pk = 1;
    double pd = static_cast<double>(p);
    for (ExpT t = 0; t <= e_from; ++t) {
        pk *= pd;
        S += pk;
        if (S > 1e300) return 0.0;
    }
    return std::log1p(1.0 / S);
}

Interval ln_abundancy_step(std::uint64_t p, ExpT e_from, mpfr_prec_t prec) {
    mpz_class S = 0, pk = 1, pz(static_cast<unsigned long>(p));
    for (ExpT t = 0; t <= e_from; ++t) {
        pk *= pz;
        S += pk;
    }
    return Interval::log1p_inv_z(S, prec);
}

double ln_abundancy_d(const Signature& s, PrimeTable& pt) {
    if (!s.empty()) pt.ensure(s.r());
    double total = 0;
    std::uint32_t lo = 1;
    for (const Run& run : s.runs()) {
        for (std::uint32_t i = lo; i <= run.hi; ++i) {
            // sigma(p^e)/p^e - 1 = q (1 - q^e) / (1 - q) with q = 1/p.
            double q = 1.0 / static_cast<double>(pt.prime(i));
            total += std::log1p(q * (1.0 - std::pow(q, run.value)) / (1.0 - q));
        }
        lo = run.hi + 1;
    }
    return total;
}

std::string format_log10_2d(const LogMagnitude& m) {
    // v = log10 n known to far better than 0.005; round half-up to 2
    // decimals via floor(100 v + 1/2), then print minimal digits.
    mpfr_prec_t prec = m.ln.lo.prec();
    BigFloat t(prec);
    mpfr_add(t.get(), m.ln.lo.get(), m.ln.hi.get(), MPFR_RNDN);
    mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDN);
    BigFloat l10(prec);
    mpfr_set_ui(l10.get(), 10, MPFR_RNDN);
    mpfr_log(l10.get(), l10.get(), MPFR_RNDN);
    mpfr_div(t.get(), t.get(), l10.get(), MPFR_RNDN);  // log10 n
    mpfr_mul_ui(t.get(), t.get(), 100, MPFR_RNDN);
    mpfr_add_d(t.get(), t.get(), 0.5, MPFR_RNDN);
    mpfr_floor(t.get(), t.get());
    long hundredths = mpfr_get_si(t.get(), MPFR_RNDN);
    if (hundredths < 0) throw std::logic_error("negative magnitude");
    long whole = hundredths / 100, frac = hundredths % 100;
    char buf[64];
    if (frac == 0)
        std::snprintf(buf, sizeof buf, "%ld", whole);
    else if (frac % 10 == 0)
        std::snprintf(buf, sizeof buf, "%ld.%ld", whole, frac / 10);
    else
        std::snprintf(buf, sizeof buf, "%ld.%02ld", whole, frac);
    return buf;
}

std::string format_log10_12sig(double log10_value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", log10_value);
    return buf;
}

}  // namespace sanum
