#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "sanum/bigfloat.hpp"
#include "sanum/prime_table.hpp"
#include "sanum/signature.hpp"

namespace sanum {

// sigma(n)/n kept as the unreduced product of per-prime-power terms
// (gcd reduction is wasted work at scale; reduce lazily for display only),
// plus a bracketed ln for fast comparison.
struct Abundancy {
    mpz_class num;  // prod (p_i^{e_i+1} - 1)
    mpz_class den;  // prod p_i^{e_i} (p_i - 1)
    Interval ln;    // brackets ln(num/den)
};

Abundancy abundancy(const Signature& s, PrimeTable& pt);

// Exact order of the two rationals: bracketed-ln fast path, cross
// multiplication when the brackets overlap.
std::strong_ordering compare_abundancy(const Abundancy& a, const Abundancy& b);

// ln n with a tracked absolute error bound.
struct LogMagnitude {
    Interval ln;
    double value() const { return ln.mid(); }
    double error() const { return ln.width(); }
    double log10() const;
};

LogMagnitude log_magnitude(const Signature& s, PrimeTable& pt);

// Change of ln(sigma(n)/n) when the exponent of p steps from e to e+1:
// ln(sigma(p^{e+1}) p^e / (sigma(p^e) p^{e+1})) = ln(1 + 1/(p + p^2 + ... +
// p^{e+1})). Always positive, strictly decreasing in e.
double ln_abundancy_step_d(std::uint64_t p, ExpT e_from);
Interval ln_abundancy_step(std::uint64_t p, ExpT e_from, mpfr_prec_t prec);

// ln(sigma(n)/n) as a plain double (per-prime closed-form terms).
double ln_abundancy_d(const Signature& s, PrimeTable& pt);

// One superabundant record: 1-based index (index 1 is n = 1), signature,
// magnitude and abundancy. The doubles are accelerator caches; the signature
// is the source of truth and exact values are recomputed from it on demand.
struct SaRecord {
    std::uint64_t index = 0;
    Signature sig;
    double ln_value = 0;  // ~ ln n
    double ln_error = 0;  // |ln_value - ln n| <= ln_error
    double ln_ab = 0;     // ~ ln(sigma(n)/n)
};

// log10 n rounded half-up to at most 2 decimals, printed with minimal
// digits (e.g. "2482.5", "389.55", "0"). Used for report tables.
std::string format_log10_2d(const LogMagnitude& m);

// log10 n with 12 significant digits (list-file checksum column).
std::string format_log10_12sig(double log10_value);

}  // namespace sanum
