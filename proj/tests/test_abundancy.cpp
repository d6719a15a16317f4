#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "sanum/abundancy.hpp"
#include "sanum/prime_table.hpp"
#include "sanum/signature.hpp"

using namespace sanum;

namespace {

std::vector<ExpT> random_nonincreasing(std::mt19937_64& rng, std::uint32_t max_r,
                                       ExpT max_e1) {
    std::uniform_int_distribution<std::uint32_t> rdist(0, max_r);
    std::uint32_t r = rdist(rng);
    std::vector<ExpT> e(r);
    ExpT cap = max_e1;
    for (std::uint32_t i = 0; i < r; ++i) {
        std::uniform_int_distribution<ExpT> edist(1, cap);
        e[i] = edist(rng);
        cap = e[i];
    }
    return e;
}

// Sum of all divisors by literal enumeration — shares nothing with the
// product formula under test.
unsigned long long sigma_divisor_sum(unsigned long long n) {
    unsigned long long s = 0;
    for (unsigned long long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        s += d;
        unsigned long long q = n / d;
        if (q != d) s += q;
    }
    return s;
}

// sigma(p^e) = 1 + p + ... + p^e, exactly.
mpz_class sigma_prime_power(unsigned long p, ExpT e) {
    mpz_class s = 0, pk = 1, pz(p);
    for (ExpT t = 0; t <= e; ++t) {
        s += pk;
        pk *= pz;
    }
    return s;
}

mpq_class exact_abundancy(const Signature& sig, PrimeTable& pt) {
    mpq_class q(1);
    std::vector<ExpT> e = sig.exponents();
    for (std::size_t i = 0; i < e.size(); ++i) {
        unsigned long p = static_cast<unsigned long>(pt.prime(i + 1));
        mpz_class pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), p, e[i]);
        mpq_class term(sigma_prime_power(p, e[i]), pe);
        term.canonicalize();
        q *= term;
    }
    return q;
}

// An Abundancy whose ln bracket is too wide to decide anything, forcing the
// cross-multiplication path in compare_abundancy.
Abundancy wide_abundancy(long num, long den) {
    Abundancy a;
    a.num = num;
    a.den = den;
    a.ln = Interval::zero();
    a.ln.add_centered(0.0, 50.0);
    return a;
}

}  // namespace

TEST_CASE("abundancy matches divisor-sum ratios for materializable values") {
    PrimeTable pt;
    std::mt19937_64 rng(20240829);
    int tested = 0;
    while (tested < 60) {
        std::vector<ExpT> e = random_nonincreasing(rng, 8, 12);
        if (e.empty()) continue;
        Signature s = Signature::from_exponents(e);
        mpz_class m = materialize(s, pt);
        if (m > 2'000'000'000) continue;
        unsigned long n = mpz_get_ui(m.get_mpz_t());
        Abundancy a = abundancy(s, pt);
        mpq_class got(a.num, a.den);
        got.canonicalize();
        mpq_class want(static_cast<unsigned long>(sigma_divisor_sum(n)),
                       static_cast<unsigned long>(n));
        want.canonicalize();
        CHECK(got == want);
        ++tested;
    }
}

TEST_CASE("abundancy is the product of exact per-prime terms") {
    PrimeTable pt;
    std::mt19937_64 rng(20240830);
    for (int t = 0; t < 60; ++t) {
        std::vector<ExpT> e = random_nonincreasing(rng, 120, 25);
        if (e.empty()) continue;
        Signature s = Signature::from_exponents(e);
        Abundancy a = abundancy(s, pt);
        mpq_class got(a.num, a.den);
        got.canonicalize();
        CHECK(got == exact_abundancy(s, pt));
    }
}

TEST_CASE("abundancy ln bracket is tight and contains the exact log") {
    PrimeTable pt;
    std::mt19937_64 rng(20240831);
    for (int t = 0; t < 40; ++t) {
        std::vector<ExpT> e = random_nonincreasing(rng, 60, 15);
        if (e.empty()) continue;
        Signature s = Signature::from_exponents(e);
        Abundancy a = abundancy(s, pt);
        mpq_class q(a.num, a.den);
        q.canonicalize();
        Interval exact = Interval::log_q(q, 512);
        CHECK(!a.ln.disjoint(exact));
        CHECK(a.ln.width() < 1e-50);
    }
}

TEST_CASE("compare_abundancy agrees with exact rational order") {
    PrimeTable pt;
    std::mt19937_64 rng(20240901);
    std::vector<Abundancy> pool;
    std::vector<mpq_class> values;
    for (int t = 0; t < 40; ++t) {
        std::vector<ExpT> e = random_nonincreasing(rng, 20, 10);
        Signature s = e.empty() ? Signature{} : Signature::from_exponents(e);
        pool.push_back(abundancy(s, pt));
        mpq_class q(pool.back().num, pool.back().den);
        q.canonicalize();
        values.push_back(q);
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = 0; j < pool.size(); ++j) {
            std::strong_ordering got = compare_abundancy(pool[i], pool[j]);
            int want = cmp(values[i], values[j]);
            if (want < 0) CHECK(got == std::strong_ordering::less);
            else if (want > 0) CHECK(got == std::strong_ordering::greater);
            else CHECK(got == std::strong_ordering::equal);
        }
    }
}

TEST_CASE("overlapping ln brackets fall back to exact cross multiplication") {
    // Wide brackets make the fast path useless; only the exact integers can
    // decide. Unreduced equivalent fractions must compare equal.
    CHECK(compare_abundancy(wide_abundancy(6, 4), wide_abundancy(3, 2)) ==
          std::strong_ordering::equal);
    CHECK(compare_abundancy(wide_abundancy(7, 4), wide_abundancy(3, 2)) ==
          std::strong_ordering::greater);
    CHECK(compare_abundancy(wide_abundancy(299, 200), wide_abundancy(3, 2)) ==
          std::strong_ordering::less);
    // Near-unity fractions differing in the last digit of a large product.
    Abundancy a = wide_abundancy(0, 1), b = wide_abundancy(0, 1);
    a.num = mpz_class("123456789012345678901234567890123456789");
    a.den = mpz_class("123456789012345678901234567890123456788");
    b.num = mpz_class("123456789012345678901234567890123456790");
    b.den = mpz_class("123456789012345678901234567890123456789");
    CHECK(compare_abundancy(a, b) == std::strong_ordering::greater);
    CHECK(compare_abundancy(b, a) == std::strong_ordering::less);
    CHECK(compare_abundancy(a, a) == std::strong_ordering::equal);
}

TEST_CASE("near-tie abundancies around 2^250 are ordered exactly") {
    // sigma(2^a)/2^a = 2 - 2^-a: consecutive exponents differ by about
    // 2^-(a+2), which crosses the default bracket width near a = 250. The
    // order must stay exact on both sides of that crossover.
    PrimeTable pt;
    for (ExpT a = 245; a <= 260; ++a) {
        Abundancy lo = abundancy(Signature::from_exponents({a}), pt);
        Abundancy hi = abundancy(Signature::from_exponents({a + 1}), pt);
        CHECK(compare_abundancy(lo, hi) == std::strong_ordering::less);
        CHECK(compare_abundancy(hi, lo) == std::strong_ordering::greater);
        CHECK(compare_abundancy(lo, lo) == std::strong_ordering::equal);
        // Cross-check against the closed form with exact integers.
        mpz_class two_a = mpz_class(1) << a;
        mpz_class two_a1 = mpz_class(1) << (a + 1);
        mpq_class qa(two_a1 - 1, two_a);
        mpq_class qb((two_a1 << 1) - 1, two_a1);
        qa.canonicalize();
        qb.canonicalize();
        mpq_class got_a(lo.num, lo.den), got_b(hi.num, hi.den);
        got_a.canonicalize();
        got_b.canonicalize();
        CHECK(got_a == qa);
        CHECK(got_b == qb);
    }
}

TEST_CASE("ln_abundancy_step is positive, decreasing, and exact") {
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 1009ul}) {
        double prev = 1e9;
        for (ExpT e = 0; e <= 40; ++e) {
            double d = ln_abundancy_step_d(p, e);
            CHECK(d > 0.0);
            CHECK(d < prev);
            prev = d;

            // Exact value: ln(sigma(p^{e+1}) p^e / (sigma(p^e) p^{e+1})).
            mpz_class pe, pe1;
            mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
            mpz_ui_pow_ui(pe1.get_mpz_t(), p, e + 1);
            mpq_class ratio(sigma_prime_power(p, e + 1) * pe,
                            sigma_prime_power(p, e) * pe1);
            ratio.canonicalize();
            Interval exact = Interval::log_q(ratio, 512);
            double mid = exact.mid();
            CHECK(std::abs(d - mid) <= 1e-12 * mid + 1e-300);

            Interval got = ln_abundancy_step(p, e, 256);
            CHECK(!got.disjoint(exact));
            CHECK(got.width() < mid * 1e-60 + 1e-320);
        }
    }
}

TEST_CASE("ln_abundancy_d approximates the exact log closely") {
    PrimeTable pt;
    std::mt19937_64 rng(20240902);
    for (int t = 0; t < 40; ++t) {
        std::vector<ExpT> e = random_nonincreasing(rng, 50, 20);
        Signature s = e.empty() ? Signature{} : Signature::from_exponents(e);
        double got = ln_abundancy_d(s, pt);
        mpq_class q = exact_abundancy(s, pt);
        double want = Interval::log_q(q, 256).mid();
        CHECK(std::abs(got - want) < 1e-10);
    }
    CHECK(ln_abundancy_d(Signature{}, pt) == 0.0);
}

TEST_CASE("log_magnitude brackets ln n") {
    PrimeTable pt;
    Signature s840 = Signature::from_exponents({3, 1, 1, 1});
    LogMagnitude m = log_magnitude(s840, pt);
    CHECK(std::abs(m.value() - std::log(840.0)) < 1e-12);
    CHECK(std::abs(m.log10() - 2.92427928606) < 1e-9);
    CHECK(m.error() < 1e-30);

    std::mt19937_64 rng(20240903);
    for (int t = 0; t < 40; ++t) {
        std::vector<ExpT> e = random_nonincreasing(rng, 10, 8);
        if (e.empty()) continue;
        Signature s = Signature::from_exponents(e);
        mpz_class v = materialize(s, pt);
        LogMagnitude lm = log_magnitude(s, pt);
        Interval exact = Interval::log_z(v, 512);
        CHECK(!lm.ln.disjoint(exact));
        CHECK(lm.error() < 1e-30);
    }
}

TEST_CASE("two-decimal magnitude formatting") {
    PrimeTable pt;
    auto fmt = [&](const std::vector<ExpT>& e) {
        Signature s = e.empty() ? Signature{} : Signature::from_exponents(e);
        return format_log10_2d(log_magnitude(s, pt));
    };
    CHECK(fmt({}) == "0");                  // log10 1 = 0
    CHECK(fmt({1}) == "0.3");               // log10 2 = 0.301...
    CHECK(fmt({2}) == "0.6");               // log10 4 = 0.602...
    CHECK(fmt({3, 1, 1}) == "2.08");        // log10 120 = 2.0791...
    CHECK(fmt({3, 1, 1, 1}) == "2.92");     // log10 840 = 2.9242...
    CHECK(fmt({10}) == "3.01");             // log10 1024 = 3.0102...
    CHECK(fmt({1, 1, 1, 1}) == "2.32");     // log10 210 = 2.3222...
    CHECK(fmt({2, 2, 1}) == "2.26");        // log10 180 = 2.2552...
    CHECK(fmt({39}) == "11.74");            // log10 2^39 = 11.7402...
}

TEST_CASE("twelve-significant-digit formatting") {
    CHECK(format_log10_12sig(0.0) == "0");
    CHECK(format_log10_12sig(2.9242792860618816) == "2.92427928606");
    CHECK(format_log10_12sig(0.3010299956639812) == "0.301029995664");
    CHECK(format_log10_12sig(2448.7808383663) == "2448.78083837");
}
