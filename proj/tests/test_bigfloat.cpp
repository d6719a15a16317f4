#include <doctest.h>

#include <cmath>
#include <random>

#include "sanum/bigfloat.hpp"

using namespace sanum;

TEST_CASE("interval log of an integer brackets the true value tightly") {
    Interval two = Interval::log_z(mpz_class(2));
    CHECK(two.width() >= 0.0);
    CHECK(two.width() < 1e-60);
    CHECK(two.mid() == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    Interval big = Interval::log_z(mpz_class("123456789123456789"));
    CHECK(big.mid() == doctest::Approx(std::log(1.23456789123456789e17)).epsilon(1e-13));
    CHECK(big.width() < 1e-55);
}

TEST_CASE("interval log of a rational brackets the true value") {
    Interval q = Interval::log_q(mpq_class(3, 2));
    CHECK(q.mid() == doctest::Approx(std::log(1.5)).epsilon(1e-15));
    CHECK(q.width() < 1e-60);
}

TEST_CASE("sum of logs contains the log of the product for random integers") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<unsigned long> d(2, 1u << 30);
    for (int i = 0; i < 200; ++i) {
        mpz_class a(d(rng)), b(d(rng));
        Interval s = Interval::log_z(a) + Interval::log_z(b);
        Interval p = Interval::log_z(mpz_class(a * b));
        // The two brackets must overlap (both contain the same real number).
        CHECK(!s.disjoint(p));
        CHECK(mpfr_cmp(s.lo.get(), p.hi.get()) <= 0);
        CHECK(mpfr_cmp(p.lo.get(), s.hi.get()) <= 0);
    }
}

TEST_CASE("log1p of a tiny reciprocal stays positive and relatively tight") {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), 10, 40);  // ln(1 + 1e-40)
    Interval t = Interval::log1p_inv_z(z);
    CHECK(mpfr_sgn(t.lo.get()) > 0);
    double mid = t.mid();
    CHECK(mid == doctest::Approx(1e-40).epsilon(1e-10));
    CHECK(t.width() < 1e-50);  // far tighter than the value itself
}

TEST_CASE("subtraction flips and widens correctly") {
    Interval a = Interval::log_z(mpz_class(6));
    Interval b = Interval::log_z(mpz_class(2));
    Interval d = a - b;
    CHECK(d.mid() == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    Interval three = Interval::log_z(mpz_class(3));
    CHECK(!d.disjoint(three));
}

TEST_CASE("add_mul_ui multiplies the increment exactly k times") {
    Interval acc = Interval::zero();
    Interval ln2 = Interval::log_z(mpz_class(2));
    acc.add_mul_ui(ln2, 10);
    Interval direct = Interval::log_z(mpz_class(1024));
    CHECK(!acc.disjoint(direct));
    CHECK(acc.mid() == doctest::Approx(std::log(1024.0)).epsilon(1e-14));
}

TEST_CASE("add_centered folds a double-tracked delta with its error bound") {
    Interval acc = Interval::log_z(mpz_class(7));
    acc.add_centered(0.5, 1e-12);
    CHECK(acc.mid() == doctest::Approx(std::log(7.0) + 0.5).epsilon(1e-12));
    CHECK(acc.width() >= 2e-12);  // the error bound widened the bracket
    CHECK(acc.width() < 1e-11);
}

TEST_CASE("mul_nonneg and div_pos bracket products and quotients") {
    Interval a = Interval::log_z(mpz_class(20));  // ~3.0
    Interval b = Interval::log_z(mpz_class(3));   // ~1.1
    Interval p = Interval::mul_nonneg(a, b);
    CHECK(p.mid() == doctest::Approx(std::log(20.0) * std::log(3.0)).epsilon(1e-13));
    Interval q = Interval::div_pos(a, b);
    CHECK(q.mid() == doctest::Approx(std::log(20.0) / std::log(3.0)).epsilon(1e-13));
}

TEST_CASE("strict order predicates respect the bracket semantics") {
    Interval a = Interval::log_z(mpz_class(2));
    Interval b = Interval::log_z(mpz_class(3));
    CHECK(a.strictly_less(b));
    CHECK(b.strictly_greater(a));
    CHECK(a.disjoint(b));
    Interval c = Interval::log_z(mpz_class(2));
    CHECK(!a.disjoint(c));
    CHECK(!a.strictly_less(c));
    Interval z = Interval::zero();
    CHECK(z.contains_zero());
    CHECK(!a.contains_zero());
}

TEST_CASE("of_ui and zero construct degenerate brackets") {
    Interval five = Interval::of_ui(5);
    CHECK(five.mid() == 5.0);
    CHECK(five.width() == 0.0);
    CHECK(Interval::zero().mid() == 0.0);
}
