#include <doctest.h>

#include <cstdint>
#include <vector>

#include "sanum/errors.hpp"
#include "sanum/prime_table.hpp"
#include "sanum/sieve_oracle.hpp"
#include "sanum/signature.hpp"

using namespace sanum;

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Literal divisor-sum, one n at a time.
u64 sigma_one(u64 n) {
    u64 s = 0;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        s += d;
        if (n / d != d) s += n / d;
    }
    return s;
}

// Records of sigma(n)/n computed directly from per-n divisor sums.
std::vector<SieveRecord> brute_records(u64 N) {
    std::vector<SieveRecord> out;
    for (u64 n = 1; n <= N; ++n) {
        u64 s = sigma_one(n);
        if (out.empty() ||
            u128(s) * out.back().n > u128(out.back().sigma) * n)
            out.push_back(SieveRecord{n, s});
    }
    return out;
}

bool same(const std::vector<SieveRecord>& a, const std::vector<SieveRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].n != b[i].n || a[i].sigma != b[i].sigma) return false;
    return true;
}

}  // namespace

TEST_CASE("sieve records match per-n divisor sums at small scale") {
    for (u64 N : {1ull, 2ull, 5ull, 100ull, 1000ull, 20000ull})
        CHECK(same(sieve_records(N), brute_records(N)));
}

TEST_CASE("the first records are the known ones") {
    std::vector<SieveRecord> want = {
        {1, 1},   {2, 3},    {4, 7},    {6, 12},   {12, 28},
        {24, 60}, {36, 91},  {48, 124}, {60, 168}, {120, 360},
    };
    CHECK(same(sieve_records(120), want));
    CHECK(same(sieve_records(179), want));  // next record is 180

    std::vector<SieveRecord> got = sieve_records(1000);
    REQUIRE(got.size() == 15);
    CHECK(got[10].n == 180);
    CHECK(got[11].n == 240);
    CHECK(got[12].n == 360);
    CHECK(got[13].n == 720);
    CHECK(got[14].n == 840);
}

TEST_CASE("segment boundaries do not lose or duplicate records") {
    // Exercise N just below, at, and above power-of-two boundaries that a
    // segmented sieve is likely to use internally.
    for (u64 N : {65535ull, 65536ull, 65537ull, 70000ull, 131073ull})
        CHECK(same(sieve_records(N), brute_records(N)));
}

TEST_CASE("record ratios strictly increase") {
    std::vector<SieveRecord> recs = sieve_records(2'000'000);
    REQUIRE(recs.size() > 30);
    for (std::size_t i = 1; i < recs.size(); ++i) {
        CHECK(recs[i].n > recs[i - 1].n);
        CHECK(u128(recs[i].sigma) * recs[i - 1].n >
              u128(recs[i - 1].sigma) * recs[i].n);
    }
}

TEST_CASE("every record factors into a nonincreasing consecutive-prime signature") {
    PrimeTable pt;
    for (const SieveRecord& rec : sieve_records(1'000'000)) {
        Signature s = factor_signature(rec.n);
        CHECK(materialize(s, pt) == mpz_class(std::to_string(rec.n)));
        std::vector<ExpT> e = s.exponents();
        for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] <= e[i - 1]);
    }
}

TEST_CASE("factor_signature handles canonical and non-canonical inputs") {
    CHECK(factor_signature(1).empty());
    CHECK(factor_signature(2).exponents() == std::vector<ExpT>{1});
    CHECK(factor_signature(4).exponents() == std::vector<ExpT>{2});
    CHECK(factor_signature(6).exponents() == std::vector<ExpT>{1, 1});
    CHECK(factor_signature(12).exponents() == std::vector<ExpT>{2, 1});
    CHECK(factor_signature(720).exponents() == std::vector<ExpT>{4, 2, 1});
    CHECK(factor_signature(840).exponents() == std::vector<ExpT>{3, 1, 1, 1});
    CHECK(factor_signature(2162160).exponents() ==
          std::vector<ExpT>{4, 3, 1, 1, 1, 1});

    // Not products of consecutive primes from 2, or exponents increase.
    CHECK_THROWS_AS(factor_signature(3), NonCanonicalSignature);
    CHECK_THROWS_AS(factor_signature(5), NonCanonicalSignature);
    CHECK_THROWS_AS(factor_signature(9), NonCanonicalSignature);
    CHECK_THROWS_AS(factor_signature(10), NonCanonicalSignature);
    CHECK_THROWS_AS(factor_signature(15), NonCanonicalSignature);
    CHECK_THROWS_AS(factor_signature(18), NonCanonicalSignature);
    CHECK_THROWS_AS(factor_signature(40), NonCanonicalSignature);
    CHECK_THROWS_AS(factor_signature(100), NonCanonicalSignature);
}
