#include "sanum/sieve_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "sanum/errors.hpp"

namespace sanum {

std::vector<SieveRecord> sieve_records(std::uint64_t N) {
    if (N > 100'000'000ull) throw std::invalid_argument("sieve bound exceeds 1e8");
    std::vector<SieveRecord> records;
    if (N == 0) return records;

    // primes up to sqrt(N)
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(N))) + 1;
    std::vector<bool> comp(root + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p <= root; ++p) {
        if (comp[p]) continue;
        primes.push_back(p);
        for (std::uint64_t m = p * p; m <= root; m += p) comp[m] = true;
    }

    std::uint64_t best_sigma = 0, best_n = 1;  // sigma(m)/m record so far; start below 1/1
    const std::uint64_t seg = 1 << 20;
    std::vector<std::uint64_t> rem(seg), sig(seg);
    for (std::uint64_t lo = 1; lo <= N; lo += seg) {
        std::uint64_t hi = std::min(lo + seg - 1, N);
        std::uint64_t len = hi - lo + 1;
        for (std::uint64_t j = 0; j < len; ++j) {
            rem[j] = lo + j;
            sig[j] = 1;
        }
        for (std::uint64_t p : primes) {
            if (p * p > hi) break;
            for (std::uint64_t m = ((lo + p - 1) / p) * p; m <= hi; m += p) {
                std::uint64_t j = m - lo;
                std::uint64_t pk = 1, sum = 1;
                while (rem[j] % p == 0) {
                    rem[j] /= p;
                    pk *= p;
                    sum += pk;
                }
                sig[j] *= sum;
            }
        }
        for (std::uint64_t j = 0; j < len; ++j) {
            std::uint64_t n = lo + j;
            std::uint64_t s = sig[j] * (rem[j] > 1 ? rem[j] + 1 : 1);
            // record iff s/n > best_sigma/best_n, exactly
            if (static_cast<unsigned __int128>(s) * best_n >
                static_cast<unsigned __int128>(best_sigma) * n) {
                best_sigma = s;
                best_n = n;
                records.push_back(SieveRecord{n, s});
            }
        }
    }
    return records;
}

Signature factor_signature(std::uint64_t n) {
    std::vector<ExpT> exps;
    std::uint64_t expected_prime = 2;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        if (p != expected_prime)
            throw NonCanonicalSignature("prime " + std::to_string(expected_prime) +
                                        " missing in " + std::to_string(n));
        ExpT e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        exps.push_back(e);
        // next expected prime
        do { ++expected_prime; } while ([&] {
            for (std::uint64_t q = 2; q * q <= expected_prime; ++q)
                if (expected_prime % q == 0) return true;
            return false;
        }());
    }
    if (m > 1) {
        if (m != expected_prime)
            throw NonCanonicalSignature("prime factorization of " + std::to_string(n) +
                                        " skips " + std::to_string(expected_prime));
        exps.push_back(1);
    }
    return Signature::from_exponents(exps);  // rejects increasing exponents
}

}  // namespace sanum
