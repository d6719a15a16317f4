#pragma once

#include <cstdint>
#include <vector>

#include "sanum/signature.hpp"

namespace sanum {

struct SieveRecord {
    std::uint64_t n;
    std::uint64_t sigma;
};

// Independent ground truth at small scale: sigma by a segmented divisor-sum
// sieve, records of sigma(n)/n kept by exact 128-bit cross multiplication.
// N up to 1e8.
std::vector<SieveRecord> sieve_records(std::uint64_t N);

// Exponent vector of n by trial division; throws NonCanonicalSignature when
// the factorization is not nonincreasing over consecutive primes.
Signature factor_signature(std::uint64_t n);

}  // namespace sanum
