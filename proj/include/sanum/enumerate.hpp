#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "sanum/abundancy.hpp"
#include "sanum/prime_table.hpp"
#include "sanum/signature.hpp"

namespace sanum {

// Provably complete small-scale engine: pops every nonincreasing-exponent
// number in strictly increasing order from a min-heap and emits the
// abundancy record setters. Completeness over nonincreasing-exponent
// numbers suffices, since every superabundant number has nonincreasing
// exponents.
struct EnumerateConfig {
    std::optional<double> max_log10;        // emit records with n <= 10^max_log10
    std::optional<std::uint64_t> max_count; // or stop after this many records
    std::uint64_t pop_ceiling = 400'000'000;
    std::uint64_t heap_ceiling = 20'000'000;
    bool verify_order = false;  // exact strictness check of the pop stream
};

struct EnumerateStats {
    std::uint64_t pops = 0;
    std::uint64_t pushes = 0;
    std::uint64_t peak_frontier = 0;
    std::uint64_t records = 0;
};

// Exactly one of max_log10 / max_count must be set. Throws
// ResourceBudgetExceeded when a ceiling is hit before the limit.
EnumerateStats enumerate_records(const EnumerateConfig& cfg, PrimeTable& pt,
                                 const std::function<void(const SaRecord&)>& emit);

// -1: n < 10^b certainly; 0: n == 10^b (only n = 1, b = 0 in practice);
// +1: n > 10^b certainly. Throws NonConvergence if the bracketed compare
// cannot decide (would require agreement to hundreds of digits).
int compare_to_pow10(const Signature& sig, double b, PrimeTable& pt);

}  // namespace sanum
