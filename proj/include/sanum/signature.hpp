#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "sanum/bigfloat.hpp"
#include "sanum/prime_table.hpp"

namespace sanum {

using ExpT = std::uint32_t;

// One run of equal exponents: positions (previous run's hi, hi] all carry
// `value`. Runs are kept with values strictly decreasing and his strictly
// increasing, so the exponent vector is nonincreasing by construction.
struct Run {
    ExpT value;
    std::uint32_t hi;
    friend bool operator==(const Run&, const Run&) = default;
};

// Exponent vector e_1 >= e_2 >= ... >= e_r >= 1 over the consecutive primes
// 2, 3, 5, ...; the represented integer is prod p_i^{e_i}, materialized only
// on demand. The empty signature is the number 1. Stored run-length encoded
// so that signatures with tens of thousands of prime positions stay small
// and neighbor operations stay O(#runs).
class Signature {
  public:
    Signature() = default;

    // Validating constructors; throw NonCanonicalSignature on bad input.
    static Signature from_exponents(const std::vector<ExpT>& e);
    static Signature from_runs(std::vector<Run> runs);

    const std::vector<Run>& runs() const { return runs_; }
    bool empty() const { return runs_.empty(); }
    // Number of prime positions r.
    std::uint32_t r() const { return runs_.empty() ? 0 : runs_.back().hi; }
    // Exponent of p_1 (0 for the empty signature).
    ExpT e1() const { return runs_.empty() ? 0 : runs_.front().value; }
    // e_i for any i >= 1 (0 beyond r).
    ExpT exponent(std::uint32_t i) const;
    std::vector<ExpT> exponents() const;
    // Sum of exponents (number of prime factors with multiplicity).
    std::uint64_t omega() const;

    friend bool operator==(const Signature&, const Signature&) = default;

  private:
    std::vector<Run> runs_;
    friend struct SigOps;
};

struct SigHash {
    std::size_t operator()(const Signature& s) const noexcept;
};

enum class StepStatus { ok, non_canonical, not_divisible, index_out_of_range };

struct StepResult {
    StepStatus status;
    Signature sig;  // meaningful only when status == ok
    bool ok() const { return status == StepStatus::ok; }
};

// Multiply by p_i (1 <= i <= r+1). non_canonical when the increment would
// break nonincreasing order — such a product cannot be superabundant;
// index_out_of_range when i == 0 or i > r+1.
StepResult multiply_by_prime(const Signature& s, std::uint32_t i);

// Divide by p_i. not_divisible when i > r (exponent 0); non_canonical when
// the decrement breaks nonincreasing order; index_out_of_range when i == 0.
StepResult divide_by_prime(const Signature& s, std::uint32_t i);

// Exactly the positions where multiply_by_prime succeeds: {1}, every i with
// e_{i-1} > e_i, and r+1. Sorted ascending.
std::vector<std::uint32_t> successor_candidates(const Signature& s);

// Exactly the positions where divide_by_prime succeeds: every i with
// e_i > e_{i+1} (e_{r+1} = 0). Sorted ascending.
std::vector<std::uint32_t> predecessor_candidates(const Signature& s);

inline std::uint64_t omega_total(const Signature& s) { return s.omega(); }

// prod p_i^{e_i} as an exact integer.
mpz_class materialize(const Signature& s, PrimeTable& pt);

// Brackets ln of the represented integer. Computed per exponent level from
// the table's theta prefix sums, so the cost is O(#runs) regardless of r.
Interval ln_interval(const Signature& s, PrimeTable& pt);

// Exact order of the represented integers. Fast path compares bracketed ln
// values at the table's precision, escalating the precision up to kMaxPrec;
// the final fallback cancels the common part of the two exponent vectors and
// compares the exact integer products of what remains.
std::strong_ordering compare_magnitude(const Signature& a, const Signature& b,
                                       PrimeTable& pt);

}  // namespace sanum
