#pragma once

#include <cstdint>
#include <deque>
#include <shared_mutex>
#include <vector>

#include "sanum/bigfloat.hpp"

namespace sanum {

// Growable table of primes (1-indexed: prime(1) = 2) with bracketed natural
// logs and Chebyshev-theta prefix sums. Readers may run concurrently with
// growth: entries are appended under an exclusive lock into deques (stable
// addresses), and a reader never observes a partially appended block.
class PrimeTable {
  public:
    explicit PrimeTable(mpfr_prec_t prec = kDefaultPrec);

    mpfr_prec_t prec() const { return prec_; }

    // Grow the table until it holds at least n primes.
    void ensure(std::size_t n);

    std::size_t size() const;

    // 1-based accessors; grow on demand.
    std::uint64_t prime(std::size_t i);
    const Interval& ln_prime(std::size_t i);
    double ln_prime_d(std::size_t i);

    // theta(k) brackets ln(p_1 * p_2 * ... * p_k); theta(0) = [0, 0].
    const Interval& theta(std::size_t k);

    // 1-based index of the exact prime value p, or 0 when p is not prime (or
    // beyond 2^63). Grows the table as needed.
    std::size_t index_of(std::uint64_t p);

  private:
    void grow_to(std::size_t n);  // callers hold no lock

    mutable std::shared_mutex mu_;
    mpfr_prec_t prec_;
    std::deque<std::uint64_t> primes_;
    std::deque<Interval> ln_;       // ln_[i-1] brackets ln prime(i)
    std::deque<double> ln_d_;       // midpoint of ln_[i-1]
    std::deque<Interval> theta_;    // theta_[k] brackets theta(k); theta_[0] = 0
    std::uint64_t sieved_to_ = 1;   // primes up to this bound are all present
    std::vector<std::uint64_t> base_primes_;  // primes used to sieve segments
};

}  // namespace sanum
