#include "sanum/prime_table.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace sanum {

namespace {

// Upper bound for the n-th prime (Rosser-Schoenfeld style; valid for n >= 6,
// padded below that).
std::uint64_t nth_prime_bound(std::size_t n) {
    if (n < 6) return 16;
    double nd = static_cast<double>(n);
    double b = nd * (std::log(nd) + std::log(std::log(nd)));
    return static_cast<std::uint64_t>(b * 1.05) + 16;
}

}  // namespace

PrimeTable::PrimeTable(mpfr_prec_t prec) : prec_(prec) {
    theta_.emplace_back(prec_);  // theta(0) = [0, 0]
    ensure(64);
}

void PrimeTable::ensure(std::size_t n) {
    {
        std::shared_lock lk(mu_);
        if (primes_.size() >= n) return;
    }
    grow_to(n);
}

void PrimeTable::grow_to(std::size_t n) {
    std::unique_lock lk(mu_);
    while (primes_.size() < n) {
        // Sieve the next segment (lo, hi].
        std::uint64_t lo = sieved_to_;
        std::uint64_t target = std::max(nth_prime_bound(n), lo + 1);
        std::uint64_t hi = std::min<std::uint64_t>(lo + (1ull << 21), target);

        // Base primes up to sqrt(hi) by plain sieve (tiny).
        std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
        if (base_primes_.empty() || base_primes_.back() < root) {
            base_primes_.clear();
            std::vector<bool> comp(root + 1, false);
            for (std::uint64_t p = 2; p <= root; ++p) {
                if (comp[p]) continue;
                base_primes_.push_back(p);
                for (std::uint64_t m = p * p; m <= root; m += p) comp[m] = true;
            }
        }

        std::vector<bool> comp(hi - lo, false);  // comp[j] covers lo + 1 + j
        for (std::uint64_t p : base_primes_) {
            if (p * p > hi) break;
            std::uint64_t first = std::max(p * p, ((lo / p) + 1) * p);
            for (std::uint64_t m = first; m <= hi; m += p)
                if (m > lo) comp[m - lo - 1] = true;
        }
        for (std::uint64_t v = lo + 1; v <= hi; ++v) {
            if (comp[v - lo - 1]) continue;
            if (v < 2) continue;
            primes_.push_back(v);
            Interval lp = Interval::log_z(mpz_class(static_cast<unsigned long>(v)), prec_);
            Interval th = theta_.back();
            th += lp;
            ln_d_.push_back(lp.mid());
            ln_.push_back(std::move(lp));
            theta_.push_back(std::move(th));
        }
        sieved_to_ = hi;
    }
}

std::size_t PrimeTable::size() const {
    std::shared_lock lk(mu_);
    return primes_.size();
}

std::uint64_t PrimeTable::prime(std::size_t i) {
    if (i == 0) throw std::out_of_range("prime index is 1-based");
    ensure(i);
    std::shared_lock lk(mu_);
    return primes_[i - 1];
}

const Interval& PrimeTable::ln_prime(std::size_t i) {
    if (i == 0) throw std::out_of_range("prime index is 1-based");
    ensure(i);
    std::shared_lock lk(mu_);
    return ln_[i - 1];
}

double PrimeTable::ln_prime_d(std::size_t i) {
    if (i == 0) throw std::out_of_range("prime index is 1-based");
    ensure(i);
    std::shared_lock lk(mu_);
    return ln_d_[i - 1];
}

const Interval& PrimeTable::theta(std::size_t k) {
    if (k > 0) ensure(k);
    std::shared_lock lk(mu_);
    return theta_[k];
}

std::size_t PrimeTable::index_of(std::uint64_t p) {
    if (p < 2) return 0;
    // Grow until the last prime reaches p.
    while (true) {
        {
            std::shared_lock lk(mu_);
            if (!primes_.empty() && primes_.back() >= p) {
                auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
                if (it != primes_.end() && *it == p)
                    return static_cast<std::size_t>(it - primes_.begin()) + 1;
                return 0;
            }
        }
        std::size_t cur = size();
        // Overshoot estimate: pi(p) < p / (ln p - 1.1) for p >= 60.
        double pd = static_cast<double>(p);
        std::size_t guess =
            p < 60 ? 20 : static_cast<std::size_t>(pd / (std::log(pd) - 1.1)) + 8;
        ensure(std::max(cur * 2, guess));
    }
}

}  // namespace sanum
