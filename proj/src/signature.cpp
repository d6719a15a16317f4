#include "sanum/signature.hpp"

#include <algorithm>

#include "sanum/errors.hpp"

namespace sanum {

// Internal constructor bypassing validation, for step functions whose output
// is canonical by construction.
struct SigOps {
    static Signature adopt(std::vector<Run> runs) {
        Signature s;
        s.runs_ = std::move(runs);
        return s;
    }
};

namespace {

std::size_t run_index_of(const std::vector<Run>& runs, std::uint32_t i) {
    // smallest j with runs[j].hi >= i; caller guarantees i <= r
    auto it = std::lower_bound(runs.begin(), runs.end(), i,
                               [](const Run& r, std::uint32_t v) { return r.hi < v; });
    return static_cast<std::size_t>(it - runs.begin());
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

Signature Signature::from_exponents(const std::vector<ExpT>& e) {
    std::vector<Run> runs;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            throw NonCanonicalSignature("exponent 0 at position " + std::to_string(i + 1));
        if (i > 0 && e[i] > e[i - 1])
            throw NonCanonicalSignature("exponents increase at position " +
                                        std::to_string(i + 1));
        if (!runs.empty() && runs.back().value == e[i])
            runs.back().hi = static_cast<std::uint32_t>(i + 1);
        else
            runs.push_back(Run{e[i], static_cast<std::uint32_t>(i + 1)});
    }
    Signature s;
    s.runs_ = std::move(runs);
    return s;
}

Signature Signature::from_runs(std::vector<Run> runs) {
    std::uint32_t prev_hi = 0;
    ExpT prev_val = 0;
    for (std::size_t j = 0; j < runs.size(); ++j) {
        if (runs[j].value == 0) throw NonCanonicalSignature("run with value 0");
        if (runs[j].hi <= prev_hi) throw NonCanonicalSignature("run his not increasing");
        if (j > 0 && runs[j].value >= prev_val)
            throw NonCanonicalSignature("run values not decreasing");
        prev_hi = runs[j].hi;
        prev_val = runs[j].value;
    }
    Signature s;
    s.runs_ = std::move(runs);
    return s;
}

ExpT Signature::exponent(std::uint32_t i) const {
    if (i == 0 || i > r()) return 0;
    return runs_[run_index_of(runs_, i)].value;
}

std::vector<ExpT> Signature::exponents() const {
    std::vector<ExpT> e;
    e.reserve(r());
    std::uint32_t pos = 1;
    for (const Run& run : runs_)
        for (; pos <= run.hi; ++pos) e.push_back(run.value);
    return e;
}

std::uint64_t Signature::omega() const {
    std::uint64_t total = 0;
    std::uint32_t lo = 1;
    for (const Run& run : runs_) {
        total += static_cast<std::uint64_t>(run.value) * (run.hi - lo + 1);
        lo = run.hi + 1;
    }
    return total;
}

std::size_t SigHash::operator()(const Signature& s) const noexcept {
    std::uint64_t h = 0x243f6a8885a308d3ull;
    for (const Run& run : s.runs()) {
        h = splitmix64(h ^ run.value);
        h = splitmix64(h ^ run.hi);
    }
    return static_cast<std::size_t>(h);
}

StepResult multiply_by_prime(const Signature& s, std::uint32_t i) {
    const std::uint32_t r = s.r();
    if (i == 0 || i > r + 1) return {StepStatus::index_out_of_range, {}};
    std::vector<Run> runs = s.runs();
    if (i == r + 1) {
        if (!runs.empty() && runs.back().value == 1)
            runs.back().hi = i;
        else
            runs.push_back(Run{1, i});
    } else {
        const std::size_t j = run_index_of(runs, i);
        const std::uint32_t lo = (j == 0) ? 1 : runs[j - 1].hi + 1;
        if (i != lo) return {StepStatus::non_canonical, {}};
        const ExpT v = runs[j].value;
        if (j > 0 && runs[j - 1].value == v + 1) {
            runs[j - 1].hi = i;  // absorbed by the previous run
            if (runs[j].hi == i) runs.erase(runs.begin() + static_cast<long>(j));
        } else if (runs[j].hi == i) {
            runs[j].value = v + 1;  // singleton bump
        } else {
            runs.insert(runs.begin() + static_cast<long>(j), Run{v + 1, i});
        }
    }
    return {StepStatus::ok, SigOps::adopt(std::move(runs))};
}

StepResult divide_by_prime(const Signature& s, std::uint32_t i) {
    const std::uint32_t r = s.r();
    if (i == 0) return {StepStatus::index_out_of_range, {}};
    if (i > r) return {StepStatus::not_divisible, {}};
    std::vector<Run> runs = s.runs();
    const std::size_t j = run_index_of(runs, i);
    if (i != runs[j].hi) return {StepStatus::non_canonical, {}};
    const std::uint32_t lo = (j == 0) ? 1 : runs[j - 1].hi + 1;
    const ExpT v = runs[j].value;
    const bool singleton = (lo == i);
    const bool next_absorbs = (j + 1 < runs.size()) && runs[j + 1].value == v - 1;
    if (v == 1 || next_absorbs) {
        // Position i either disappears (v == 1 forces j to be the last run)
        // or migrates into the following run whose value is v - 1.
        if (singleton)
            runs.erase(runs.begin() + static_cast<long>(j));
        else
            runs[j].hi = i - 1;
    } else if (singleton) {
        runs[j].value = v - 1;
    } else {
        runs[j].hi = i - 1;
        runs.insert(runs.begin() + static_cast<long>(j) + 1, Run{v - 1, i});
    }
    return {StepStatus::ok, SigOps::adopt(std::move(runs))};
}

std::vector<std::uint32_t> successor_candidates(const Signature& s) {
    std::vector<std::uint32_t> out;
    const auto& runs = s.runs();
    out.reserve(runs.size() + 2);
    out.push_back(1);
    for (std::size_t j = 1; j < runs.size(); ++j) out.push_back(runs[j - 1].hi + 1);
    if (!runs.empty()) out.push_back(s.r() + 1);
    return out;
}

std::vector<std::uint32_t> predecessor_candidates(const Signature& s) {
    std::vector<std::uint32_t> out;
    out.reserve(s.runs().size());
    for (const Run& run : s.runs()) out.push_back(run.hi);
    return out;
}

mpz_class materialize(const Signature& s, PrimeTable& pt) {
    mpz_class n = 1, t;
    std::uint32_t lo = 1;
    for (const Run& run : s.runs()) {
        for (std::uint32_t i = lo; i <= run.hi; ++i) {
            mpz_class p(static_cast<unsigned long>(pt.prime(i)));
            mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), run.value);
            n *= t;
        }
        lo = run.hi + 1;
    }
    return n;
}

Interval ln_interval(const Signature& s, PrimeTable& pt) {
    // ln n = sum over runs of (value - next value) * theta(hi): positions
    // 1..hi all have exponent >= value, so each exponent level in
    // (next value, value] contributes the full primorial log theta(hi).
    Interval ln(pt.prec());
    const auto& runs = s.runs();
    for (std::size_t j = 0; j < runs.size(); ++j) {
        ExpT vnext = (j + 1 < runs.size()) ? runs[j + 1].value : 0;
        ln.add_mul_ui(pt.theta(runs[j].hi), runs[j].value - vnext);
    }
    return ln;
}

std::strong_ordering compare_magnitude(const Signature& a, const Signature& b,
                                       PrimeTable& pt) {
    if (a == b) return std::strong_ordering::equal;
    Interval la = ln_interval(a, pt);
    Interval lb = ln_interval(b, pt);
    if (la.strictly_less(lb)) return std::strong_ordering::less;
    if (lb.strictly_less(la)) return std::strong_ordering::greater;

    // Bracketed logs overlap: cancel the common part of the exponent vectors
    // and compare the exact integer products of what remains.
    const std::uint32_t r = std::max(a.r(), b.r());
    mpz_class prod_a = 1, prod_b = 1, t, p;
    for (std::uint32_t i = 1; i <= r; ++i) {
        ExpT ea = a.exponent(i), eb = b.exponent(i);
        if (ea == eb) continue;
        p = static_cast<unsigned long>(pt.prime(i));
        if (ea > eb) {
            mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), ea - eb);
            prod_a *= t;
        } else {
            mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), eb - ea);
            prod_b *= t;
        }
    }
    int c = cmp(prod_a, prod_b);
    // Distinct signatures denote distinct integers (unique factorization),
    // so the cancelled products cannot tie.
    if (c == 0) return std::strong_ordering::equal;  // unreachable for valid input
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace sanum
