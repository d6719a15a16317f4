#include "sanum/enumerate.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "sanum/errors.hpp"

namespace sanum {

int compare_to_pow10(const Signature& sig, double b, PrimeTable& pt) {
    Interval ln = ln_interval(sig, pt);
    Interval bound(pt.prec());
    mpfr_set_d(bound.lo.get(), b, MPFR_RNDD);
    mpfr_set_d(bound.hi.get(), b, MPFR_RNDU);
    bound = Interval::mul_nonneg(bound, Interval::log_z(mpz_class(10), pt.prec()));
    if (mpfr_cmp(ln.hi.get(), bound.lo.get()) <= 0) {
        // could still be exactly equal; only n = 1 vs b = 0 can tie
        if (mpfr_cmp(ln.lo.get(), bound.hi.get()) >= 0) return 0;
        return -1;
    }
    if (mpfr_cmp(ln.lo.get(), bound.hi.get()) > 0) return 1;
    throw NonConvergence("magnitude indistinguishable from 10^" + std::to_string(b));
}

namespace {

struct Node {
    double ln;
    double ln_ab;
    float err;
    const Signature* sig;
};

struct NodeGreater {
    PrimeTable* pt;
    // std::priority_queue keeps the max on top; "greater" magnitude sorts
    // later, so this yields pops in increasing integer order.
    bool operator()(const Node& a, const Node& b) const {
        double d = a.ln - b.ln;
        double band = static_cast<double>(a.err) + static_cast<double>(b.err);
        if (d > band) return true;
        if (d < -band) return false;
        return compare_magnitude(*a.sig, *b.sig, *pt) == std::strong_ordering::greater;
    }
};

}  // namespace

EnumerateStats enumerate_records(const EnumerateConfig& cfg, PrimeTable& pt,
                                 const std::function<void(const SaRecord&)>& emit) {
    if (cfg.max_log10.has_value() == cfg.max_count.has_value())
        throw std::invalid_argument("exactly one of max_log10/max_count required");
    if (cfg.max_log10 && *cfg.max_log10 < 0)
        throw std::invalid_argument("max_log10 must be nonnegative");
    const double bound_nat = cfg.max_log10 ? *cfg.max_log10 * M_LN10 : 0;

    EnumerateStats st;
    std::unordered_set<Signature, SigHash> seen;  // frontier only: owns in-heap signatures
    seen.reserve(1 << 16);
    std::priority_queue<Node, std::vector<Node>, NodeGreater> heap(NodeGreater{&pt});

    {
        auto [it, fresh] = seen.insert(Signature{});
        (void)fresh;
        heap.push(Node{0.0, 0.0, 0.0f, &*it});
        ++st.pushes;
    }

    // Running record state; every emitted record is confirmed by exact
    // rational comparison against the previous one.
    bool have_best = false;
    Signature best_sig;
    double best_ln_ab = -1;
    std::uint64_t next_index = 1;

    // Pop-order strictness state.
    bool have_prev = false;
    Signature prev_sig;
    double prev_ln = 0;
    float prev_err = 0;

    while (!heap.empty()) {
        Node top = heap.top();
        heap.pop();
        Signature sig = *top.sig;  // copy out before the frontier erase
        seen.erase(sig);

        if (++st.pops > cfg.pop_ceiling)
            throw ResourceBudgetExceeded("pop ceiling " + std::to_string(cfg.pop_ceiling) +
                                         " reached");

        if (cfg.verify_order) {
            if (have_prev) {
                bool increasing;
                double d = top.ln - prev_ln;
                double band = static_cast<double>(top.err) + static_cast<double>(prev_err);
                if (d > band)
                    increasing = true;
                else if (d < -band)
                    increasing = false;
                else
                    increasing =
                        compare_magnitude(prev_sig, sig, pt) == std::strong_ordering::less;
                if (!increasing) throw std::logic_error("pop stream not strictly increasing");
            }
            prev_sig = sig;
            have_prev = true;
        }
        prev_ln = top.ln;
        prev_err = top.err;

        // Bound check: pops arrive in increasing order, so the first value
        // beyond the bound ends the run.
        if (cfg.max_log10) {
            double d = top.ln - bound_nat;
            double band = top.err + 1e-9;
            if (d > band) break;
            if (d > -band && compare_to_pow10(sig, *cfg.max_log10, pt) > 0) break;
        }

        // Record check: cheap screen on the accumulated double, exact
        // confirmation for anything close or better.
        bool record;
        if (!have_best) {
            record = true;  // n = 1
        } else if (top.ln_ab - best_ln_ab > 1e-12) {
            record = true;
        } else if (top.ln_ab - best_ln_ab < -1e-12) {
            record = false;
        } else {
            record = compare_abundancy(abundancy(sig, pt), abundancy(best_sig, pt)) ==
                     std::strong_ordering::greater;
        }
        if (record && have_best) {
            // confirm exactly; the strict record inequality is the contract
            if (compare_abundancy(abundancy(sig, pt), abundancy(best_sig, pt)) !=
                std::strong_ordering::greater)
                record = false;
        }
        if (record) {
            LogMagnitude lm = log_magnitude(sig, pt);
            SaRecord rec;
            rec.index = next_index++;
            rec.sig = sig;
            rec.ln_value = lm.value();
            rec.ln_error = lm.error() + 1e-15;
            rec.ln_ab = top.ln_ab;
            emit(rec);
            ++st.records;
            best_sig = sig;
            best_ln_ab = top.ln_ab;
            have_best = true;
            if (cfg.max_count && st.records >= *cfg.max_count) break;
        }

        // Children: every canonical single-prime multiplication.
        for (std::uint32_t i : successor_candidates(sig)) {
            StepResult child = multiply_by_prime(sig, i);
            // successor_candidates exactly characterizes canonical steps
            if (!child.ok()) throw std::logic_error("successor candidate not canonical");
            if (seen.find(child.sig) != seen.end()) continue;
            double lnp = pt.ln_prime_d(i);
            double ln_child = top.ln + lnp;
            float err_child =
                top.err + static_cast<float>(3e-16 * (std::abs(ln_child) + 1) + 2e-16);
            double ab_child = top.ln_ab + ln_abundancy_step_d(pt.prime(i), sig.exponent(i));
            auto [it, fresh] = seen.insert(std::move(child.sig));
            if (fresh) {
                heap.push(Node{ln_child, ab_child, err_child, &*it});
                ++st.pushes;
                st.peak_frontier = std::max<std::uint64_t>(st.peak_frontier, seen.size());
                if (seen.size() > cfg.heap_ceiling)
                    throw ResourceBudgetExceeded("heap ceiling " +
                                                 std::to_string(cfg.heap_ceiling) +
                                                 " reached");
            }
        }
    }
    return st;
}

}  // namespace sanum
