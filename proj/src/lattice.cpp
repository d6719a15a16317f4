#include "sanum/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "sanum/errors.hpp"
#include "sanum/scn.hpp"

namespace sanum {

namespace {

using Membership = std::unordered_map<Signature, std::uint64_t, SigHash>;

void require_contiguous(const std::vector<SaRecord>& sa) {
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa[i].index != i + 1) {
            throw GapInList("record at position " + std::to_string(i) +
                            " has index " + std::to_string(sa[i].index) +
                            ", expected " + std::to_string(i + 1));
        }
    }
}

Membership build_membership(const std::vector<SaRecord>& sa) {
    Membership m;
    m.reserve(sa.size() * 2);
    for (const SaRecord& rec : sa) m.emplace(rec.sig, rec.index);
    return m;
}

// Successor probe shared by the analyses: which canonical products are in
// the list, and whether every candidate stays within the horizon.
struct UpProbe {
    std::vector<std::uint32_t> in_list;        // prime indices
    std::vector<std::uint64_t> in_list_index;  // matching record indices
    bool decidable = true;
};

UpProbe probe_up(const Signature& sig, const Membership& m,
                 const Signature& top, PrimeTable& pt) {
    UpProbe up;
    for (std::uint32_t i : successor_candidates(sig)) {
        StepResult r = multiply_by_prime(sig, i);
        assert(r.ok());
        auto it = m.find(r.sig);
        if (it != m.end()) {
            up.in_list.push_back(i);
            up.in_list_index.push_back(it->second);
        } else if (compare_magnitude(r.sig, top, pt) == std::strong_ordering::greater) {
            // Absent but beyond the horizon: membership is open.
            up.decidable = false;
        }
    }
    return up;
}

std::vector<std::uint32_t> probe_down(const Signature& sig, const Membership& m) {
    std::vector<std::uint32_t> found;
    for (std::uint32_t i : predecessor_candidates(sig)) {
        StepResult r = divide_by_prime(sig, i);
        assert(r.ok());
        if (m.count(r.sig)) found.push_back(i);
    }
    return found;
}

}  // namespace

const char* lattice_kind_name(LatticeKind k) {
    switch (k) {
        case LatticeKind::regular: return "regular";
        case LatticeKind::source: return "source";
        case LatticeKind::sink: return "sink";
        case LatticeKind::source_and_sink: return "source-and-sink";
        case LatticeKind::indeterminate_up: return "indeterminate-up";
        case LatticeKind::indeterminate_down: return "indeterminate-down";
    }
    return "?";
}

std::vector<LatticeClass> classify(const std::vector<SaRecord>& sa, PrimeTable& pt) {
    require_contiguous(sa);
    std::vector<LatticeClass> out;
    if (sa.empty()) return out;
    Membership m = build_membership(sa);
    const Signature& top = sa.back().sig;
    out.reserve(sa.size());
    for (const SaRecord& rec : sa) {
        LatticeClass c;
        c.index = rec.index;
        c.sa_predecessors = probe_down(rec.sig, m);
        UpProbe up = probe_up(rec.sig, m, top, pt);
        c.sa_successors = std::move(up.in_list);
        c.up_decidable = up.decidable;
        const bool has_pred = !c.sa_predecessors.empty();
        const bool has_succ = !c.sa_successors.empty();
        if (!has_pred) {
            if (has_succ) {
                c.kind = LatticeKind::source;
            } else if (up.decidable) {
                c.kind = LatticeKind::source_and_sink;
            } else {
                c.kind = LatticeKind::source;  // source is certain either way
            }
        } else {
            if (has_succ) {
                c.kind = LatticeKind::regular;
            } else if (up.decidable) {
                c.kind = LatticeKind::sink;
            } else {
                c.kind = LatticeKind::indeterminate_up;
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

ClosureResult conjectural_closure(const std::vector<SaRecord>& sa, PrimeTable& pt) {
    require_contiguous(sa);
    ClosureResult res;
    if (sa.empty()) return res;
    Membership m = build_membership(sa);
    const Signature& top = sa.back().sig;
    std::vector<char> seen(sa.size(), 0);
    std::vector<std::uint64_t> stack{1};
    seen[0] = 1;
    while (!stack.empty()) {
        std::uint64_t idx = stack.back();
        stack.pop_back();
        UpProbe up = probe_up(sa[idx - 1].sig, m, top, pt);
        for (std::uint64_t nidx : up.in_list_index) {
            if (!seen[nidx - 1]) {
                seen[nidx - 1] = 1;
                stack.push_back(nidx);
            }
        }
    }
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (seen[i]) {
            res.reachable.push_back(i + 1);
        } else {
            res.missing.push_back(i + 1);
        }
    }
    if (!res.missing.empty()) res.first_missing = res.missing.front();
    return res;
}

ConnectivityReport connectivity(const std::vector<SaRecord>& sa, PrimeTable& pt) {
    require_contiguous(sa);
    ConnectivityReport rep;
    if (sa.empty()) return rep;
    Membership m = build_membership(sa);
    const Signature& top = sa.back().sig;

    // Union-find over record positions. Predecessor edges alone carry the
    // whole undirected edge set: the edge n —— np is found from np's side.
    std::vector<std::uint32_t> parent(sa.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::uint32_t(std::uint32_t)> find =
        [&](std::uint32_t x) -> std::uint32_t {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    for (const SaRecord& rec : sa) {
        for (std::uint32_t i : predecessor_candidates(rec.sig)) {
            StepResult r = divide_by_prime(rec.sig, i);
            assert(r.ok());
            auto it = m.find(r.sig);
            if (it != m.end()) {
                unite(static_cast<std::uint32_t>(rec.index - 1),
                      static_cast<std::uint32_t>(it->second - 1));
            }
        }
        UpProbe up = probe_up(rec.sig, m, top, pt);
        if (!up.decidable) rep.annotated.push_back(rec.index);
    }

    const std::uint32_t main_root = find(0);
    std::uint64_t components = 0;
    for (std::uint32_t i = 0; i < parent.size(); ++i) {
        if (find(i) == i) ++components;
        if (find(i) != main_root) rep.outside_main.push_back(i + 1);
    }
    rep.components = components;
    return rep;
}

std::vector<TableRow> counterexample_report(const std::vector<SaRecord>& sa,
                                            PrimeTable& pt) {
    std::vector<LatticeClass> classes = classify(sa, pt);
    std::vector<TableRow> rows;
    for (const LatticeClass& c : classes) {
        if (c.index == 1) continue;
        const bool is_source = c.kind == LatticeKind::source ||
                               c.kind == LatticeKind::source_and_sink;
        const bool is_sink = c.kind == LatticeKind::sink ||
                             c.kind == LatticeKind::source_and_sink;
        if (!is_source && !is_sink) continue;
        const SaRecord& rec = sa[c.index - 1];
        TableRow base;
        base.index = c.index;
        base.group = rec.sig.omega();
        base.log10_str = format_log10_2d(log_magnitude(rec.sig, pt));
        base.scn = scn_to_string(scn_encode(rec.sig));
        if (is_source) {
            TableRow r = base;
            r.type = "n/q";
            rows.push_back(std::move(r));
        }
        if (is_sink) {
            TableRow r = base;
            r.type = "np";
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

}  // namespace sanum
