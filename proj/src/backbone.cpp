#include "sanum/backbone.hpp"

#include <algorithm>
#include <cassert>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "sanum/enumerate.hpp"
#include "sanum/errors.hpp"
#include "sanum/scn.hpp"

namespace sanum {

namespace {

constexpr double kAbTol = 1e-12;    // double screen for abundancy deltas
constexpr double kTieBand = 1e-11;  // double screen for magnitude order
constexpr double kEdgeBand = 1e-10; // double screen at slab boundaries

// ---------------------------------------------------------------- chain ----

// Quality of stepping the exponent of p from e to e+1: gained ln-abundancy
// per gained ln-magnitude.
double quality_d(std::uint64_t p, ExpT e, double lnp) {
    return ln_abundancy_step_d(p, e) / lnp;
}

Interval quality_iv(PrimeTable& pt, std::uint32_t pos, ExpT e, mpfr_prec_t prec) {
    return Interval::div_pos(ln_abundancy_step(pt.prime(pos), e, prec),
                             pt.ln_prime(pos));
}

}  // namespace

BackboneStep next_backbone_step(const Signature& cur, PrimeTable& pt) {
    std::vector<std::uint32_t> cands = successor_candidates(cur);
    pt.ensure(cur.r() + 2);

    BackboneStep best;
    best.quality = -1;
    std::vector<BackboneStep> near;  // leaders within double resolution
    for (std::uint32_t i : cands) {
        ExpT e = cur.exponent(i);
        double q = quality_d(pt.prime(i), e, pt.ln_prime_d(i));
        if (q > best.quality + kAbTol) {
            best = BackboneStep{i, e, q};
            near.clear();
            near.push_back(best);
        } else if (q > best.quality - kAbTol) {
            near.push_back(BackboneStep{i, e, q});
        }
    }
    if (near.size() <= 1) return best;

    // Doubles cannot separate the leaders; compare intervals at escalating
    // precision. Ties that survive kMaxPrec would make the chain ambiguous.
    for (mpfr_prec_t prec = kDefaultPrec; prec <= kMaxPrec; prec *= 4) {
        for (std::size_t trial = 0; trial + 1 < near.size();) {
            Interval a = quality_iv(pt, near[trial].pos, near[trial].e_from, prec);
            Interval b = quality_iv(pt, near[trial + 1].pos, near[trial + 1].e_from, prec);
            if (a.strictly_greater(b)) {
                near.erase(near.begin() + static_cast<std::ptrdiff_t>(trial) + 1);
            } else if (b.strictly_greater(a)) {
                near.erase(near.begin() + static_cast<std::ptrdiff_t>(trial));
            } else {
                ++trial;  // still ambiguous at this precision
            }
        }
        if (near.size() == 1) return near.front();
    }
    throw NonConvergence("backbone step tie unresolved at maximum precision");
}

std::vector<Signature> backbone_chain(double max_log10, PrimeTable& pt) {
    if (!(max_log10 >= 0)) throw std::invalid_argument("backbone_chain: bad bound");
    const double limit_nat = max_log10 * std::log(10.0);
    std::vector<Signature> chain;
    Signature cur;
    double ln_cur = 0;
    while (ln_cur <= limit_nat) {
        BackboneStep st = next_backbone_step(cur, pt);
        StepResult next = multiply_by_prime(cur, st.pos);
        assert(next.ok());
        cur = std::move(next.sig);
        ln_cur += pt.ln_prime_d(st.pos);
        chain.push_back(cur);
    }
    return chain;
}

// ----------------------------------------------------------- public ball ----

std::vector<Signature> window_candidates(const Signature& b, std::uint32_t radius) {
    std::vector<Signature> out{b};
    std::unordered_set<Signature, SigHash> seen{b};
    std::vector<Signature> frontier{b};
    for (std::uint32_t d = 0; d < radius && !frontier.empty(); ++d) {
        std::vector<Signature> next;
        for (const Signature& s : frontier) {
            for (std::uint32_t i : successor_candidates(s)) {
                StepResult r = multiply_by_prime(s, i);
                assert(r.ok());
                if (seen.insert(r.sig).second) {
                    out.push_back(r.sig);
                    next.push_back(std::move(r.sig));
                }
            }
            for (std::uint32_t i : predecessor_candidates(s)) {
                StepResult r = divide_by_prime(s, i);
                assert(r.ok());
                if (seen.insert(r.sig).second) {
                    out.push_back(r.sig);
                    next.push_back(std::move(r.sig));
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

// ------------------------------------------------------- window internals ----

namespace {

// Sparse exponent delta against the slab's left endpoint; sorted by
// position, nets nonzero. Every state the search visits is canonical, so a
// delta plus the endpoint's runs always rebuilds a valid signature.
struct DeltaEnt {
    std::uint32_t pos;
    std::int32_t net;
};
using DeltaVec = std::vector<DeltaEnt>;

DeltaVec dv_bump(const DeltaVec& dv, std::uint32_t pos, int dirn) {
    DeltaVec out;
    out.reserve(dv.size() + 1);
    std::size_t i = 0;
    for (; i < dv.size() && dv[i].pos < pos; ++i) out.push_back(dv[i]);
    int net = dirn;
    if (i < dv.size() && dv[i].pos == pos) {
        net += dv[i].net;
        ++i;
    }
    if (net != 0) out.push_back(DeltaEnt{pos, net});
    for (; i < dv.size(); ++i) out.push_back(dv[i]);
    return out;
}

// Rebuild the run list of endpoint-runs + delta. Only positions the delta
// touches are revisited; cost O(#runs + #delta).
void apply_delta(const std::vector<Run>& base, const DeltaVec& dv,
                 std::vector<Run>& out) {
    out.clear();
    auto push = [&out](std::int64_t v, std::uint32_t hi) {
        assert(v >= 0);
        if (v == 0) return;  // position(s) deleted from the tail
        ExpT ev = static_cast<ExpT>(v);
        if (!out.empty() && out.back().value == ev) {
            out.back().hi = hi;
        } else {
            assert(out.empty() || out.back().value > ev);
            out.push_back(Run{ev, hi});
        }
    };
    const std::uint32_t base_r = base.empty() ? 0 : base.back().hi;
    std::uint32_t rmax = base_r;
    if (!dv.empty()) rmax = std::max(rmax, dv.back().pos);
    std::size_t bi = 0;
    std::size_t di = 0;
    std::uint32_t pos = 1;
    while (pos <= rmax) {
        std::int64_t bv = 0;
        std::uint32_t seg_hi = rmax;
        if (pos <= base_r) {
            while (base[bi].hi < pos) ++bi;
            bv = base[bi].value;
            seg_hi = base[bi].hi;
        }
        while (di < dv.size() && dv[di].pos < pos) ++di;
        if (di < dv.size() && dv[di].pos == pos) {
            push(bv + dv[di].net, pos);
            ++pos;
            continue;
        }
        std::uint32_t stop = seg_hi;
        if (di < dv.size()) stop = std::min(stop, dv[di].pos - 1);
        push(bv, stop);
        pos = stop + 1;
    }
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

struct Fp128 {
    std::uint64_t a = 0, b = 0;
};

Fp128 fingerprint(const DeltaVec& dv) {
    Fp128 f{0x6a09e667f3bcc908ull, 0xbb67ae8584caa73bull};
    for (const DeltaEnt& e : dv) {
        std::uint64_t k = (static_cast<std::uint64_t>(e.pos) << 32) ^
                          static_cast<std::uint32_t>(e.net);
        f.a = mix64(f.a ^ k);
        f.b = mix64(f.b + k);
    }
    return f;
}

// Open-addressing set of 128-bit fingerprints; (0,0) marks an empty slot
// (no reachable delta hashes there short of a 2^-128 accident).
class FpSet {
  public:
    explicit FpSet(std::size_t expect = 1024) { rehash(ceil_pow2(expect * 2)); }

    bool insert(Fp128 f) {
        if ((count_ + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
        std::size_t i = f.a & mask_;
        while (slots_[i].a != 0 || slots_[i].b != 0) {
            if (slots_[i].a == f.a && slots_[i].b == f.b) return false;
            i = (i + 1) & mask_;
        }
        slots_[i] = f;
        ++count_;
        return true;
    }

    std::size_t size() const { return count_; }

  private:
    static std::size_t ceil_pow2(std::size_t n) {
        std::size_t c = 64;
        while (c < n) c <<= 1;
        return c;
    }
    void rehash(std::size_t cap) {
        std::vector<Fp128> old = std::move(slots_);
        slots_.assign(cap, Fp128{});
        mask_ = cap - 1;
        for (const Fp128& f : old) {
            if (f.a == 0 && f.b == 0) continue;
            std::size_t i = f.a & mask_;
            while (slots_[i].a != 0 || slots_[i].b != 0) i = (i + 1) & mask_;
            slots_[i] = f;
        }
    }
    std::vector<Fp128> slots_;
    std::size_t mask_ = 0;
    std::size_t count_ = 0;
};

struct WinState {
    DeltaVec dv;
    double dln = 0;       // ln(candidate) - ln(left endpoint)
    double dab = 0;       // ln-abundancy(candidate) - ln-abundancy(left endpoint)
    std::uint8_t depth = 0;
};

// Memoized ln_abundancy_step_d values for the slab's prime range.
class StepCache {
  public:
    StepCache(PrimeTable& pt, std::uint32_t max_pos)
        : pt_(pt), emax_(48), vals_(static_cast<std::size_t>(max_pos) * 48,
                                    std::numeric_limits<double>::quiet_NaN()) {}

    double step(std::uint32_t pos, ExpT e) {
        if (e >= emax_ || pos > vals_.size() / emax_) {
            return ln_abundancy_step_d(pt_.prime(pos), e);
        }
        double& slot = vals_[static_cast<std::size_t>(pos - 1) * emax_ + e];
        if (std::isnan(slot)) slot = ln_abundancy_step_d(pt_.prime(pos), e);
        return slot;
    }

  private:
    PrimeTable& pt_;
    std::size_t emax_;
    std::vector<double> vals_;
};

// Breadth-first ball of exponent deltas around `left`, depth-labelled.
std::vector<WinState> enumerate_ball(const Signature& left, std::uint32_t depth_hi,
                                     PrimeTable& pt, StepCache& sc,
                                     std::uint64_t state_cap) {
    std::vector<WinState> arena;
    arena.push_back(WinState{});
    FpSet seen(4096);
    seen.insert(fingerprint(arena.front().dv));

    std::vector<Run> mruns;
    const std::vector<Run>& base = left.runs();
    for (std::size_t head = 0; head < arena.size(); ++head) {
        // Copy the scalar fields: arena may reallocate while children append.
        const double dln0 = arena[head].dln;
        const double dab0 = arena[head].dab;
        const std::uint8_t depth0 = arena[head].depth;
        if (depth0 == depth_hi) continue;
        const DeltaVec dv0 = arena[head].dv;
        apply_delta(base, dv0, mruns);

        auto visit = [&](std::uint32_t pos, int dirn, ExpT e_at) {
            DeltaVec dv = dv_bump(dv0, pos, dirn);
            if (!seen.insert(fingerprint(dv))) return;
            WinState child;
            child.dv = std::move(dv);
            if (dirn > 0) {
                child.dln = dln0 + pt.ln_prime_d(pos);
                child.dab = dab0 + sc.step(pos, e_at);
            } else {
                child.dln = dln0 - pt.ln_prime_d(pos);
                child.dab = dab0 - sc.step(pos, e_at - 1);
            }
            child.depth = static_cast<std::uint8_t>(depth0 + 1);
            arena.push_back(std::move(child));
            if (arena.size() > state_cap) {
                throw ResourceBudgetExceeded(
                    "window state cap exceeded; raise max_states_per_interval "
                    "or lower the radius");
            }
        };

        // Multiplies: run los ascending, then the append slot; all canonical.
        std::uint32_t lo = 1;
        for (const Run& r : mruns) {
            visit(lo, +1, r.value);
            lo = r.hi + 1;
        }
        visit(lo, +1, 0);
        // Divides: run his ascending; all canonical.
        for (const Run& r : mruns) visit(r.hi, -1, r.value);
    }
    return arena;
}

// Interval versions of a delta's magnitude / abundancy change, for records.
Interval delta_ln_interval(const DeltaVec& dv, PrimeTable& pt, mpfr_prec_t prec) {
    Interval out = Interval::zero(prec);
    for (const DeltaEnt& e : dv) {
        for (int k = 0; k < std::abs(e.net); ++k) {
            if (e.net > 0) {
                out += pt.ln_prime(e.pos);
            } else {
                out -= pt.ln_prime(e.pos);
            }
        }
    }
    return out;
}

Interval delta_ab_interval(const DeltaVec& dv, const Signature& left,
                           PrimeTable& pt, mpfr_prec_t prec) {
    Interval out = Interval::zero(prec);
    for (const DeltaEnt& e : dv) {
        ExpT eb = left.exponent(e.pos);
        std::uint64_t p = pt.prime(e.pos);
        if (e.net > 0) {
            for (std::int32_t j = 0; j < e.net; ++j) {
                out += ln_abundancy_step(p, eb + static_cast<ExpT>(j), prec);
            }
        } else {
            for (std::int32_t j = 1; j <= -e.net; ++j) {
                out -= ln_abundancy_step(p, eb - static_cast<ExpT>(j), prec);
            }
        }
    }
    return out;
}

struct Cand {
    std::uint32_t arena_idx = 0;
    double dln = 0;
    double dab = 0;
    std::uint8_t depth = 0;
};

// Running record carried across slabs.
struct BestState {
    bool have = false;
    Signature sig;
    Interval ab_iv;  // brackets ln-abundancy of sig
};

struct ScanOutcome {
    std::vector<std::uint32_t> rec_cands;  // indices into the candidate array
    std::vector<SaRecord> recs;            // built only for the committing scan
    BestState end;
};

// Per-slab context shared by the scans.
struct SlabCtx {
    const Signature& left;
    PrimeTable& pt;
    mpfr_prec_t prec;
    const Interval& base_ln_iv;
    const Interval& base_ab_iv;
    std::vector<Cand>& cands;
    std::vector<std::optional<Signature>>& sigs;  // lazy, parallel to cands

    const Signature& sig_of(std::uint32_t ci) {
        std::optional<Signature>& slot = sigs[ci];
        if (!slot) {
            std::vector<Run> runs;
            // Reconstruct from the stored delta of the matching arena state.
            apply_delta(left.runs(), deltas[ci], runs);
            slot = Signature::from_runs(std::move(runs));
        }
        return *slot;
    }
    std::vector<DeltaVec> deltas;  // per candidate, copied out of the arena
};

// Walk candidates in magnitude order; strict new-record rule. Doubles carry
// the comparison except within kAbTol of the record, where the bracketed
// intervals and finally the exact rationals decide.
ScanOutcome scan_records(SlabCtx& cx, const BestState& carried,
                         std::uint32_t depth_cap, bool build) {
    ScanOutcome out;
    out.end = carried;
    double delta0 = 0;  // (ln-ab of slab base) - (ln-ab of current best)
    bool have_delta0 = false;
    if (out.end.have) {
        delta0 = (cx.base_ab_iv - out.end.ab_iv).mid();
        have_delta0 = true;
    }
    for (std::uint32_t ci = 0; ci < cx.cands.size(); ++ci) {
        const Cand& c = cx.cands[ci];
        if (c.depth > depth_cap) continue;
        bool record;
        std::optional<Interval> cab;
        if (!have_delta0) {
            record = true;
        } else {
            double d = delta0 + c.dab;
            if (d > kAbTol) {
                record = true;
            } else if (d < -kAbTol) {
                record = false;
            } else {
                cab = cx.base_ab_iv + delta_ab_interval(cx.deltas[ci], cx.left,
                                                        cx.pt, cx.prec);
                if (cab->disjoint(out.end.ab_iv)) {
                    record = cab->strictly_greater(out.end.ab_iv);
                } else {
                    Abundancy ca = abundancy(cx.sig_of(ci), cx.pt);
                    Abundancy ba = abundancy(out.end.sig, cx.pt);
                    record = compare_abundancy(ca, ba) == std::strong_ordering::greater;
                }
            }
        }
        if (!record) continue;
        if (!cab) {
            cab = cx.base_ab_iv + delta_ab_interval(cx.deltas[ci], cx.left,
                                                    cx.pt, cx.prec);
        }
        out.rec_cands.push_back(ci);
        if (build) {
            Interval cln = cx.base_ln_iv + delta_ln_interval(cx.deltas[ci],
                                                             cx.pt, cx.prec);
            SaRecord rec;
            rec.sig = cx.sig_of(ci);
            rec.ln_value = cln.mid();
            rec.ln_error = cln.width() + 1e-15;
            rec.ln_ab = cab->mid();
            out.recs.push_back(std::move(rec));
        }
        out.end.have = true;
        out.end.sig = cx.sig_of(ci);
        out.end.ab_iv = *cab;
        delta0 = (cx.base_ab_iv - out.end.ab_iv).mid();
        have_delta0 = true;
    }
    return out;
}

// ------------------------------------------------------------ checkpoint ----

// Checkpoint compatibility line.  The record stream is a deterministic
// function of nothing but the mathematics (the window parameters only bound
// how hard each slab is verified), so the run bound is deliberately absent:
// a checkpoint may be resumed with a larger --max-log10 and continues the
// identical stream where it left off.  The window parameters are still
// pinned to catch accidental mixing of differently tuned runs.
std::string config_echo(const BackboneConfig& cfg) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "radius=%u escalation=%u radius_cap=%u margin=%.17g prec=%ld",
                  cfg.window.radius, cfg.window.escalation,
                  cfg.window.radius_cap, cfg.window.overlap_margin,
                  static_cast<long>(cfg.prec));
    return buf;
}

struct Checkpoint {
    std::uint64_t next_interval = 0;
    std::uint32_t radius = 0;
    std::uint64_t escalations = 0;
    std::uint64_t emitted = 0;
    // When the run bound (or count) cut inside slab `next_interval`, the
    // number of that slab's leading records already emitted; a resume
    // reprocesses the slab and skips exactly these. 0 = slab untouched.
    std::uint64_t slab_done = 0;
    bool have_best = false;
    Signature best;
};

void save_checkpoint(const std::string& path, const BackboneConfig& cfg,
                     const Checkpoint& ck) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint: " + tmp);
        out << "#sacheckpoint v1\n";
        out << "#config " << config_echo(cfg) << "\n";
        out << "#next-interval " << ck.next_interval << "\n";
        out << "#radius-current " << ck.radius << "\n";
        out << "#escalations " << ck.escalations << "\n";
        out << "#emitted " << ck.emitted << "\n";
        out << "#slab-done " << ck.slab_done << "\n";
        out << "#best "
            << (ck.have_best ? scn_to_string(scn_encode(ck.best)) : "-") << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw std::runtime_error("cannot move checkpoint into place: " + path);
    }
}

std::optional<Checkpoint> load_checkpoint(const std::string& path,
                                          const BackboneConfig& cfg) {
    std::ifstream in(path);
    if (!in) return std::nullopt;  // no checkpoint yet: fresh start
    Checkpoint ck;
    std::string line;
    long lineno = 0;
    auto next_line = [&](const char* prefix) -> std::string {
        if (!std::getline(in, line)) {
            throw ParseError("checkpoint truncated", lineno + 1);
        }
        ++lineno;
        std::size_t plen = std::strlen(prefix);
        if (line.compare(0, plen, prefix) != 0) {
            throw ParseError(std::string("expected ") + prefix, lineno);
        }
        return line.substr(plen);
    };
    if (next_line("#sacheckpoint v1") != "") {
        throw ParseError("bad checkpoint version line", lineno);
    }
    std::string conf = next_line("#config ");
    if (conf != config_echo(cfg)) {
        throw ParseError("checkpoint was produced by a different configuration",
                         lineno);
    }
    ck.next_interval = std::stoull(next_line("#next-interval "));
    ck.radius = static_cast<std::uint32_t>(std::stoul(next_line("#radius-current ")));
    ck.escalations = std::stoull(next_line("#escalations "));
    ck.emitted = std::stoull(next_line("#emitted "));
    ck.slab_done = std::stoull(next_line("#slab-done "));
    std::string best = next_line("#best ");
    if (best != "-") {
        ck.have_best = true;
        ck.best = scn_decode(scn_from_string(best));
    }
    if (ck.radius < cfg.window.radius || ck.radius > cfg.window.radius_cap) {
        throw ParseError("checkpoint radius outside configured range", lineno);
    }
    return ck;
}

}  // namespace

// ------------------------------------------------------------- generator ----

GenerateReport generate_sa(const BackboneConfig& cfg, PrimeTable& pt,
                           const std::function<void(const SaRecord&)>& emit) {
    if (!(cfg.max_log10 >= 0)) {
        throw std::invalid_argument("generate_sa: max_log10 must be >= 0");
    }
    if (cfg.window.radius < 1 || cfg.window.escalation < 1 ||
        cfg.window.radius_cap < cfg.window.radius) {
        throw std::invalid_argument("generate_sa: bad window configuration");
    }
    const double limit_nat = cfg.max_log10 * std::log(10.0);

    Checkpoint ck;
    ck.radius = cfg.window.radius;
    if (!cfg.checkpoint_path.empty()) {
        if (std::optional<Checkpoint> loaded =
                load_checkpoint(cfg.checkpoint_path, cfg)) {
            ck = *loaded;
        }
    }

    BestState best;
    best.have = ck.have_best;
    if (best.have) {
        best.sig = ck.best;
        best.ab_iv = abundancy(best.sig, pt).ln;
    }

    GenerateReport rep;
    rep.final_radius = ck.radius;

    // Backbone elements; elems[k] is the left endpoint of slab k, elems[0] = 1.
    std::vector<Signature> elems{Signature{}};
    std::vector<std::uint32_t> step_pos;
    auto extend_chain = [&](std::size_t need) {
        while (elems.size() < need) {
            BackboneStep st = next_backbone_step(elems.back(), pt);
            StepResult next = multiply_by_prime(elems.back(), st.pos);
            assert(next.ok());
            step_pos.push_back(st.pos);
            elems.push_back(std::move(next.sig));
        }
    };

    // Slab whose leading records a previous invocation already emitted.
    const std::uint64_t resume_slab =
        ck.slab_done > 0 ? ck.next_interval
                         : std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t resume_slab_done = ck.slab_done;

    std::uint64_t processed = 0;
    bool slab_partial = false;
    for (std::uint64_t k = ck.next_interval;; ++k) {
        extend_chain(k + 2);
        const Signature& left = elems[k];
        const Signature& right = elems[k + 1];
        const std::uint32_t spos = step_pos[k];

        Interval base_ln_iv = ln_interval(left, pt);
        const double base_ln_mid = base_ln_iv.mid();
        if (base_ln_mid > limit_nat + 1e-12 * std::max(1.0, limit_nat) + 1e-9) {
            rep.complete = true;
            break;
        }
        if (cfg.max_count != 0 && ck.emitted >= cfg.max_count) {
            rep.complete = true;
            break;
        }
        if (cfg.max_intervals != 0 && processed >= cfg.max_intervals) break;

        // Each slab verifies its own stability, so escalation never needs to
        // outlive the slab that required it: restart from the configured
        // radius every time.
        ck.radius = cfg.window.radius;

        const double dstep = pt.ln_prime_d(spos);
        Abundancy base_ab = abundancy(left, pt);
        const std::uint32_t depth_budget =
            cfg.window.radius_cap + 1 + cfg.window.escalation;
        pt.ensure(left.r() + depth_budget + 2);
        StepCache sc(pt, left.r() + depth_budget + 2);

        // Stability loop: commit only when the deeper window agrees.
        for (;;) {
            const std::uint32_t depth_hi = ck.radius + 1 + cfg.window.escalation;
            std::vector<WinState> arena = enumerate_ball(
                left, depth_hi, pt, sc, cfg.max_states_per_interval);
            rep.states += arena.size();

            std::vector<Cand> cand_store;
            std::vector<std::optional<Signature>> sig_store;
            SlabCtx ctx{left,       pt,        cfg.prec, base_ln_iv,
                        base_ab.ln, cand_store, sig_store, {}};

            const double margin = cfg.window.overlap_margin;
            for (std::uint32_t ai = 0; ai < arena.size(); ++ai) {
                const WinState& ws = arena[ai];
                if (ws.dln <= -margin || ws.dln >= dstep + margin) continue;
                ctx.cands.push_back(Cand{ai, ws.dln, ws.dab, ws.depth});
                ctx.deltas.push_back(ws.dv);
            }
            ctx.sigs.assign(ctx.cands.size(), std::nullopt);

            // Exact slab membership at the edges, then magnitude sort.
            std::vector<std::uint32_t> order;
            for (std::uint32_t ci = 0; ci < ctx.cands.size(); ++ci) {
                const Cand& c = ctx.cands[ci];
                bool in_lo, in_hi;
                if (c.dln > kEdgeBand) {
                    in_lo = true;
                } else if (c.dln < -kEdgeBand) {
                    in_lo = false;
                } else {
                    in_lo = compare_magnitude(ctx.sig_of(ci), left, pt) !=
                            std::strong_ordering::less;
                }
                if (!in_lo) continue;
                if (c.dln < dstep - kEdgeBand) {
                    in_hi = true;
                } else if (c.dln > dstep + kEdgeBand) {
                    in_hi = false;
                } else {
                    in_hi = compare_magnitude(ctx.sig_of(ci), right, pt) ==
                            std::strong_ordering::less;
                }
                if (!in_hi) continue;
                order.push_back(ci);
            }
            std::sort(order.begin(), order.end(),
                      [&](std::uint32_t x, std::uint32_t y) {
                          return ctx.cands[x].dln < ctx.cands[y].dln;
                      });
            // Near-equal magnitudes: settle each run of close dln exactly.
            for (std::size_t i = 0; i < order.size();) {
                std::size_t j = i + 1;
                while (j < order.size() &&
                       ctx.cands[order[j]].dln - ctx.cands[order[j - 1]].dln <=
                           kTieBand) {
                    ++j;
                }
                if (j - i > 1) {
                    std::sort(order.begin() + static_cast<std::ptrdiff_t>(i),
                              order.begin() + static_cast<std::ptrdiff_t>(j),
                              [&](std::uint32_t x, std::uint32_t y) {
                                  std::strong_ordering o = compare_magnitude(
                                      ctx.sig_of(x), ctx.sig_of(y), pt);
                                  assert(o != std::strong_ordering::equal);
                                  return o == std::strong_ordering::less;
                              });
                }
                i = j;
            }
            // Re-pack candidates into magnitude order so scans are a linear walk.
            std::vector<Cand> packed;
            std::vector<DeltaVec> packed_dv;
            std::vector<std::optional<Signature>> packed_sig;
            packed.reserve(order.size());
            for (std::uint32_t ci : order) {
                packed.push_back(ctx.cands[ci]);
                packed_dv.push_back(std::move(ctx.deltas[ci]));
                packed_sig.push_back(std::move(ctx.sigs[ci]));
            }
            ctx.cands = std::move(packed);
            ctx.deltas = std::move(packed_dv);
            ctx.sigs = std::move(packed_sig);

            rep.candidates += ctx.cands.size();
            ScanOutcome shallow =
                scan_records(ctx, best, static_cast<std::uint8_t>(ck.radius + 1),
                             /*build=*/false);
            ScanOutcome full = scan_records(ctx, best, depth_hi, /*build=*/true);
            if (shallow.rec_cands == full.rec_cands) {
                // Emit in magnitude order, skipping records a previous
                // invocation already wrote, and cutting exactly at the run
                // bound / count; a cut leaves the slab partially done so a
                // later bound-extending resume revisits it.
                const std::uint64_t already =
                    k == resume_slab ? resume_slab_done : 0;
                const double lim_band =
                    1e-12 * std::max(1.0, limit_nat) + 1e-9;
                std::uint64_t pos = 0;
                std::uint64_t done = already;
                for (SaRecord& rec : full.recs) {
                    ++pos;
                    if (pos <= already) continue;
                    if (cfg.max_count != 0 && ck.emitted >= cfg.max_count) {
                        slab_partial = true;
                        break;
                    }
                    bool beyond = false;
                    if (rec.ln_value > limit_nat + lim_band) {
                        beyond = true;
                    } else if (rec.ln_value > limit_nat - lim_band) {
                        beyond =
                            compare_to_pow10(rec.sig, cfg.max_log10, pt) > 0;
                    }
                    if (beyond) {
                        slab_partial = true;
                        break;
                    }
                    rec.index = ++ck.emitted;
                    emit(rec);
                    ++rep.emitted;
                    ++done;
                }
                if (slab_partial) {
                    ck.next_interval = k;
                    ck.slab_done = done;
                    // best stays the pre-slab state: the resuming run
                    // reprocesses this slab from its start.
                } else {
                    best = std::move(full.end);
                }
                break;
            }
            if (ck.radius + cfg.window.escalation > cfg.window.radius_cap) {
                std::ostringstream msg;
                msg << "window radius " << ck.radius << " unstable at slab " << k
                    << " and escalation would exceed radius_cap="
                    << cfg.window.radius_cap;
                throw NonConvergence(msg.str());
            }
            ck.radius += cfg.window.escalation;
            ++rep.escalations;
            rep.final_radius = ck.radius;
        }

        ++processed;
        ++rep.intervals;
        if (!slab_partial) {
            ck.next_interval = k + 1;
            ck.slab_done = 0;
        }
        ck.have_best = best.have;
        if (best.have) ck.best = best.sig;
        if (!cfg.checkpoint_path.empty()) {
            save_checkpoint(cfg.checkpoint_path, cfg, ck);
        }
        if (slab_partial) {
            rep.complete = true;
            break;
        }
    }

    if (!cfg.checkpoint_path.empty()) {
        save_checkpoint(cfg.checkpoint_path, cfg, ck);
    }
    return rep;
}

// ------------------------------------------------------------- crosscheck ----

std::vector<CrosscheckDiff> crosscheck(const std::vector<SaRecord>& a,
                                       const std::vector<SaRecord>& b) {
    std::vector<CrosscheckDiff> diffs;
    if (a.empty() || b.empty()) return diffs;
    const std::uint64_t lo = std::max(a.front().index, b.front().index);
    const std::uint64_t hi = std::min(a.back().index, b.back().index);
    for (std::uint64_t idx = lo; idx <= hi; ++idx) {
        const SaRecord& ra = a[idx - a.front().index];
        const SaRecord& rb = b[idx - b.front().index];
        if (ra.index != idx || rb.index != idx) {
            diffs.push_back(CrosscheckDiff{idx, "index misalignment"});
            break;
        }
        if (ra.sig != rb.sig) {
            diffs.push_back(CrosscheckDiff{
                idx, "signature " + scn_to_string(scn_encode(ra.sig)) + " vs " +
                         scn_to_string(scn_encode(rb.sig))});
            continue;
        }
        const double tol = ra.ln_error + rb.ln_error + 1e-9;
        if (std::abs(ra.ln_value - rb.ln_value) > tol) {
            diffs.push_back(CrosscheckDiff{idx, "magnitude disagreement"});
        }
    }
    return diffs;
}

}  // namespace sanum
