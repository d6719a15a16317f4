#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sanum/abundancy.hpp"
#include "sanum/prime_table.hpp"
#include "sanum/signature.hpp"

namespace sanum {

// One pending exponent increment of the greedy chain: the exponent of p_pos
// steps e_from -> e_from + 1, buying ln-abundancy per ln-magnitude at rate
// `quality`.
struct BackboneStep {
    std::uint32_t pos = 0;
    ExpT e_from = 0;
    double quality = 0;
};

struct WindowConfig {
    std::uint32_t radius = 4;
    std::uint32_t escalation = 2;
    std::uint32_t radius_cap = 12;
    // Slack (in ln units) added around each magnitude slab when collecting
    // window states, so float jitter near a boundary can never drop a
    // candidate; boundary membership itself is decided exactly.
    double overlap_margin = 1e-9;
};

struct BackboneConfig {
    // Run bound: magnitude (may be +infinity when max_count drives the stop).
    double max_log10 = 0;
    // Secondary stop: break before the slab that would start past this many
    // emitted records; 0 = no count stop. The final slab may overshoot by a
    // few records (callers that need an exact cut truncate the stream).
    std::uint64_t max_count = 0;
    WindowConfig window;
    // When nonempty, interval-granular progress is persisted here and a
    // matching-config run resumes instead of restarting.
    std::string checkpoint_path;
    // Stop (checkpointing) after this many slabs in this invocation;
    // 0 = run to the bound.
    std::uint64_t max_intervals = 0;
    // Hard cap on window states explored per slab (memory guard).
    std::uint64_t max_states_per_interval = 100'000'000;
    mpfr_prec_t prec = kDefaultPrec;
};

// The step the greedy rule applies next after `cur`: maximal quality, exact
// interval comparison at escalating precision when doubles cannot separate
// the leaders. Exposed for property tests.
BackboneStep next_backbone_step(const Signature& cur, PrimeTable& pt);

// Greedy chain from 1: repeatedly apply next_backbone_step until the value
// exceeds 10^max_log10, then one element more. Element k is reached after
// k+1 steps; n = 1 itself is not included.
std::vector<Signature> backbone_chain(double max_log10, PrimeTable& pt);

// Everything reachable from b by at most `radius` single-position exponent
// steps (multiply or divide, canonical at every intermediate point), b
// itself included. Order: breadth-first, each level's moves enumerated
// ascending by position, multiplies before divides.
std::vector<Signature> window_candidates(const Signature& b, std::uint32_t radius);

struct GenerateReport {
    bool complete = false;          // reached the bound (vs. max_intervals stop)
    std::uint64_t emitted = 0;      // records emitted by this invocation
    std::uint64_t intervals = 0;    // slabs committed by this invocation
    std::uint64_t states = 0;       // window states explored
    std::uint64_t candidates = 0;   // in-slab states record-checked
    std::uint64_t escalations = 0;  // stability failures that widened the radius
    std::uint32_t final_radius = 0; // radius in force at the end
};

// Record generator for bounds far beyond exhaustive reach. Walks consecutive
// chain elements B_k < B_{k+1}; within each magnitude slab [B_k, B_{k+1})
// the candidates are the window states of B_k at radius+1 (which covers the
// radius-windows of both endpoints), sorted by magnitude and checked against
// the running record. A slab commits only when the radius+escalation window
// yields the same record sequence; otherwise the radius escalates and the
// slab reruns (radius_cap exceeded => NonConvergence). Deterministic for a
// fixed config; emit() receives records in index order.
GenerateReport generate_sa(const BackboneConfig& cfg, PrimeTable& pt,
                           const std::function<void(const SaRecord&)>& emit);

struct CrosscheckDiff {
    std::uint64_t index = 0;
    std::string what;
};

// Index-aligned comparison of two record lists over their shared index
// range: signatures must match exactly, magnitudes within the combined
// error bounds. Empty result = agreement.
std::vector<CrosscheckDiff> crosscheck(const std::vector<SaRecord>& a,
                                       const std::vector<SaRecord>& b);

}  // namespace sanum
