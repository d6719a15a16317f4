#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sanum/abundancy.hpp"
#include "sanum/prime_table.hpp"
#include "sanum/signature.hpp"

namespace sanum {

// Neighborhood shape of one record in the multiplicative lattice. The
// predecessor side of a contiguous-from-1 list is always decidable (every
// quotient is smaller than the list top), so source-ness is always certain;
// the successor side is decidable only while every product candidate stays
// at or below the top record's magnitude.
enum class LatticeKind {
    regular,            // has an SA predecessor and an SA successor
    source,             // no SA predecessor (n/q counterexample)
    sink,               // has a predecessor, provably no SA successor (np counterexample)
    source_and_sink,    // both at once (would be reported prominently)
    indeterminate_up,   // has a predecessor; successor side exits the list
    indeterminate_down, // unreachable for valid input; kept representable
};

const char* lattice_kind_name(LatticeKind k);

struct LatticeClass {
    std::uint64_t index = 0;
    LatticeKind kind = LatticeKind::regular;
    std::vector<std::uint32_t> sa_successors;    // prime indices i: n * p_i in list
    std::vector<std::uint32_t> sa_predecessors;  // prime indices i: n / p_i in list
    // True when every successor candidate's magnitude is <= the top record's
    // (membership of each np is then settled by the list itself). A `source`
    // with up_decidable == false is still a certain source.
    bool up_decidable = true;
};

// Classify every record. The list must be contiguous from index 1
// (GapInList otherwise); the boundary horizon is the last record.
std::vector<LatticeClass> classify(const std::vector<SaRecord>& sa, PrimeTable& pt);

// Reachability from index 1 by repeated in-list single-prime multiplication.
struct ClosureResult {
    std::vector<std::uint64_t> reachable;  // ascending indices
    std::vector<std::uint64_t> missing;    // ascending indices
    std::uint64_t first_missing = 0;       // 0 = none missing
};

ClosureResult conjectural_closure(const std::vector<SaRecord>& sa, PrimeTable& pt);

// Undirected single-prime-edge components over the list.
struct ConnectivityReport {
    std::uint64_t components = 0;
    // Records with no in-range path to index 1, ascending.
    std::vector<std::uint64_t> outside_main;
    // Records whose successor side exits the range (their edge set may be
    // incomplete; in-range connectivity is a lower bound), ascending.
    std::vector<std::uint64_t> annotated;
};

ConnectivityReport connectivity(const std::vector<SaRecord>& sa, PrimeTable& pt);

// One row of the counterexample table.
struct TableRow {
    std::uint64_t index = 0;
    std::string type;       // "np" (sink) or "n/q" (source)
    std::uint64_t group = 0;
    std::string log10_str;  // 2-decimal half-up, minimal digits
    std::string scn;
};

// Rows for every certain source (type n/q) and certain sink (type np),
// excluding index 1 and excluding indeterminate records; ascending index,
// n/q before np should one record ever be both.
std::vector<TableRow> counterexample_report(const std::vector<SaRecord>& sa,
                                            PrimeTable& pt);

}  // namespace sanum
