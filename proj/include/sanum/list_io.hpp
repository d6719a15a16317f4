#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sanum/abundancy.hpp"
#include "sanum/lattice.hpp"
#include "sanum/prime_table.hpp"
#include "sanum/signature.hpp"

namespace sanum {

// List file layout (UTF-8, LF, ASCII decimal):
//   #salist v1
//   #engine <name>
//   #config <one-line echo of the run configuration>
//   #top-log10 <12-significant-digit bound, or "-">
//   <index> TAB <log10 to 12 significant digits> TAB <SCN>
//   ...
// Indices contiguous from 1. The SCN column is the source of truth; the
// log10 column is an auditable checksum recomputed and verified on parse.
struct ListHeader {
    std::string engine;
    std::string config;
    std::string top_log10 = "-";
};

class ListWriter {
  public:
    // write_header = false appends body rows to an existing list (resumed
    // generation); the caller owns contiguity with the rows already present.
    ListWriter(std::ostream& out, const ListHeader& header,
               bool write_header = true);
    void row(const SaRecord& rec);
    std::uint64_t rows_written() const { return count_; }

  private:
    std::ostream& out_;
    std::uint64_t count_ = 0;
};

void emit_list(std::ostream& out, const ListHeader& header,
               const std::vector<SaRecord>& recs);

// Parses, re-derives magnitude/abundancy from each SCN, and verifies the
// stored log10 against the recomputed value (10^-9 relative).
// Throws ParseError (with line number) / MalformedScn / ChecksumMismatch.
std::vector<SaRecord> parse_list(std::istream& in, PrimeTable& pt);

enum class RefFormat { auto_detect, native, factorization };

// Reference-list ingestion. `factorization` lines read
//   <index>: <p1>^<e1> * <p2>^<e2> * ...
// with "^1" omissible, primes required to be exactly 2, 3, 5, ... in order,
// and "<index>: 1" for the number 1. Blank and '#' lines are skipped.
// Indices must ascend by 1 (any start). NonCanonicalSignature when a line's
// exponents are not nonincreasing-positive.
std::vector<SaRecord> ingest_reference(std::istream& in, RefFormat format,
                                       PrimeTable& pt);

// "2^3 * 3 * 5 * 7" for [3,1,1,1]; "1" for the empty signature.
std::string format_factorization(const Signature& s, PrimeTable& pt);

enum class TableFormat { csv, tsv, latex };

// Counterexample-table serialization. csv/tsv carry a header row
// (Index, Type, Group, log10 n, SCN Representation); latex emits longtable
// body rows with escaped braces and math-mode type.
std::string export_table(const std::vector<TableRow>& rows, TableFormat format);

}  // namespace sanum
