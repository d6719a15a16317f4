#pragma once

#include <stdexcept>
#include <string>

namespace sanum {

// Text input that cannot be parsed. `line` is 1-based for line-oriented
// inputs, 0 when not applicable.
struct ParseError : std::runtime_error {
    long line;
    explicit ParseError(const std::string& msg, long line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg
                                         : msg),
          line(line_no) {}
};

// SCN text or vector violating the canonical form (nonzero entries must
// strictly decrease, last entry nonzero).
struct MalformedScn : std::runtime_error {
    explicit MalformedScn(const std::string& msg) : std::runtime_error(msg) {}
};

// Stored log10 of a list row disagrees with the value recomputed from the
// signature.
struct ChecksumMismatch : std::runtime_error {
    explicit ChecksumMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

// An exponent vector that is not nonincreasing-positive (reference data
// violating the structural property of the domain is rejected loudly).
struct NonCanonicalSignature : std::runtime_error {
    explicit NonCanonicalSignature(const std::string& msg) : std::runtime_error(msg) {}
};

// Record list handed to a lattice operation is not contiguous from index 1.
struct GapInList : std::runtime_error {
    explicit GapInList(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured heap-size or pop-count ceiling was reached before the
// requested limit; never silently truncate.
struct ResourceBudgetExceeded : std::runtime_error {
    explicit ResourceBudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Escalation (window radius or precision) hit its cap without reaching a
// stable/decidable answer; never emit unverified data.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sanum
