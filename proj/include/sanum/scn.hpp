#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sanum/signature.hpp"

namespace sanum {

// The compact positional encoding of a signature: entry s_k at position k
// (1-based) names the largest prime index whose primorial divides n exactly
// k times, or 0 when no primorial divides n exactly k times. Canonical form:
// the nonzero entries strictly decrease as k grows, and the last entry is
// nonzero. The number 1 is the empty vector.
struct ScnVector {
    std::vector<std::uint32_t> entries;
    friend bool operator==(const ScnVector&, const ScnVector&) = default;
};

// L = e_1 entries; s_k = #{i : e_i >= k} when some e_i equals k exactly,
// else 0. Inverse of scn_decode.
ScnVector scn_encode(const Signature& s);

// e_i = max{k : s_k >= i}. Throws MalformedScn when the vector is not
// canonical.
Signature scn_decode(const ScnVector& v);

// "{a,b,c}" with no interior whitespace; the number 1 emits "{}".
std::string scn_to_string(const ScnVector& v);

// Strict grammar: '{' entry (',' entry)* '}' where entry is a decimal
// natural with no leading zeros; ASCII spaces are tolerated after commas
// only. Throws MalformedScn on any violation.
ScnVector scn_from_string(std::string_view text);

}  // namespace sanum
