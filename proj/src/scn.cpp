#include "sanum/scn.hpp"

#include "sanum/errors.hpp"

namespace sanum {

ScnVector scn_encode(const Signature& s) {
    ScnVector v;
    v.entries.assign(s.e1(), 0);
    // The run with value k ends at hi positions whose exponent is exactly k,
    // and positions 1..hi all have exponent >= k.
    for (const Run& run : s.runs()) v.entries[run.value - 1] = run.hi;
    return v;
}

Signature scn_decode(const ScnVector& v) {
    const std::size_t L = v.entries.size();
    if (L == 0) return Signature{};
    if (v.entries[L - 1] == 0) throw MalformedScn("last entry must be nonzero");
    // Walk levels from the highest down; nonzero entries become runs and must
    // strictly increase (equivalently: nonzero entries strictly decrease as
    // the position grows).
    std::vector<Run> runs;
    std::uint32_t prev_hi = 0;
    for (std::size_t k = L; k >= 1; --k) {
        std::uint32_t s_k = v.entries[k - 1];
        if (s_k == 0) continue;
        if (s_k <= prev_hi)
            throw MalformedScn("nonzero entries must strictly decrease: entry " +
                               std::to_string(s_k) + " at position " + std::to_string(k));
        runs.push_back(Run{static_cast<ExpT>(k), s_k});
        prev_hi = s_k;
    }
    return Signature::from_runs(std::move(runs));
}

std::string scn_to_string(const ScnVector& v) {
    std::string out = "{";
    for (std::size_t k = 0; k < v.entries.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(v.entries[k]);
    }
    out += '}';
    return out;
}

ScnVector scn_from_string(std::string_view text) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw MalformedScn(msg + " at offset " + std::to_string(pos));
    };
    if (text.empty() || text[pos] != '{') fail("expected '{'");
    ++pos;
    ScnVector v;
    if (pos < text.size() && text[pos] == '}') {
        ++pos;
        if (pos != text.size()) fail("trailing characters");
        return v;
    }
    while (true) {
        // one decimal natural, no leading zeros
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start) fail("expected digit");
        if (text[start] == '0' && pos - start > 1) fail("leading zero");
        if (pos - start > 9) fail("entry too large");
        std::uint64_t value = 0;
        for (std::size_t i = start; i < pos; ++i) value = value * 10 + (text[i] - '0');
        v.entries.push_back(static_cast<std::uint32_t>(value));
        if (pos >= text.size()) fail("unterminated vector");
        if (text[pos] == '}') {
            ++pos;
            break;
        }
        if (text[pos] != ',') fail("expected ',' or '}'");
        ++pos;
        while (pos < text.size() && text[pos] == ' ') ++pos;  // spaces after commas only
    }
    if (pos != text.size()) fail("trailing characters");
    // Surface canonical-form violations immediately.
    scn_decode(v);
    return v;
}

}  // namespace sanum
