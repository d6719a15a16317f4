#include "sanum/list_io.hpp"

#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "sanum/errors.hpp"
#include "sanum/scn.hpp"

namespace sanum {

namespace {

double recompute_log10(const Signature& sig, PrimeTable& pt, double* width_out) {
    Interval iv = ln_interval(sig, pt);
    if (width_out) *width_out = iv.width();
    return iv.mid() / M_LN10;
}

}  // namespace

ListWriter::ListWriter(std::ostream& out, const ListHeader& header,
                       bool write_header)
    : out_(out) {
    if (!write_header) return;
    out_ << "#salist v1\n";
    out_ << "#engine " << header.engine << "\n";
    out_ << "#config " << header.config << "\n";
    out_ << "#top-log10 " << header.top_log10 << "\n";
}

void ListWriter::row(const SaRecord& rec) {
    out_ << rec.index << '\t' << format_log10_12sig(rec.ln_value / M_LN10)
         << '\t' << scn_to_string(scn_encode(rec.sig)) << '\n';
    ++count_;
}

void emit_list(std::ostream& out, const ListHeader& header,
               const std::vector<SaRecord>& recs) {
    ListWriter w(out, header);
    for (const SaRecord& rec : recs) w.row(rec);
}

std::vector<SaRecord> parse_list(std::istream& in, PrimeTable& pt) {
    std::vector<SaRecord> out;
    std::string line;
    long lineno = 0;
    bool saw_magic = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            throw ParseError("CR line ending (list files are LF-only)", lineno);
        }
        if (lineno == 1) {
            if (line != "#salist v1") {
                throw ParseError("missing #salist v1 magic", lineno);
            }
            saw_magic = true;
            continue;
        }
        if (line.empty()) continue;
        if (line[0] == '#') continue;  // header/comment lines

        const std::size_t t1 = line.find('\t');
        const std::size_t t2 = t1 == std::string::npos
                                   ? std::string::npos
                                   : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos ||
            line.find('\t', t2 + 1) != std::string::npos) {
            throw ParseError("expected 3 tab-separated fields", lineno);
        }
        const std::string idx_s = line.substr(0, t1);
        const std::string log_s = line.substr(t1 + 1, t2 - t1 - 1);
        const std::string scn_s = line.substr(t2 + 1);

        char* end = nullptr;
        errno = 0;
        const unsigned long long idx = std::strtoull(idx_s.c_str(), &end, 10);
        if (idx_s.empty() || *end != '\0' || errno != 0) {
            throw ParseError("bad index field '" + idx_s + "'", lineno);
        }
        if (idx != out.size() + 1) {
            throw ParseError("index " + std::to_string(idx) +
                                 " breaks contiguity (expected " +
                                 std::to_string(out.size() + 1) + ")",
                             lineno);
        }
        errno = 0;
        const double stored_log10 = std::strtod(log_s.c_str(), &end);
        if (log_s.empty() || *end != '\0' || errno != 0) {
            throw ParseError("bad log10 field '" + log_s + "'", lineno);
        }

        SaRecord rec;
        rec.index = idx;
        try {
            rec.sig = scn_decode(scn_from_string(scn_s));
        } catch (const MalformedScn& e) {
            throw ParseError(std::string("bad SCN: ") + e.what(), lineno);
        }
        double width = 0;
        const double log10_now = recompute_log10(rec.sig, pt, &width);
        const double tol = 1e-9 * std::max(1.0, std::abs(log10_now));
        if (std::abs(stored_log10 - log10_now) > tol) {
            std::ostringstream msg;
            msg << "line " << lineno << ": stored log10 " << log_s
                << " disagrees with the value recomputed from the SCN ("
                << format_log10_12sig(log10_now) << ")";
            throw ChecksumMismatch(msg.str());
        }
        rec.ln_value = log10_now * M_LN10;
        rec.ln_error = width + 1e-15;
        rec.ln_ab = ln_abundancy_d(rec.sig, pt);
        out.push_back(std::move(rec));
    }
    if (!saw_magic) throw ParseError("empty input (no #salist v1 magic)", 1);
    return out;
}

namespace {

std::vector<SaRecord> ingest_factorization(std::istream& in, PrimeTable& pt) {
    std::vector<SaRecord> out;
    std::string line;
    long lineno = 0;
    bool have_start = false;
    std::uint64_t next_index = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;

        const std::size_t colon = line.find(':');
        if (colon == std::string::npos) {
            throw ParseError("expected '<index>: <factorization>'", lineno);
        }
        std::istringstream idx_in(line.substr(0, colon));
        std::uint64_t idx = 0;
        if (!(idx_in >> idx) || !(idx_in >> std::ws).eof() || idx == 0) {
            throw ParseError("bad index before ':'", lineno);
        }
        if (have_start && idx != next_index) {
            throw ParseError("index " + std::to_string(idx) +
                                 " breaks contiguity (expected " +
                                 std::to_string(next_index) + ")",
                             lineno);
        }
        have_start = true;
        next_index = idx + 1;

        // Tokenize the right-hand side on '*'.
        std::vector<ExpT> exps;
        std::string rhs = line.substr(colon + 1);
        std::size_t pos = 0;
        std::uint32_t prime_i = 0;
        bool is_one = false;
        while (pos <= rhs.size()) {
            std::size_t star = rhs.find('*', pos);
            std::string tok = rhs.substr(
                pos, star == std::string::npos ? std::string::npos : star - pos);
            // trim
            std::size_t a = tok.find_first_not_of(" \t");
            std::size_t b = tok.find_last_not_of(" \t");
            if (a == std::string::npos) {
                throw ParseError("empty factor", lineno);
            }
            tok = tok.substr(a, b - a + 1);
            if (tok == "1" && prime_i == 0 && star == std::string::npos) {
                is_one = true;  // "<index>: 1" encodes the number 1
                break;
            }
            unsigned long long p = 0, e = 1;
            const std::size_t caret = tok.find('^');
            char* end = nullptr;
            const std::string p_s = tok.substr(0, caret);
            errno = 0;
            p = std::strtoull(p_s.c_str(), &end, 10);
            if (p_s.empty() || *end != '\0' || errno != 0) {
                throw ParseError("bad prime '" + p_s + "'", lineno);
            }
            if (caret != std::string::npos) {
                const std::string e_s = tok.substr(caret + 1);
                errno = 0;
                e = std::strtoull(e_s.c_str(), &end, 10);
                if (e_s.empty() || *end != '\0' || errno != 0 || e == 0) {
                    throw ParseError("bad exponent '" + e_s + "'", lineno);
                }
            }
            ++prime_i;
            if (pt.prime(prime_i) != p) {
                throw NonCanonicalSignature(
                    "line " + std::to_string(lineno) + ": factor " +
                    std::to_string(p) + " is not the expected prime " +
                    std::to_string(pt.prime(prime_i)) +
                    " (primes must be consecutive from 2)");
            }
            exps.push_back(static_cast<ExpT>(e));
            if (star == std::string::npos) break;
            pos = star + 1;
        }

        SaRecord rec;
        rec.index = idx;
        if (!is_one) {
            try {
                rec.sig = Signature::from_exponents(exps);
            } catch (const NonCanonicalSignature& e) {
                throw NonCanonicalSignature("line " + std::to_string(lineno) +
                                            ": " + e.what());
            }
        }
        double width = 0;
        rec.ln_value = recompute_log10(rec.sig, pt, &width) * M_LN10;
        rec.ln_error = width + 1e-15;
        rec.ln_ab = ln_abundancy_d(rec.sig, pt);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace

std::vector<SaRecord> ingest_reference(std::istream& in, RefFormat format,
                                       PrimeTable& pt) {
    if (format == RefFormat::auto_detect) {
        // Peek the first line without consuming the stream state we need.
        std::string all((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
        const bool native = all.rfind("#salist v1", 0) == 0;
        std::istringstream replay(all);
        return native ? parse_list(replay, pt)
                      : ingest_factorization(replay, pt);
    }
    if (format == RefFormat::native) return parse_list(in, pt);
    return ingest_factorization(in, pt);
}

std::string format_factorization(const Signature& s, PrimeTable& pt) {
    if (s.empty()) return "1";
    std::ostringstream out;
    const std::vector<Run>& runs = s.runs();
    std::uint32_t pos = 1;
    bool first = true;
    for (const Run& r : runs) {
        for (; pos <= r.hi; ++pos) {
            if (!first) out << " * ";
            first = false;
            out << pt.prime(pos);
            if (r.value > 1) out << '^' << r.value;
        }
    }
    return out.str();
}

std::string export_table(const std::vector<TableRow>& rows, TableFormat format) {
    std::ostringstream out;
    switch (format) {
        case TableFormat::csv:
            out << "Index,Type,Group,log10 n,SCN Representation\n";
            for (const TableRow& r : rows) {
                out << r.index << ',' << r.type << ',' << r.group << ','
                    << r.log10_str << ",\"" << r.scn << "\"\n";
            }
            break;
        case TableFormat::tsv:
            out << "Index\tType\tGroup\tlog10 n\tSCN Representation\n";
            for (const TableRow& r : rows) {
                out << r.index << '\t' << r.type << '\t' << r.group << '\t'
                    << r.log10_str << '\t' << r.scn << '\n';
            }
            break;
        case TableFormat::latex:
            for (const TableRow& r : rows) {
                std::string scn;
                scn.reserve(r.scn.size() + 4);
                for (char c : r.scn) {
                    if (c == '{' || c == '}') scn += '\\';
                    scn += c;
                }
                out << r.index << " & $" << r.type << "$ & " << r.group
                    << " & " << r.log10_str << " & " << scn << " \\\\\n";
            }
            break;
    }
    return out.str();
}

}  // namespace sanum
