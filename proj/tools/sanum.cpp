// sanum — superabundant-number toolkit.
//
// Subcommands: generate, classify, closure, connect, scn encode|decode,
// verify, sieve, selfcheck.  Data goes to stdout or --out files; diagnostics
// go to stderr.  Exit codes: 0 success, 1 computational failure, 2 usage
// error.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sanum/abundancy.hpp"
#include "sanum/backbone.hpp"
#include "sanum/enumerate.hpp"
#include "sanum/errors.hpp"
#include "sanum/lattice.hpp"
#include "sanum/list_io.hpp"
#include "sanum/prime_table.hpp"
#include "sanum/scn.hpp"
#include "sanum/sieve_oracle.hpp"
#include "sanum/signature.hpp"

namespace {

using namespace sanum;

// Misuse detected after flag parsing (maps to exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Output plumbing: stdout by default,--out file otherwise.

class OutStream {
  public:
    OutStream(const std::string& path, bool append) {
        if (path.empty() || path == "-") return;
        file_.open(path, append ? (std::ios::out | std::ios::app)
                                : (std::ios::out | std::ios::trunc));
        if (!file_) throw UsageError("cannot open output file '" + path + "'");
        use_file_ = true;
    }
    std::ostream& get() { return use_file_ ? file_ : std::cout; }
    void finish() {
        get().flush();
        if (use_file_ && !file_) {
            throw std::runtime_error("write failure on output file");
        }
    }

  private:
    std::ofstream file_;
    bool use_file_ = false;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open list file '" + path + "'");
    return in;
}

// A bound-extending resume appends rows to an existing list; the header must
// then describe the *current* invocation. Rewrite the leading header lines in
// place, keeping every body row.
void refresh_list_header(const std::string& path, const ListHeader& h) {
    std::ostringstream body;
    {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot reopen '" + path + "' for resume");
        std::string line;
        bool in_header = true;
        while (std::getline(in, line)) {
            if (in_header && line.rfind("#", 0) == 0) continue;
            in_header = false;
            body << line << '\n';
        }
    }
    std::ofstream out(path, std::ios::out | std::ios::trunc);
    ListWriter header_only(out, h);
    out << body.str();
    if (!out) throw std::runtime_error("write failure rewriting '" + path + "'");
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOpts {
    std::string engine;
    double max_log10 = 0;
    bool has_max_log10 = false;
    std::uint64_t count = 0;
    bool has_count = false;
    std::string out_path;
    unsigned precision = kDefaultPrec;
    unsigned threads = 1;
    // backbone
    unsigned radius = 4;
    unsigned escalation = 2;
    unsigned radius_cap = 12;
    double margin = 1e-9;
    std::string checkpoint;
    std::uint64_t max_intervals = 0;
    // exhaustive
    std::uint64_t pop_ceiling = 400'000'000;
    std::uint64_t heap_ceiling = 20'000'000;
};

std::string generate_config_echo(const GenerateOpts& o) {
    std::ostringstream s;
    s << "generate --engine " << o.engine;
    if (o.has_max_log10) s << " --max-log10 " << fmt_double(o.max_log10);
    if (o.has_count) s << " --count " << o.count;
    s << " --precision " << o.precision << " --threads " << o.threads;
    if (o.engine == "backbone") {
        s << " --radius " << o.radius << " --escalation " << o.escalation
          << " --radius-cap " << o.radius_cap << " --margin "
          << fmt_double(o.margin);
    } else {
        s << " --pop-ceiling " << o.pop_ceiling << " --heap-ceiling "
          << o.heap_ceiling;
    }
    return s.str();
}

int cmd_generate(const GenerateOpts& o) {
    if (o.has_max_log10 == o.has_count) {
        throw UsageError("exactly one of --max-log10 / --count is required");
    }
    if (o.has_count && o.count == 0) {
        throw UsageError("--count must be at least 1");
    }
    if (o.has_max_log10 && !(o.max_log10 >= 0)) {
        throw UsageError("--max-log10 must be nonnegative");
    }
    if (o.threads < 1) throw UsageError("--threads must be at least 1");
    if (o.precision < 64 || o.precision > kMaxPrec) {
        throw UsageError("--precision must lie in [64, " +
                         std::to_string(kMaxPrec) + "]");
    }

    PrimeTable pt(static_cast<mpfr_prec_t>(o.precision));
    ListHeader header;
    header.engine = o.engine;
    header.config = generate_config_echo(o);
    header.top_log10 =
        o.has_max_log10 ? format_log10_12sig(o.max_log10) : std::string("-");

    // A resumed backbone run appends to the list written so far.
    bool resume = false;
    if (o.engine == "backbone" && !o.checkpoint.empty()) {
        std::error_code ec;
        resume = std::filesystem::exists(o.checkpoint, ec);
    }
    const bool append = resume && !o.out_path.empty() &&
                        std::filesystem::exists(o.out_path) &&
                        std::filesystem::file_size(o.out_path) > 0;

    if (append) refresh_list_header(o.out_path, header);
    OutStream out(o.out_path, append);
    ListWriter writer(out.get(), header, /*write_header=*/!append);

    if (o.engine == "exhaustive") {
        EnumerateConfig ec;
        if (o.has_max_log10) ec.max_log10 = o.max_log10;
        if (o.has_count) ec.max_count = o.count;
        ec.pop_ceiling = o.pop_ceiling;
        ec.heap_ceiling = o.heap_ceiling;
        EnumerateStats st =
            enumerate_records(ec, pt, [&](const SaRecord& r) { writer.row(r); });
        out.finish();
        std::cerr << "generate: " << writer.rows_written() << " records ("
                  << st.pops << " pops, " << st.pushes << " pushes, peak frontier "
                  << st.peak_frontier << ")\n";
        return 0;
    }

    BackboneConfig bc;
    bc.max_log10 = o.has_max_log10
                       ? o.max_log10
                       : std::numeric_limits<double>::infinity();
    bc.max_count = o.has_count ? o.count : 0;
    bc.window.radius = o.radius;
    bc.window.escalation = o.escalation;
    bc.window.radius_cap = o.radius_cap;
    bc.window.overlap_margin = o.margin;
    bc.checkpoint_path = o.checkpoint;
    bc.max_intervals = o.max_intervals;
    bc.prec = static_cast<mpfr_prec_t>(o.precision);
    GenerateReport rep =
        generate_sa(bc, pt, [&](const SaRecord& r) { writer.row(r); });
    out.finish();
    std::cerr << "generate: " << writer.rows_written() << " records ("
              << rep.intervals << " intervals, " << rep.states << " states, "
              << rep.candidates << " candidates, " << rep.escalations
              << " escalations, final radius " << rep.final_radius << ")\n";
    if (!rep.complete) {
        std::cerr << "generate: stopped at --max-intervals; resume with the "
                     "same --checkpoint and --out to continue\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// list-reading helpers

std::vector<SaRecord> load_list(const std::string& path, PrimeTable& pt) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        throw UsageError("list file '" + path + "' does not exist");
    }
    if (std::filesystem::file_size(path, ec) == 0) {
        throw UsageError("list file '" + path + "' is empty");
    }
    std::ifstream in = open_input(path);
    std::vector<SaRecord> recs = parse_list(in, pt);
    if (recs.empty()) {
        throw UsageError("list file '" + path + "' holds no records");
    }
    return recs;
}

// ---------------------------------------------------------------------------
// classify

int cmd_classify(const std::string& list_path, const std::string& format,
                 const std::string& out_path, const std::string& dump_path,
                 unsigned precision) {
    PrimeTable pt(static_cast<mpfr_prec_t>(precision));
    std::vector<SaRecord> recs = load_list(list_path, pt);
    std::vector<LatticeClass> cls = classify(recs, pt);
    std::vector<TableRow> rows = counterexample_report(recs, pt);

    const std::string echo = "classify --list " + list_path + " --format " +
                             format + " --precision " + std::to_string(precision);

    TableFormat tf = TableFormat::csv;
    if (format == "tsv") tf = TableFormat::tsv;
    else if (format == "latex") tf = TableFormat::latex;
    else if (format != "csv") throw UsageError("unknown --format '" + format + "'");

    OutStream out(out_path, false);
    out.get() << (tf == TableFormat::latex ? "% config " : "#config ") << echo
              << '\n';
    out.get() << export_table(rows, tf);
    out.finish();

    if (!dump_path.empty()) {
        std::ofstream dump(dump_path, std::ios::out | std::ios::trunc);
        if (!dump) throw UsageError("cannot open dump file '" + dump_path + "'");
        dump << "#config " << echo << "\n";
        dump << "#index\tkind\tup_decidable\tsa_successors\tsa_predecessors\n";
        for (const LatticeClass& c : cls) {
            dump << c.index << '\t' << lattice_kind_name(c.kind) << '\t'
                 << (c.up_decidable ? "yes" : "no") << '\t';
            for (std::size_t i = 0; i < c.sa_successors.size(); ++i) {
                if (i) dump << ',';
                dump << c.sa_successors[i];
            }
            if (c.sa_successors.empty()) dump << '-';
            dump << '\t';
            for (std::size_t i = 0; i < c.sa_predecessors.size(); ++i) {
                if (i) dump << ',';
                dump << c.sa_predecessors[i];
            }
            if (c.sa_predecessors.empty()) dump << '-';
            dump << '\n';
        }
        if (!dump) throw std::runtime_error("write failure on dump file");
    }

    std::uint64_t sources = 0, sinks = 0, both = 0, regular = 0, indet = 0;
    for (const LatticeClass& c : cls) {
        if (c.index == 1) continue;  // the trivial bottom element
        switch (c.kind) {
            case LatticeKind::regular: ++regular; break;
            case LatticeKind::source: ++sources; break;
            case LatticeKind::sink: ++sinks; break;
            case LatticeKind::source_and_sink: ++both; break;
            case LatticeKind::indeterminate_up:
            case LatticeKind::indeterminate_down: ++indet; break;
        }
    }
    std::cerr << "classify: " << recs.size() << " records; sources " << sources
              << ", sinks " << sinks << ", source-and-sink " << both
              << ", regular " << regular << ", boundary-indeterminate " << indet
              << " (reported separately; successor side exits the list)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// closure / connect

int cmd_closure(const std::string& list_path, unsigned precision) {
    PrimeTable pt(static_cast<mpfr_prec_t>(precision));
    std::vector<SaRecord> recs = load_list(list_path, pt);
    ClosureResult res = conjectural_closure(recs, pt);
    std::cout << "#config closure --list " << list_path << " --precision "
              << precision << "\n";
    std::cout << "records: " << recs.size() << "\n";
    std::cout << "reachable: " << res.reachable.size() << "\n";
    std::cout << "missing: " << res.missing.size() << "\n";
    if (res.first_missing == 0) {
        std::cout << "first missing index: none\n";
    } else {
        std::cout << "first missing index: " << res.first_missing << "\n";
        const SaRecord& rec = recs[res.first_missing - 1];
        std::cout << "first missing scn: " << scn_to_string(scn_encode(rec.sig))
                  << "\n";
    }
    return 0;
}

int cmd_connect(const std::string& list_path, unsigned precision) {
    PrimeTable pt(static_cast<mpfr_prec_t>(precision));
    std::vector<SaRecord> recs = load_list(list_path, pt);
    ConnectivityReport rep = connectivity(recs, pt);
    std::cout << "#config connect --list " << list_path << " --precision "
              << precision << "\n";
    std::cout << "records: " << recs.size() << "\n";
    std::cout << "components: " << rep.components << "\n";
    std::cout << "all connected: "
              << (rep.outside_main.empty() ? "yes" : "no") << "\n";
    std::cout << "outside main component: " << rep.outside_main.size() << "\n";
    std::cout << "annotated (successor side open): " << rep.annotated.size()
              << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// scn encode / decode

Signature parse_factorization_arg(const std::string& text, PrimeTable& pt) {
    // Plain integer => factor it; otherwise "p^e * p^e * ..." form.
    bool digits_only = !text.empty();
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            digits_only = false;
            break;
        }
    }
    if (digits_only) {
        std::uint64_t n = 0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), n);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size() ||
            n == 0) {
            throw UsageError("bad integer '" + text + "'");
        }
        return factor_signature(n);
    }
    // Reuse the reference-ingestion grammar by wrapping into one line.
    std::istringstream line("1: " + text);
    std::vector<SaRecord> recs =
        ingest_reference(line, RefFormat::factorization, pt);
    if (recs.size() != 1) throw UsageError("bad factorization '" + text + "'");
    return recs[0].sig;
}

int cmd_scn_encode(const std::string& input, unsigned precision) {
    PrimeTable pt(static_cast<mpfr_prec_t>(precision));
    Signature sig;
    try {
        sig = parse_factorization_arg(input, pt);
    } catch (const ParseError& e) {
        throw UsageError(std::string("bad factorization: ") + e.what());
    } catch (const NonCanonicalSignature& e) {
        throw UsageError(e.what());
    }
    std::cout << scn_to_string(scn_encode(sig)) << "\n";
    return 0;
}

int cmd_scn_decode(const std::string& input, unsigned precision) {
    PrimeTable pt(static_cast<mpfr_prec_t>(precision));
    Signature sig;
    try {
        sig = scn_decode(scn_from_string(input));
    } catch (const MalformedScn& e) {
        throw UsageError(std::string("bad SCN: ") + e.what());
    }
    std::cout << format_factorization(sig, pt) << "\n";
    std::cout << "log10 = " << format_log10_12sig(log_magnitude(sig, pt).log10())
              << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& list_path, const std::string& against_path,
               unsigned precision) {
    PrimeTable pt(static_cast<mpfr_prec_t>(precision));
    std::ifstream a_in = open_input(list_path);
    std::ifstream b_in = open_input(against_path);
    std::vector<SaRecord> a = ingest_reference(a_in, RefFormat::auto_detect, pt);
    std::vector<SaRecord> b = ingest_reference(b_in, RefFormat::auto_detect, pt);
    if (a.empty()) throw UsageError("'" + list_path + "' holds no records");
    if (b.empty()) throw UsageError("'" + against_path + "' holds no records");
    std::vector<CrosscheckDiff> diffs = crosscheck(a, b);
    for (const CrosscheckDiff& d : diffs) {
        std::cerr << "mismatch at index " << d.index << ": " << d.what << "\n";
    }
    std::cout << diffs.size() << " mismatches\n";
    return diffs.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sieve

int cmd_sieve(std::uint64_t max_n, const std::string& out_path) {
    if (max_n < 1) throw UsageError("--max must be at least 1");
    if (max_n > 100'000'000ull) {
        throw UsageError("--max beyond 1e8 is not supported by the sieve");
    }
    std::vector<SieveRecord> recs = sieve_records(max_n);
    OutStream out(out_path, false);
    ListHeader header;
    header.engine = "sieve";
    header.config = "sieve --max " + std::to_string(max_n);
    header.top_log10 =
        format_log10_12sig(std::log10(static_cast<double>(max_n)));
    ListWriter writer(out.get(), header);
    std::uint64_t index = 0;
    for (const SieveRecord& sr : recs) {
        SaRecord rec;
        rec.index = ++index;
        rec.sig = factor_signature(sr.n);
        rec.ln_value = std::log(static_cast<double>(sr.n));
        rec.ln_error = 1e-12;
        rec.ln_ab = std::log(static_cast<double>(sr.sigma) /
                             static_cast<double>(sr.n));
        writer.row(rec);
    }
    out.finish();
    std::cerr << "sieve: " << writer.rows_written() << " records up to "
              << max_n << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// selfcheck

int cmd_selfcheck() {
    PrimeTable pt(kDefaultPrec);
    bool ok = true;
    auto report = [&](bool pass, const std::string& what) {
        std::cerr << (pass ? "[ok] " : "[FAIL] ") << what << "\n";
        ok = ok && pass;
    };

    // 1. Divisor-sum sieve vs exhaustive enumeration up to 1e6.
    {
        std::vector<SieveRecord> sv = sieve_records(1'000'000);
        std::vector<SaRecord> ex;
        EnumerateConfig ec;
        ec.max_log10 = 6.0;
        enumerate_records(ec, pt, [&](const SaRecord& r) { ex.push_back(r); });
        bool pass = sv.size() == ex.size();
        for (std::size_t i = 0; pass && i < sv.size(); ++i) {
            mpz_class n = materialize(ex[i].sig, pt);
            pass = n.fits_ulong_p() && n.get_ui() == sv[i].n;
        }
        report(pass, "sieve and exhaustive engines agree up to 1e6 (" +
                         std::to_string(sv.size()) + " records)");
    }

    // 2. Exhaustive vs backbone engines up to 1e20.
    std::vector<SaRecord> ex20;
    {
        EnumerateConfig ec;
        ec.max_log10 = 20.0;
        enumerate_records(ec, pt, [&](const SaRecord& r) { ex20.push_back(r); });
        std::vector<SaRecord> bb;
        BackboneConfig bc;
        bc.max_log10 = 20.0;
        generate_sa(bc, pt, [&](const SaRecord& r) { bb.push_back(r); });
        std::vector<CrosscheckDiff> diffs = crosscheck(ex20, bb);
        bool pass = diffs.empty() && ex20.size() == bb.size();
        report(pass, "exhaustive and backbone engines agree up to 1e20 (" +
                         std::to_string(ex20.size()) + " records)");
    }

    // 3. SCN codec worked examples and random round trips.
    {
        bool pass = true;
        auto rt = [&](const std::string& scn, const std::vector<ExpT>& exps) {
            Signature s = Signature::from_exponents(exps);
            pass = pass && scn_to_string(scn_encode(s)) == scn &&
                   scn_decode(scn_from_string(scn)) == s;
        };
        rt("{1}", {1});
        rt("{0,0,1}", {3});
        rt("{3}", {1, 1, 1});
        rt("{4,0,1}", {3, 1, 1, 1});
        rt("{}", {});
        for (const SaRecord& r : ex20) {
            pass = pass && scn_decode(scn_encode(r.sig)) == r.sig;
        }
        report(pass, "scn codec round-trips");
    }

    // 4. Every greedy-chain element up to 1e20 is itself a record.
    {
        std::vector<Signature> chain = backbone_chain(20.0, pt);
        bool pass = true;
        std::size_t found = 0;
        for (const Signature& c : chain) {
            if (compare_to_pow10(c, 20.0, pt) > 0) break;
            bool here = false;
            for (const SaRecord& r : ex20) here = here || r.sig == c;
            pass = pass && here;
            ++found;
        }
        report(pass, "greedy chain elements are records (" +
                         std::to_string(found) + " checked)");
    }

    // 5. Enumeration pop order is exactly strict.
    {
        EnumerateConfig ec;
        ec.max_log10 = 12.0;
        ec.verify_order = true;
        bool pass = true;
        try {
            enumerate_records(ec, pt, [](const SaRecord&) {});
        } catch (const std::exception&) {
            pass = false;
        }
        report(pass, "enumeration pop order strictly increases (to 1e12)");
    }

    if (!ok) return 1;
    std::cout << "selfcheck ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);

    CLI::App app{"superabundant-number toolkit: exact generation, SCN codec, "
                 "lattice classification"};
    app.require_subcommand(1);

    GenerateOpts g;
    CLI::App* gen = app.add_subcommand(
        "generate", "write a superabundant record list to a bound");
    gen->add_option("--engine", g.engine, "exhaustive | backbone")
        ->required()
        ->check(CLI::IsMember({"exhaustive", "backbone"}));
    CLI::Option* opt_max = gen->add_option(
        "--max-log10", g.max_log10, "emit records with log10 n <= this");
    CLI::Option* opt_cnt =
        gen->add_option("--count", g.count, "emit this many records");
    opt_max->excludes(opt_cnt);
    opt_cnt->excludes(opt_max);
    gen->add_option("--out", g.out_path, "output file (default stdout)");
    gen->add_option("--precision", g.precision,
                    "working precision in bits (default 256)");
    gen->add_option("--threads", g.threads, "parallelism bound (default 1)");
    gen->add_option("--radius", g.radius, "backbone: window radius (default 4)");
    gen->add_option("--escalation", g.escalation,
                    "backbone: radius increase on instability (default 2)");
    gen->add_option("--radius-cap", g.radius_cap,
                    "backbone: maximum radius (default 12)");
    gen->add_option("--margin", g.margin,
                    "backbone: slab collection slack in ln units (default 1e-9)");
    gen->add_option("--checkpoint", g.checkpoint,
                    "backbone: persist/resume progress at this path");
    gen->add_option("--max-intervals", g.max_intervals,
                    "backbone: stop after this many slabs (0 = to the bound)");
    gen->add_option("--pop-ceiling", g.pop_ceiling,
                    "exhaustive: abort beyond this many heap pops");
    gen->add_option("--heap-ceiling", g.heap_ceiling,
                    "exhaustive: abort beyond this frontier size");

    std::string cl_list, cl_format = "csv", cl_out, cl_dump;
    unsigned cl_prec = kDefaultPrec;
    CLI::App* cls = app.add_subcommand(
        "classify", "lattice-classify a record list; write the "
                    "counterexample table");
    cls->add_option("--list", cl_list, "record list file")->required();
    cls->add_option("--format", cl_format, "csv | tsv | latex (default csv)")
        ->check(CLI::IsMember({"csv", "tsv", "latex"}));
    cls->add_option("--out", cl_out, "table output file (default stdout)");
    cls->add_option("--dump", cl_dump, "write the per-record class dump here");
    cls->add_option("--precision", cl_prec, "working precision in bits");

    std::string cj_list;
    unsigned cj_prec = kDefaultPrec;
    CLI::App* cloj = app.add_subcommand(
        "closure", "reachability from index 1 by in-list multiplication");
    cloj->add_option("--list", cj_list, "record list file")->required();
    cloj->add_option("--precision", cj_prec, "working precision in bits");

    std::string cn_list;
    unsigned cn_prec = kDefaultPrec;
    CLI::App* conn = app.add_subcommand(
        "connect", "component structure of the in-list lattice");
    conn->add_option("--list", cn_list, "record list file")->required();
    conn->add_option("--precision", cn_prec, "working precision in bits");

    CLI::App* scn = app.add_subcommand("scn", "SCN codec");
    scn->require_subcommand(1);
    std::string enc_in, dec_in;
    unsigned scn_prec = kDefaultPrec;
    CLI::App* enc = scn->add_subcommand(
        "encode", "factorization or integer -> SCN string");
    enc->add_option("input", enc_in, "e.g. \"2^3 * 3 * 5 * 7\" or \"840\"")
        ->required();
    CLI::App* dec = scn->add_subcommand(
        "decode", "SCN string -> factorization and magnitude");
    dec->add_option("input", dec_in, "e.g. \"{4,0,1}\"")->required();

    std::string vf_list, vf_against;
    unsigned vf_prec = kDefaultPrec;
    CLI::App* ver = app.add_subcommand(
        "verify", "cross-check two record lists over their shared range");
    ver->add_option("--list", vf_list, "record list file")->required();
    ver->add_option("--against", vf_against,
                    "reference list (native or '<index>: p^e * ...' lines)")
        ->required();
    ver->add_option("--precision", vf_prec, "working precision in bits");

    std::uint64_t sv_max = 0;
    std::string sv_out;
    CLI::App* sie = app.add_subcommand(
        "sieve", "divisor-sum-sieve ground truth list (small scale)");
    sie->add_option("--max", sv_max, "sieve bound (<= 1e8)")->required();
    sie->add_option("--out", sv_out, "output file (default stdout)");

    CLI::App* self = app.add_subcommand(
        "selfcheck", "run the built-in cross-engine and oracle suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            g.has_max_log10 = opt_max->count() > 0;
            g.has_count = opt_cnt->count() > 0;
            return cmd_generate(g);
        }
        if (cls->parsed())
            return cmd_classify(cl_list, cl_format, cl_out, cl_dump, cl_prec);
        if (cloj->parsed()) return cmd_closure(cj_list, cj_prec);
        if (conn->parsed()) return cmd_connect(cn_list, cn_prec);
        if (scn->parsed()) {
            if (enc->parsed()) return cmd_scn_encode(enc_in, scn_prec);
            if (dec->parsed()) return cmd_scn_decode(dec_in, scn_prec);
        }
        if (ver->parsed()) return cmd_verify(vf_list, vf_against, vf_prec);
        if (sie->parsed()) return cmd_sieve(sv_max, sv_out);
        if (self->parsed()) return cmd_selfcheck();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
