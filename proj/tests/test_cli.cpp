#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sanum/abundancy.hpp"
#include "sanum/enumerate.hpp"
#include "sanum/lattice.hpp"
#include "sanum/list_io.hpp"
#include "sanum/prime_table.hpp"
#include "sanum/sieve_oracle.hpp"
#include "sanum/signature.hpp"

using namespace sanum;

namespace {

namespace fs = std::filesystem;

struct CmdResult {
    int exit = -1;
    std::string out;
    std::string err;
};

const std::string& tmp_dir() {
    static std::string dir = [] {
        fs::path p = fs::temp_directory_path() /
                     ("sanum-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p.string();
    }();
    return dir;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    REQUIRE(bool(out));
}

CmdResult run_cli(const std::string& args) {
    static int seq = 0;
    std::string base = tmp_dir() + "/run-" + std::to_string(seq++);
    std::string cmd = std::string(SANUM_CLI_PATH) + " " + args + " >" + base +
                      ".out 2>" + base + ".err";
    int rc = std::system(cmd.c_str());
    CmdResult r;
    r.exit = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(base + ".out");
    r.err = slurp(base + ".err");
    fs::remove(base + ".out");
    fs::remove(base + ".err");
    return r;
}

std::vector<SaRecord> engine_records(double max_log10, PrimeTable& pt) {
    EnumerateConfig cfg;
    cfg.max_log10 = max_log10;
    std::vector<SaRecord> out;
    enumerate_records(cfg, pt, [&](const SaRecord& r) { out.push_back(r); });
    return out;
}

bool same_sigs(const std::vector<SaRecord>& a, const std::vector<SaRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].index != b[i].index) return false;
        if (!(a[i].sig == b[i].sig)) return false;
    }
    return true;
}

// The hand-analyzed fixture: three decidable sinks (36, 48, 120) and one
// stranded source (5040) whose products exceed the horizon.
std::string write_fixture_list() {
    static const std::vector<std::uint64_t> ns = {1,  2,  4,  6,   12, 24,
                                                  36, 48, 60, 120, 5040};
    std::string path = tmp_dir() + "/fixture.tsv";
    PrimeTable pt;
    std::vector<SaRecord> recs;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        SaRecord rec;
        rec.index = i + 1;
        rec.sig = factor_signature(ns[i]);
        LogMagnitude lm = log_magnitude(rec.sig, pt);
        rec.ln_value = lm.value();
        rec.ln_error = lm.error() + 1e-15;
        rec.ln_ab = ln_abundancy_d(rec.sig, pt);
        recs.push_back(std::move(rec));
    }
    std::ofstream out(path, std::ios::trunc);
    ListHeader header;
    header.engine = "exhaustive";
    header.config = "fixture";
    emit_list(out, header, recs);
    REQUIRE(bool(out));
    return path;
}

}  // namespace

TEST_CASE("generate writes a parseable exhaustive list") {
    std::string f = tmp_dir() + "/g6.tsv";
    CmdResult r = run_cli("generate --engine exhaustive --max-log10 6 --out " + f);
    CHECK(r.exit == 0);
    CHECK(r.out.empty());
    CHECK(r.err.substr(0, 21) == "generate: 31 records ");

    std::string text = slurp(f);
    CHECK(text.rfind("#salist v1\n"
                     "#engine exhaustive\n"
                     "#config generate --engine exhaustive --max-log10 6 "
                     "--precision 256 --threads 1 --pop-ceiling 400000000 "
                     "--heap-ceiling 20000000\n"
                     "#top-log10 6\n",
                     0) == 0);

    PrimeTable pt;
    std::ifstream in(f);
    std::vector<SaRecord> got = parse_list(in, pt);
    CHECK(same_sigs(got, engine_records(6.0, pt)));
}

TEST_CASE("generate streams to stdout when no --out is given") {
    CmdResult r = run_cli("generate --engine exhaustive --max-log10 3");
    CHECK(r.exit == 0);
    PrimeTable pt;
    std::istringstream in(r.out);
    std::vector<SaRecord> got = parse_list(in, pt);
    CHECK(same_sigs(got, engine_records(3.0, pt)));
    REQUIRE(got.size() == 15);
}

TEST_CASE("generate misuse exits 2") {
    CHECK(run_cli("generate --engine exhaustive").exit == 2);
    CHECK(run_cli("generate --engine exhaustive --max-log10 3 --count 5").exit == 2);
    CHECK(run_cli("generate --engine exhaustive --count 0").exit == 2);
    CHECK(run_cli("generate --engine exhaustive --max-log10 -1").exit == 2);
    CHECK(run_cli("generate --engine exhaustive --max-log10 3 --precision 32").exit == 2);
    CHECK(run_cli("generate --engine warp --max-log10 3").exit == 2);
    CHECK(run_cli("generate --engine exhaustive --max-log10 3 --bogus").exit == 2);
    CHECK(run_cli("").exit == 2);
    CHECK(run_cli("frobnicate").exit == 2);
    CmdResult r = run_cli("generate --engine exhaustive --max-log10 3 --count 5");
    CHECK(r.err.find("--max-log10 excludes --count") != std::string::npos);
    CmdResult none = run_cli("generate --engine exhaustive");
    CHECK(none.err.find("exactly one of --max-log10 / --count is required") !=
          std::string::npos);
}

TEST_CASE("backbone count mode cuts exactly") {
    std::string f = tmp_dir() + "/c25.tsv";
    CmdResult r = run_cli("generate --engine backbone --count 25 --out " + f);
    CHECK(r.exit == 0);
    PrimeTable pt;
    std::ifstream in(f);
    std::vector<SaRecord> got = parse_list(in, pt);
    REQUIRE(got.size() == 25);
    EnumerateConfig ec;
    ec.max_count = 25;
    std::vector<SaRecord> want;
    enumerate_records(ec, pt, [&](const SaRecord& rec) { want.push_back(rec); });
    CHECK(same_sigs(got, want));
    CHECK(slurp(f).find("#config generate --engine backbone --count 25 ") !=
          std::string::npos);
    CHECK(slurp(f).find("#top-log10 -\n") != std::string::npos);
}

TEST_CASE("a checkpointed run extends to a larger bound in place") {
    std::string ck = tmp_dir() + "/ck.txt";
    std::string f = tmp_dir() + "/resume.tsv";
    std::string f2 = tmp_dir() + "/fresh.tsv";

    CmdResult first = run_cli("generate --engine backbone --max-log10 25 "
                              "--checkpoint " + ck + " --out " + f);
    CHECK(first.exit == 0);
    REQUIRE(fs::exists(ck));

    CmdResult second = run_cli("generate --engine backbone --max-log10 35 "
                               "--checkpoint " + ck + " --out " + f);
    CHECK(second.exit == 0);

    CmdResult fresh = run_cli("generate --engine backbone --max-log10 35 --out " + f2);
    CHECK(fresh.exit == 0);

    // The resumed file must be byte-identical to a fresh full run, including
    // the refreshed header.
    CHECK(slurp(f) == slurp(f2));
    CHECK(slurp(f).find("#top-log10 35\n") != std::string::npos);
}

TEST_CASE("classify reports the fixture's counterexamples") {
    std::string f = write_fixture_list();
    std::string table = tmp_dir() + "/table.csv";
    std::string dump = tmp_dir() + "/dump.tsv";
    CmdResult r = run_cli("classify --list " + f + " --format csv --out " +
                          table + " --dump " + dump);
    CHECK(r.exit == 0);
    CHECK(r.err ==
          "classify: 11 records; sources 1, sinks 3, source-and-sink 0, "
          "regular 6, boundary-indeterminate 0 (reported separately; "
          "successor side exits the list)\n");

    CHECK(slurp(table) ==
          "#config classify --list " + f + " --format csv --precision 256\n"
          "Index,Type,Group,log10 n,SCN Representation\n"
          "7,np,4,1.56,\"{0,2}\"\n"
          "8,np,5,1.68,\"{2,0,0,1}\"\n"
          "10,np,5,2.08,\"{3,0,1}\"\n"
          "11,n/q,8,3.7,\"{4,2,0,1}\"\n");

    CHECK(slurp(dump) ==
          "#config classify --list " + f + " --format csv --precision 256\n"
          "#index\tkind\tup_decidable\tsa_successors\tsa_predecessors\n"
          "1\tsource\tyes\t1\t-\n"
          "2\tregular\tyes\t1,2\t1\n"
          "3\tregular\tyes\t2\t1\n"
          "4\tregular\tyes\t1\t2\n"
          "5\tregular\tyes\t1,2,3\t1,2\n"
          "6\tregular\tyes\t1,3\t1\n"
          "7\tsink\tyes\t-\t2\n"
          "8\tsink\tyes\t-\t1\n"
          "9\tregular\tyes\t1\t3\n"
          "10\tsink\tyes\t-\t1,3\n"
          "11\tsource\tno\t-\t-\n");

    // latex goes through the same pipeline with a '%' config prefix.
    CmdResult lx = run_cli("classify --list " + f + " --format latex");
    CHECK(lx.exit == 0);
    CHECK(lx.out.rfind("% config classify --list " + f +
                       " --format latex --precision 256\n", 0) == 0);
    CHECK(lx.out.find("11 & $n/q$ & 8 & 3.7 & \\{4,2,0,1\\} \\\\\n") !=
          std::string::npos);

    CHECK(run_cli("classify --list " + f + " --format yaml").exit == 2);
    CHECK(run_cli("classify --list " + tmp_dir() + "/absent.tsv").exit == 2);
}

TEST_CASE("closure names the first ungenerable record") {
    std::string f = write_fixture_list();
    CmdResult r = run_cli("closure --list " + f);
    CHECK(r.exit == 0);
    CHECK(r.out ==
          "#config closure --list " + f + " --precision 256\n"
          "records: 11\n"
          "reachable: 10\n"
          "missing: 1\n"
          "first missing index: 11\n"
          "first missing scn: {4,2,0,1}\n");

    std::string g = tmp_dir() + "/g6b.tsv";
    REQUIRE(run_cli("generate --engine exhaustive --max-log10 6 --out " + g).exit == 0);
    CmdResult full = run_cli("closure --list " + g);
    CHECK(full.exit == 0);
    CHECK(full.out ==
          "#config closure --list " + g + " --precision 256\n"
          "records: 31\n"
          "reachable: 31\n"
          "missing: 0\n"
          "first missing index: none\n");
}

TEST_CASE("connect reports components and open annotations") {
    std::string f = write_fixture_list();
    CmdResult r = run_cli("connect --list " + f);
    CHECK(r.exit == 0);
    CHECK(r.out ==
          "#config connect --list " + f + " --precision 256\n"
          "records: 11\n"
          "components: 2\n"
          "all connected: no\n"
          "outside main component: 1\n"
          "annotated (successor side open): 1\n");

    std::string g = tmp_dir() + "/g6c.tsv";
    REQUIRE(run_cli("generate --engine exhaustive --max-log10 6 --out " + g).exit == 0);
    CmdResult full = run_cli("connect --list " + g);
    CHECK(full.exit == 0);
    CHECK(full.out.find("components: 1\nall connected: yes\n"
                        "outside main component: 0\n") != std::string::npos);
}

TEST_CASE("scn encode and decode work from the command line") {
    CmdResult enc = run_cli("scn encode 840");
    CHECK(enc.exit == 0);
    CHECK(enc.out == "{4,0,1}\n");

    CmdResult encf = run_cli("scn encode '2^3 * 3 * 5 * 7'");
    CHECK(encf.exit == 0);
    CHECK(encf.out == "{4,0,1}\n");

    CmdResult enc1 = run_cli("scn encode 1");
    CHECK(enc1.exit == 0);
    CHECK(enc1.out == "{}\n");

    CmdResult dec = run_cli("scn decode '{4,0,1}'");
    CHECK(dec.exit == 0);
    CHECK(dec.out == "2^3 * 3 * 5 * 7\nlog10 = 2.92427928606\n");

    CmdResult dec1 = run_cli("scn decode '{}'");
    CHECK(dec1.exit == 0);
    CHECK(dec1.out == "1\nlog10 = 0\n");

    CHECK(run_cli("scn decode '{1,2}'").exit == 2);
    CHECK(run_cli("scn decode 'oops'").exit == 2);
    CHECK(run_cli("scn encode 13").exit == 2);   // skips the prime 2
    CHECK(run_cli("scn encode abc").exit == 2);
    CHECK(run_cli("scn encode '2 * 3^2'").exit == 2);
    CHECK(run_cli("scn").exit == 2);
}

TEST_CASE("verify compares a list against a reference") {
    std::string g = tmp_dir() + "/g8.tsv";
    REQUIRE(run_cli("generate --engine exhaustive --max-log10 8 --out " + g).exit == 0);

    CmdResult same = run_cli("verify --list " + g + " --against " + g);
    CHECK(same.exit == 0);
    CHECK(same.out == "0 mismatches\n");
    CHECK(same.err.empty());

    // A factorization reference with one wrong entry (record 5 is 12, the
    // reference claims 24).
    PrimeTable pt;
    std::vector<SaRecord> recs = engine_records(8.0, pt);
    std::ostringstream ref;
    for (const SaRecord& rec : recs) {
        if (rec.index == 5) {
            ref << "5: 2^3 * 3\n";
        } else {
            ref << rec.index << ": " << format_factorization(rec.sig, pt) << "\n";
        }
    }
    std::string rf = tmp_dir() + "/ref8.txt";
    spit(rf, ref.str());

    CmdResult diff = run_cli("verify --list " + g + " --against " + rf);
    CHECK(diff.exit == 1);
    CHECK(diff.out == "1 mismatches\n");
    CHECK(diff.err.find("mismatch at index 5") != std::string::npos);

    CHECK(run_cli("verify --list " + g + " --against " + tmp_dir() + "/none.txt").exit == 2);
}

TEST_CASE("sieve produces a native list from raw divisor sums") {
    std::string f = tmp_dir() + "/s1000.tsv";
    CmdResult r = run_cli("sieve --max 1000 --out " + f);
    CHECK(r.exit == 0);
    CHECK(r.err == "sieve: 15 records up to 1000\n");
    std::string text = slurp(f);
    CHECK(text.find("#engine sieve\n#config sieve --max 1000\n") != std::string::npos);

    PrimeTable pt;
    std::ifstream in(f);
    std::vector<SaRecord> got = parse_list(in, pt);
    std::vector<SieveRecord> want = sieve_records(1000);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(materialize(got[i].sig, pt) ==
              mpz_class(std::to_string(want[i].n)));
    }

    CHECK(run_cli("sieve --max 200000000").exit == 2);
    CHECK(run_cli("sieve --max 0").exit == 2);
}

TEST_CASE("selfcheck passes end to end") {
    CmdResult r = run_cli("selfcheck");
    CHECK(r.exit == 0);
    CHECK(r.out == "selfcheck ok\n");
    for (const char* probe :
         {"[ok] sieve and exhaustive engines agree up to 1e6",
          "[ok] exhaustive and backbone engines agree up to 1e20",
          "[ok] scn codec round-trips",
          "[ok] greedy chain elements are records",
          "[ok] enumeration pop order strictly increases"}) {
        CHECK(r.err.find(probe) != std::string::npos);
    }
    CHECK(r.err.find("[FAIL]") == std::string::npos);
}

TEST_CASE("help is reachable") {
    CmdResult r = run_cli("--help");
    CHECK(r.exit == 0);
    for (const char* word : {"generate", "classify", "closure", "connect",
                             "scn", "verify", "sieve", "selfcheck"}) {
        CHECK(r.out.find(word) != std::string::npos);
    }
}
