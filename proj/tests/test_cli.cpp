// End-to-end checks of the ddfa binary: exit codes, file outputs, and the
// bench CSV shape. Each test works in its own scratch directory.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ddfa/d2fa.hpp"
#include "ddfa/dfa.hpp"
#include "doctest.h"
#include "oracles.hpp"

#ifndef DDFA_CLI_PATH
#error "DDFA_CLI_PATH must point at the ddfa binary"
#endif

namespace {

namespace fs = std::filesystem;

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() /
              ("ddfa_cli_test_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter()++));
        fs::create_directories(dir);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    void write(const std::string& name, const std::string& content) const {
        std::ofstream out(path(name), std::ios::binary);
        out << content;
    }
    std::string read(const std::string& name) const {
        std::ifstream in(path(name), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
};

int run_cli(const Scratch& s, const std::string& args) {
    std::string cmd = std::string(DDFA_CLI_PATH) + " " + args + " >" + s.path("stdout.txt") +
                      " 2>" + s.path("stderr.txt");
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli compile -> compress -> verify -> match round trip") {
    Scratch s;
    s.write("rules.rules", "# search rules\n.*ab\n.*cd\n");
    CHECK(run_cli(s, "compile --rules " + s.path("rules.rules") + " --out " + s.path("a.dfa")) ==
          0);
    std::string out = s.read("stdout.txt");
    CHECK(out.find("states ") != std::string::npos);

    CHECK(run_cli(s, "compress --dfa " + s.path("a.dfa") + " --algo orig --out " +
                         s.path("a.d2fa") + " --stats " + s.path("stats.json")) == 0);
    std::string stats = s.read("stats.json");
    CHECK(stats.find("\"algorithm\": \"orig\"") != std::string::npos);
    CHECK(stats.find("\"compression_ratio\"") != std::string::npos);

    CHECK(run_cli(s, "verify --dfa " + s.path("a.dfa") + " --d2fa " + s.path("a.d2fa")) == 0);

    s.write("input.bin", "xxabyycd");
    CHECK(run_cli(s, "match --d2fa " + s.path("a.d2fa") + " --input " + s.path("input.bin")) ==
          0);
    out = s.read("stdout.txt");
    CHECK(out.find("accept 4") != std::string::npos);  // "xxab"
    CHECK(out.find("accept 8") != std::string::npos);  // "xxabyycd"
    CHECK(out.find("matching_delay ") != std::string::npos);
    CHECK(out.find("delay_per_byte ") != std::string::npos);
}

TEST_CASE("cli compile failures") {
    Scratch s;
    SUBCASE("empty rule file compiles to a 1-state sink") {
        s.write("empty.rules", "# nothing here\n\n");
        CHECK(run_cli(s, "compile --rules " + s.path("empty.rules") + " --out " +
                             s.path("sink.dfa")) == 0);
        ddfa::Dfa sink = ddfa::read_dfa(s.path("sink.dfa"));
        CHECK(sink.state_count == 1);
    }
    SUBCASE("malformed pattern reports the rule line and exits 1") {
        s.write("bad.rules", "ok\n(ab\n");
        CHECK(run_cli(s, "compile --rules " + s.path("bad.rules") + " --out " +
                             s.path("x.dfa")) == 1);
        std::string err = s.read("stderr.txt");
        CHECK(err.find(":2:") != std::string::npos);  // failing rule is on line 2
    }
}

TEST_CASE("cli compress determinism and exit codes") {
    Scratch s;
    ddfa::write_dfa(oracles::toy_t1(), s.path("t1.dfa"));
    SUBCASE("toy stats") {
        CHECK(run_cli(s, "compress --dfa " + s.path("t1.dfa") + " --algo orig --out " +
                             s.path("t1.d2fa") + " --stats " + s.path("t1.json")) == 0);
        std::string stats = s.read("t1.json");
        CHECK(stats.find("\"total_after\": 7") != std::string::npos);
        CHECK(stats.find("\"compression_ratio\": 0.875") != std::string::npos);
    }
    SUBCASE("same seed twice: byte-identical D2FA files") {
        std::string base = "compress --dfa " + s.path("t1.dfa") +
                           " --algo orig-sp --k 2 --r 16 --seed 9 --out ";
        CHECK(run_cli(s, base + s.path("one.d2fa")) == 0);
        CHECK(run_cli(s, base + s.path("two.d2fa")) == 0);
        CHECK(s.read("one.d2fa") == s.read("two.d2fa"));
        CHECK(!s.read("one.d2fa").empty());
    }
    SUBCASE("unknown algorithm exits 1") {
        CHECK(run_cli(s, "compress --dfa " + s.path("t1.dfa") + " --algo nope --out " +
                             s.path("x.d2fa")) == 1);
    }
    SUBCASE("dense cap exits 1") {
        CHECK(run_cli(s, "compress --dfa " + s.path("t1.dfa") +
                             " --algo orig --dense-cap 2 --out " + s.path("x.d2fa")) == 1);
    }
}

TEST_CASE("cli verify detects planted defects") {
    Scratch s;
    ddfa::Dfa t1 = oracles::toy_t1();
    ddfa::write_dfa(t1, s.path("t1.dfa"));
    REQUIRE(run_cli(s, "compress --dfa " + s.path("t1.dfa") + " --algo orig --out " +
                           s.path("t1.d2fa")) == 0);
    SUBCASE("defect -> exit 2 with witness") {
        ddfa::D2fa d2 = ddfa::read_d2fa(s.path("t1.d2fa"));
        for (auto& row : d2.labeled)
            for (auto& [c, t] : row)
                if (t == 3) t = 1;  // retarget an edge
        ddfa::write_d2fa(d2, s.path("broken.d2fa"));
        CHECK(run_cli(s, "verify --dfa " + s.path("t1.dfa") + " --d2fa " +
                             s.path("broken.d2fa")) == 2);
        CHECK(s.read("stderr.txt").find("not equivalent") != std::string::npos);
    }
    SUBCASE("shape mismatch -> exit 1") {
        ddfa::Dfa other = oracles::dfa_from_rows({{0, 0}}, 0, {});
        ddfa::write_dfa(other, s.path("other.dfa"));
        CHECK(run_cli(s, "verify --dfa " + s.path("other.dfa") + " --d2fa " +
                             s.path("t1.d2fa")) == 1);
        CHECK(s.read("stderr.txt").find("shape mismatch") != std::string::npos);
    }
}

TEST_CASE("cli match flags unresolvable D2FAs via exit 2") {
    Scratch s;
    // Hand-written D2FA whose cycle drops character 1 -> rejected at load.
    s.write("bad.d2fa",
            "D2FA 1\nstates 2\nalphabet 2\nstart 0\naccept 0\ndefault 1 ; 0:0\ndefault 0 ; 0:1\n");
    s.write("in.bin", "\x01");
    CHECK(run_cli(s, "match --d2fa " + s.path("bad.d2fa") + " --input " + s.path("in.bin")) ==
          2);
}

TEST_CASE("cli bench emits CSV rows and a summary") {
    Scratch s;
    CHECK(run_cli(s, "bench --synthetic \"sizes=32,64;clusters=4;noise=0.1;alphabet=16;seed=3\""
                     " --algos orig,orig-sp --seeds 1,2 --k 4 --r 8 --csv " +
                         s.path("rows.csv")) == 0);
    std::string csv = s.read("rows.csv");
    std::size_t lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == 1 + 2 * 2 * 2);  // header + datasets x algos x seeds
    CHECK(csv.rfind("dataset,n,algo,L,k,r,seed,labeled_after,default_count,ratio,"
                    "longest_delay,t_graph_ms,t_forest_ms,t_build_ms,t_total_ms\n",
                    0) == 0);
    std::string out = s.read("stdout.txt");
    CHECK(out.find("summary: sparse vs dense") != std::string::npos);
    CHECK(out.find("orig-sp/orig") != std::string::npos);

    SUBCASE("rows append on a second run") {
        CHECK(run_cli(s, "bench --synthetic \"sizes=32;clusters=4;alphabet=16\" --algos adfa "
                         "--seeds 7 --csv " +
                             s.path("rows.csv")) == 0);
        std::string csv2 = s.read("rows.csv");
        CHECK(std::count(csv2.begin(), csv2.end(), '\n') == std::ptrdiff_t(lines) + 1);
    }
}

TEST_CASE("cli bench continues after per-job failures") {
    Scratch s;
    CHECK(run_cli(s, "bench --synthetic \"sizes=48;clusters=4;alphabet=16\" "
                     "--algos orig,adfa --seeds 1 --dense-cap 8 --csv " +
                         s.path("rows.csv")) == 0);
    std::string out = s.read("stdout.txt");
    CHECK(out.find("# FAIL") != std::string::npos);   // orig hits the dense cap
    std::string csv = s.read("rows.csv");
    CHECK(csv.find("adfa") != std::string::npos);     // adfa row still produced
}
