#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sunitrec/report.hpp"
#include "sunitrec/search.hpp"
#include "testutil.hpp"

using namespace sunitrec;
namespace fs = std::filesystem;

static std::string bin_path() {
    const char* p = std::getenv("SUNITREC_BIN");
    REQUIRE(p != nullptr);
    return p;
}

struct CmdResult {
    int status = -1;
    std::string out;
};

static CmdResult run_cmd(const std::string& args) {
    CmdResult res;
    std::string cmd = "\"" + bin_path() + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[41024];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

static fs::path scratch_dir() {
    static fs::path dir = [] {
        std::string tmpl = (fs::temp_directory_path() / "sunitrec_cli_XXXXXX").string();
        char* made = mkdtemp(tmpl.data());
        REQUIRE(made != nullptr);
        return fs::path(made);
    }();
    return dir;
}

static std::string write_file(const std::string& name, const std::string& text) {
    fs::path p = scratch_dir() / name;
    std::ofstream f(p);
    f << text;
    f.close();
    return p.string();
}

static std::string read_file(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

static std::string config_text(const std::string& coeffs, const std::string& initials,
                               const std::string& primes, const std::string& extra = "") {
    return "{\n"
           "  \"recurrence\": {\"coefficients\": [" + coeffs + "], \"initials\": [" + initials +
           "]},\n"
           "  \"primes\": [" + primes + "],\n"
           "  \"a\": \"1\", \"b\": \"1\", \"r\": 1, \"epsilon\": \"1\"" +
           (extra.empty() ? "" : ",\n  " + extra) + "\n}\n";
}

static std::vector<std::string> record_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        if (line.find("\"type\"") != std::string::npos) continue;  // summary line
        lines.push_back(line);
    }
    return lines;
}

TEST_CASE("version and argument errors") {
    auto v = run_cmd("--version");
    CHECK(v.status == 0);
    CHECK(v.out.find("sunitrec 0.1.0") != std::string::npos);

    CHECK(run_cmd("").status == 2);               // a subcommand is required
    CHECK(run_cmd("frobnicate").status == 2);     // unknown subcommand
    CHECK(run_cmd("analyze").status == 2);        // --config is required
    CHECK(run_cmd("analyze --config /nonexistent/x.json").status == 2);
}

TEST_CASE("analyze reports verdicts") {
    std::string fib = write_file("fib.json", config_text("\"1\", \"1\"", "\"0\", \"1\"",
                                                         "\"2\", \"3\", \"5\""));
    auto text = run_cmd("analyze --config " + fib);
    CHECK(text.status == 0);
    CHECK(text.out.find("dominance") != std::string::npos);

    auto json = run_cmd("analyze --json --config " + fib);
    CHECK(json.status == 0);
    ojson j = ojson::parse(json.out);
    CHECK(j["degenerate"] == false);
    CHECK(j["refusal"].is_null());
    CHECK(j["spectral"]["dominance"] == "dominant");

    std::string dg = write_file("deg.json", config_text("\"0\", \"1\"", "\"0\", \"1\"", "\"2\""));
    auto degen = run_cmd("analyze --json --config " + dg);
    CHECK(degen.status == 0);  // analysis reports, it does not refuse
    CHECK(ojson::parse(degen.out)["refusal"] == "degenerate");

    std::string bad = write_file("bad.json", "{ this is not json");
    CHECK(run_cmd("analyze --config " + bad).status == 2);
    std::string unknown = write_file("unknown.json",
                                     config_text("\"1\", \"1\"", "\"0\", \"1\"", "\"2\"",
                                                 "\"mystery\": 1"));
    CHECK(run_cmd("analyze --config " + unknown).status == 2);
}

TEST_CASE("certify emits a deterministic certificate or a coded refusal") {
    std::string fib = write_file("fib2.json", config_text("\"1\", \"1\"", "\"0\", \"1\"",
                                                          "\"2\", \"3\", \"5\""));
    std::string c1 = (scratch_dir() / "cert1.json").string();
    std::string c2 = (scratch_dir() / "cert2.json").string();
    auto r1 = run_cmd("certify --config " + fib + " --out " + c1);
    CHECK(r1.status == 0);
    CHECK(r1.out.find("N0") != std::string::npos);  // text summary on stdout
    auto r2 = run_cmd("certify --config " + fib + " --out " + c2);
    CHECK(r2.status == 0);
    CHECK(read_file(c1) == read_file(c2));  // byte-identical reports

    ojson cert = ojson::parse(read_file(c1));
    CHECK(cert["version"] == kVersionString);
    CHECK(!cert["N0"].get<std::string>().empty());

    std::string mer = write_file("mer.json", config_text("\"3\", \"-2\"", "\"0\", \"1\"",
                                                         "\"2\""));
    auto refused = run_cmd("certify --json --config " + mer);
    CHECK(refused.status == 3);
    CHECK(refused.out.find("dominant_root_integer_gt1") != std::string::npos);
}

TEST_CASE("search, verify, and the cross-checking loop") {
    std::string fib2 = write_file("fib_s2.json", config_text("\"1\", \"1\"", "\"0\", \"1\"",
                                                             "\"2\""));
    std::string sols = (scratch_dir() / "sols.jsonl").string();
    auto s = run_cmd("search --config " + fib2 + " --nmax 30 --zmax 1048576 --out " + sols);
    CHECK(s.status == 0);

    std::string lines_text = read_file(sols);
    auto lines = record_lines(lines_text);
    CHECK(lines.size() >= 8);
    CHECK(lines_text.find("\"type\":\"summary\"") != std::string::npos);
    for (const auto& line : lines) CHECK_NOTHROW(solution_from_json(ojson::parse(line)));

    // the naive engine produces the identical record stream
    std::string sols2 = (scratch_dir() / "sols_naive.jsonl").string();
    CHECK(run_cmd("search --engine naive --config " + fib2 + " --nmax 30 --zmax 1048576 --out " +
                  sols2).status == 0);
    CHECK(record_lines(read_file(sols2)) == lines);

    // residue pruning must not change the records
    std::string sols3 = (scratch_dir() / "sols_mod.jsonl").string();
    CHECK(run_cmd("search --moduli 5,7 --config " + fib2 + " --nmax 30 --zmax 1048576 --out " +
                  sols3).status == 0);
    CHECK(record_lines(read_file(sols3)) == lines);

    // a config without nmax/zmax cannot search without flags
    CHECK(run_cmd("search --config " + fib2).status == 2);

    // certificate for the same instance, then the full verify loop
    std::string cert = (scratch_dir() / "cert_s2.json").string();
    CHECK(run_cmd("certify --config " + fib2 + " --out " + cert).status == 0);
    auto ok = run_cmd("verify --json --config " + fib2 + " --cert " + cert + " " + sols);
    CHECK(ok.status == 0);
    ojson report = ojson::parse(ok.out);
    CHECK(report["ok"] == true);
    CHECK(report["certificate_checked"] == true);
    CHECK(report["records_checked"].get<long>() == static_cast<long>(lines.size()));
    CHECK(report["failures"].empty());

    // tampering with one record is caught with its line number
    SolutionRecord fake = solution_from_json(ojson::parse(lines[0]));
    fake.lhs_value += 1;
    std::string tampered_path = (scratch_dir() / "tampered.jsonl").string();
    std::ofstream tf(tampered_path);
    tf << lines_text;
    tf << render_json_line(solution_json(fake)) << "\n";
    tf.close();
    auto bad = run_cmd("verify --json --config " + fib2 + " --cert " + cert + " " +
                       tampered_path);
    CHECK(bad.status == 4);
    ojson bad_report = ojson::parse(bad.out);
    CHECK(bad_report["ok"] == false);
    CHECK(!bad_report["failures"].empty());

    // verify without a certificate still validates record arithmetic
    auto nocert = run_cmd("verify --json --config " + fib2 + " " + sols);
    CHECK(nocert.status == 0);
    CHECK(ojson::parse(nocert.out)["certificate_checked"] == false);
}

TEST_CASE("search prints every record to stdout when no output file is given") {
    std::string fib2 = write_file("fib_stdout.json", config_text("\"1\", \"1\"", "\"0\", \"1\"",
                                                                 "\"2\""));
    auto s = run_cmd("search --config " + fib2 + " --nmax 10 --zmax 1024");
    CHECK(s.status == 0);
    auto lines = record_lines(s.out);
    CHECK(!lines.empty());
    for (const auto& line : lines) CHECK_NOTHROW(solution_from_json(ojson::parse(line)));
    CHECK(s.out.find("\"type\"") != std::string::npos);  // summary line included
}
