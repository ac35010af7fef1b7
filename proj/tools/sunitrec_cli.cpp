#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sunitrec/config.hpp"
#include "sunitrec/report.hpp"
#include "sunitrec/search.hpp"

namespace {

using namespace sunitrec;

void write_out(const std::string& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open output file '" + path + "'");
    f << data;
}

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    bool json = false;
};

// --out gets the JSON and stdout the text rendering; without --out, stdout
// carries either form depending on --json.
void emit_report(const ojson& j, const CommonArgs& c) {
    if (!c.out_path.empty()) {
        write_out(c.out_path, render_json(j));
        std::cout << render_text(j);
    } else if (c.json) {
        std::cout << render_json(j);
    } else {
        std::cout << render_text(j);
    }
}

int run_analyze(const CommonArgs& c) {
    RunConfig cfg = load_config(c.config_path);
    emit_report(analyze_json(cfg), c);
    return 0;
}

int run_certify(const CommonArgs& c, long prec_override) {
    RunConfig cfg = load_config(c.config_path);
    if (prec_override > 0) cfg.precision_cap = static_cast<Prec>(prec_override);
    std::string code, detail;
    try {
        BoundCertificate cert = final_bound(cfg.inst, cfg.precision_cap);
        emit_report(certificate_json(cfg, cert), c);
        return 0;
    } catch (const HypothesisRefusal& e) {
        code = e.code;
        detail = e.what();
    } catch (const PrecisionExhausted& e) {
        code = "precision_exhausted";
        detail = e.what();
    }
    ojson j;
    j["version"] = kVersionString;
    j["command"] = "certify";
    j["config"] = config_json(cfg);
    j["refusal"] = code;
    j["detail"] = detail;
    emit_report(j, c);
    return 3;
}

struct SearchArgs {
    long nmax = -1;
    std::string zmax;
    std::string moduli_csv;
    std::string engine = "mitm";
    bool filter_dominant = false;
    bool no_prefilter = false;
};

int run_search(const CommonArgs& c, const SearchArgs& sa) {
    RunConfig cfg = load_config(c.config_path);
    if (sa.nmax >= 0) cfg.nmax = static_cast<unsigned long>(sa.nmax);
    if (!sa.zmax.empty()) {
        try {
            cfg.zmax = mpz_class(sa.zmax, 10);
        } catch (const std::invalid_argument&) {
            throw InputError("--zmax: not an integer: '" + sa.zmax + "'");
        }
    }
    if (!sa.moduli_csv.empty()) {
        cfg.moduli.clear();
        std::stringstream ss(sa.moduli_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                cfg.moduli.push_back(mpz_class(tok, 10));
            } catch (const std::invalid_argument&) {
                throw InputError("--moduli: not an integer: '" + tok + "'");
            }
        }
    }
    if (!cfg.nmax) throw InputError("search: nmax required (config field or --nmax)");
    if (!cfg.zmax) throw InputError("search: zmax required (config field or --zmax)");

    std::optional<ResiduePrefilter> pf;
    if (!sa.no_prefilter && !cfg.moduli.empty())
        pf.emplace(cfg.inst, *cfg.nmax, cfg.moduli);

    SearchStats stats;
    SearchOptions opt;
    opt.nmax = *cfg.nmax;
    opt.zmax = *cfg.zmax;
    opt.filter_dominant = sa.filter_dominant;
    opt.prefilter = pf ? &*pf : nullptr;
    opt.stats = &stats;
    std::vector<SolutionRecord> sols = sa.engine == "naive"
                                           ? brute_solutions_naive(cfg.inst, opt)
                                           : brute_solutions(cfg.inst, opt);

    std::string lines;
    for (const auto& rec : sols) lines += render_json_line(solution_json(rec)) + "\n";
    ojson summary;
    summary["type"] = "summary";
    summary["version"] = kVersionString;
    summary["command"] = "search";
    summary["config"] = config_json(cfg);
    summary["engine"] = stats.naive_fallback ? "naive" : "mitm";
    summary["filter_dominant"] = sa.filter_dominant;
    summary["solutions"] = sols.size();
    summary["pairs_total"] = stats.pairs_total;
    summary["pairs_pruned_residue"] = stats.pairs_pruned_residue;
    summary["pairs_pruned_size"] = stats.pairs_pruned_size;
    summary["tuples_checked"] = stats.tuples_checked;
    summary["prefilter_active_moduli"] = pf ? pf->active_count() : 0;
    lines += render_json_line(summary) + "\n";

    if (!c.out_path.empty()) {
        write_out(c.out_path, lines);
        std::cout << render_text(summary);
    } else {
        std::cout << lines;
    }
    return 0;
}

int run_verify(const CommonArgs& c, const std::string& solutions_path,
               const std::string& cert_path) {
    RunConfig cfg = load_config(c.config_path);
    std::optional<CertCheckData> cd;
    if (!cert_path.empty()) {
        std::ifstream cf(cert_path, std::ios::binary);
        if (!cf) throw InputError("cannot open certificate file '" + cert_path + "'");
        std::ostringstream ss;
        ss << cf.rdbuf();
        ojson cj;
        try {
            cj = ojson::parse(ss.str());
        } catch (const ojson::parse_error& e) {
            throw InputError(std::string("certificate file: JSON parse error: ") + e.what());
        }
        cd = cert_check_from_json(cj);
    }

    std::ifstream in(solutions_path, std::ios::binary);
    if (!in) throw InputError("cannot open solutions file '" + solutions_path + "'");

    ojson failures = ojson::array();
    unsigned long line_no = 0, checked = 0;
    std::string line;
    auto add_fail = [&](unsigned long ln, const std::string& why) {
        ojson f;
        f["line"] = ln;
        f["reason"] = why;
        failures.push_back(f);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ojson j;
        try {
            j = ojson::parse(line);
        } catch (const ojson::parse_error& e) {
            add_fail(line_no, std::string("JSON parse error: ") + e.what());
            continue;
        }
        if (j.is_object() && j.contains("type") && j["type"] == "summary") continue;
        ++checked;
        SolutionRecord rec;
        try {
            rec = solution_from_json(j);
        } catch (const InputError& e) {
            add_fail(line_no, e.what());
            continue;
        }
        if (!verify_solution(cfg.inst, rec)) {
            add_fail(line_no, "record does not verify against the instance");
            continue;
        }
        if (cd) {
            if (rec.satisfies_dominance && !check_zr_bound(*cd, rec))
                add_fail(line_no, "certificate: log|z_r| < c7*n + c8 violated");
            if (rec.satisfies_dominance && rec.satisfies_size_hypothesis) {
                if (!check_n_bound(*cd, rec)) add_fail(line_no, "certificate: n <= N0 violated");
                if (!check_gap_bound(*cd, rec))
                    add_fail(line_no, "certificate: gap bound violated");
            }
        }
    }
    ojson j;
    j["version"] = kVersionString;
    j["command"] = "verify";
    j["config"] = config_json(cfg);
    j["records_checked"] = checked;
    j["certificate_checked"] = static_cast<bool>(cd);
    j["failures"] = failures;
    j["ok"] = failures.empty();
    emit_report(j, c);
    return failures.empty() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified solution bounds and exhaustive search for S-unit sums of "
                 "linear-recurrence terms"};
    app.set_version_flag("--version", std::string(kVersionString));
    app.require_subcommand(1);

    CommonArgs ca, cc, cs, cv;
    long prec_override = -1;
    SearchArgs sa;
    std::string solutions_path, cert_path;

    CLI::App* an = app.add_subcommand("analyze", "classify the recurrence and its roots");
    an->add_option("--config", ca.config_path, "problem configuration JSON")->required();
    an->add_option("--out", ca.out_path, "write the JSON report here");
    an->add_flag("--json", ca.json, "print JSON instead of text");

    CLI::App* ce = app.add_subcommand("certify", "produce the solution-bound certificate");
    ce->add_option("--config", cc.config_path, "problem configuration JSON")->required();
    ce->add_option("--out", cc.out_path, "write the certificate JSON here");
    ce->add_flag("--json", cc.json, "print JSON instead of text");
    ce->add_option("--precision-cap", prec_override, "override the precision cap (bits)");

    CLI::App* se = app.add_subcommand("search", "enumerate all desk-scale solutions");
    se->add_option("--config", cs.config_path, "problem configuration JSON")->required();
    se->add_option("--out", cs.out_path, "write solution JSON lines here");
    se->add_option("--nmax", sa.nmax, "largest index n to scan");
    se->add_option("--zmax", sa.zmax, "largest |z_i| (decimal string)");
    se->add_option("--moduli", sa.moduli_csv, "comma-separated prefilter moduli");
    se->add_option("--engine", sa.engine, "mitm (default) or naive")
        ->check(CLI::IsMember({"mitm", "naive"}));
    se->add_flag("--filter-dominant", sa.filter_dominant,
                 "keep only records meeting the size-gap condition");
    se->add_flag("--no-prefilter", sa.no_prefilter, "ignore configured moduli");

    CLI::App* ve = app.add_subcommand("verify", "recheck a solutions file");
    ve->add_option("--config", cv.config_path, "problem configuration JSON")->required();
    ve->add_option("--out", cv.out_path, "write the JSON report here");
    ve->add_flag("--json", cv.json, "print JSON instead of text");
    ve->add_option("solutions", solutions_path, "solution JSON-lines file")->required();
    ve->add_option("--cert", cert_path, "certificate JSON to cross-check against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (an->parsed()) return run_analyze(ca);
        if (ce->parsed()) return run_certify(cc, prec_override);
        if (se->parsed()) return run_search(cs, sa);
        if (ve->parsed()) return run_verify(cv, solutions_path, cert_path);
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisRefusal& e) {
        std::cerr << "refused (" << e.code << "): " << e.what() << "\n";
        return 3;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "refused (precision_exhausted): " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
