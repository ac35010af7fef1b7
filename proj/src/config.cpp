#include "sunitrec/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sunitrec {

namespace {

using njson = nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw InputError("config: field '" + field + "': " + why);
}

mpz_class parse_mpz(const njson& v, const std::string& field) {
    if (!v.is_string()) fail(field, "expected a decimal string");
    const std::string s = v.get<std::string>();
    if (s.empty()) fail(field, "empty integer string");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail(field, "not an integer: '" + s + "'");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') fail(field, "not an integer: '" + s + "'");
    return mpz_class(s, 10);
}

std::vector<mpz_class> parse_mpz_list(const njson& v, const std::string& field) {
    if (!v.is_array()) fail(field, "expected an array of decimal strings");
    std::vector<mpz_class> out;
    for (size_t i = 0; i < v.size(); ++i)
        out.push_back(parse_mpz(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

mpq_class parse_eps(const njson& v, const std::string& field) {
    if (!v.is_string()) fail(field, "expected \"u\" or \"u/v\"");
    const std::string s = v.get<std::string>();
    size_t slash = s.find('/');
    mpz_class u, w = 1;
    try {
        if (slash == std::string::npos) {
            u = parse_mpz(njson(s), field);
        } else {
            u = parse_mpz(njson(s.substr(0, slash)), field);
            w = parse_mpz(njson(s.substr(slash + 1)), field);
        }
    } catch (const InputError&) {
        fail(field, "not a rational: '" + s + "'");
    }
    if (w <= 0) fail(field, "denominator must be positive");
    mpq_class q(u, w);
    q.canonicalize();
    if (q <= 0) fail(field, "epsilon must be positive");
    return q;
}

long parse_long(const njson& v, const std::string& field, long lo, long hi) {
    long x;
    if (v.is_number_integer()) {
        x = v.get<long>();
    } else if (v.is_string()) {
        mpz_class z = parse_mpz(v, field);
        if (!z.fits_slong_p()) fail(field, "out of range");
        x = z.get_si();
    } else {
        fail(field, "expected an integer");
    }
    if (x < lo || x > hi)
        fail(field, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    njson j;
    try {
        j = njson::parse(text);
    } catch (const njson::parse_error& e) {
        throw InputError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw InputError("config: top level must be an object");

    RunConfig cfg;
    if (!j.contains("recurrence") || !j["recurrence"].is_object())
        fail("recurrence", "required object missing");
    const njson& rj = j["recurrence"];
    if (!rj.contains("coefficients")) fail("recurrence.coefficients", "required");
    if (!rj.contains("initials")) fail("recurrence.initials", "required");
    std::vector<mpz_class> coeffs = parse_mpz_list(rj["coefficients"], "recurrence.coefficients");
    std::vector<mpz_class> initials = parse_mpz_list(rj["initials"], "recurrence.initials");
    try {
        cfg.inst.rec = make_recurrence(std::move(coeffs), std::move(initials));
    } catch (const InputError& e) {
        throw InputError(std::string("config: field 'recurrence': ") + e.what());
    }

    if (!j.contains("primes")) fail("primes", "required");
    try {
        cfg.inst.S = make_prime_set(parse_mpz_list(j["primes"], "primes"));
    } catch (const InputError& e) {
        throw InputError(std::string("config: field 'primes': ") + e.what());
    }

    if (j.contains("a")) cfg.inst.a = parse_mpz(j["a"], "a");
    if (j.contains("b")) cfg.inst.b = parse_mpz(j["b"], "b");
    if (j.contains("r")) cfg.inst.r = static_cast<int>(parse_long(j["r"], "r", 1, 1 << 20));
    if (j.contains("epsilon")) cfg.inst.eps = parse_eps(j["epsilon"], "epsilon");
    if (j.contains("strict_dominance")) {
        if (!j["strict_dominance"].is_boolean()) fail("strict_dominance", "expected a boolean");
        cfg.inst.strict_dominance = j["strict_dominance"].get<bool>();
    }
    if (j.contains("nmax"))
        cfg.nmax = static_cast<unsigned long>(parse_long(j["nmax"], "nmax", 0, 1L << 40));
    if (j.contains("zmax")) {
        cfg.zmax = parse_mpz(j["zmax"], "zmax");
        if (*cfg.zmax < 1) fail("zmax", "must be >= 1");
    }
    if (j.contains("moduli")) cfg.moduli = parse_mpz_list(j["moduli"], "moduli");
    if (j.contains("precision_cap"))
        cfg.precision_cap = static_cast<Prec>(
            parse_long(j["precision_cap"], "precision_cap", 64, 1L << 24));

    const std::vector<std::string> known = {
        "recurrence", "primes", "a",    "b",      "r",
        "epsilon",    "strict_dominance", "nmax", "zmax", "moduli",
        "precision_cap"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& kk : known) ok = ok || it.key() == kk;
        if (!ok) fail(it.key(), "unknown field");
    }

    try {
        validate_problem(cfg.inst);
    } catch (const InputError& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace sunitrec
