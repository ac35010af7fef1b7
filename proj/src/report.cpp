#include "sunitrec/report.hpp"

#include <sstream>

namespace sunitrec {

namespace {

ojson mpz_list_json(const std::vector<mpz_class>& v) {
    ojson a = ojson::array();
    for (const auto& z : v) a.push_back(z.get_str());
    return a;
}

std::string eps_str(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ojson root_json(const RootCluster& rc) {
    ojson j = ball_json(rc.disk);
    j["multiplicity"] = rc.multiplicity;
    return j;
}

// Three-valued answers for the analysis checklist.
const char* yn(bool b) { return b ? "yes" : "no"; }

}  // namespace

ojson dyadic_json(const Dyadic& d) {
    ojson j;
    j["hex"] = d.str_hex();
    j["dec"] = d.str_dec(20);
    return j;
}

ojson rint_json(const RInt& x) {
    ojson j;
    j["lo"] = dyadic_json(x.lo());
    j["hi"] = dyadic_json(x.hi());
    return j;
}

ojson ball_json(const Ball& b) {
    ojson j;
    j["re"] = dyadic_json(b.re());
    j["im"] = dyadic_json(b.im());
    j["radius"] = dyadic_json(b.rad());
    return j;
}

ojson config_json(const RunConfig& cfg) {
    ojson j;
    ojson rj;
    rj["coefficients"] = mpz_list_json(cfg.inst.rec.coeffs);
    rj["initials"] = mpz_list_json(cfg.inst.rec.initials);
    j["recurrence"] = rj;
    j["primes"] = mpz_list_json(cfg.inst.S.primes);
    j["a"] = cfg.inst.a.get_str();
    j["b"] = cfg.inst.b.get_str();
    j["r"] = cfg.inst.r;
    j["epsilon"] = eps_str(cfg.inst.eps);
    j["strict_dominance"] = cfg.inst.strict_dominance;
    if (cfg.nmax) j["nmax"] = *cfg.nmax;
    if (cfg.zmax) j["zmax"] = cfg.zmax->get_str();
    if (!cfg.moduli.empty()) j["moduli"] = mpz_list_json(cfg.moduli);
    j["precision_cap"] = static_cast<long>(cfg.precision_cap);
    return j;
}

ojson analyze_json(const RunConfig& cfg) {
    const LinearRecurrence& rec = cfg.inst.rec;
    ojson j;
    j["version"] = kVersionString;
    j["command"] = "analyze";
    j["config"] = config_json(cfg);
    j["order"] = rec.order;
    j["char_poly"] = mpz_list_json(char_poly(rec).coeffs());
    j["gamma"] = gamma_value(rec).get_str();

    bool degen = is_degenerate(rec);
    j["degenerate"] = degen;

    ojson cl;
    cl["nondegenerate"] = yn(!degen);
    std::string refusal;
    if (degen) refusal = "degenerate";

    bool have_spectral = false;
    SpectralData sd;
    try {
        sd = spectral_data(rec, cfg.precision_cap);
        have_spectral = true;
    } catch (const PrecisionExhausted&) {
        j["spectral"] = ojson{{"dominance", "undecided"}};
        cl["dominant_root_found"] = "undecided";
        refusal = "dominance_undecided";
    }
    if (have_spectral) {
        ojson sp;
        bool dominant = sd.dominance == DominanceStatus::kDominant;
        sp["dominance"] = dominant ? "dominant" : "none";
        sp["num_distinct"] = sd.num_distinct;
        if (dominant) {
            sp["dominant_index"] = sd.dominant_index;
            sp["dominant_simple"] = sd.dominant_simple;
            sp["dominant_root_integer_gt1"] = sd.dominant_integer_gt1;
        }
        ojson roots = ojson::array();
        for (const auto& rc : sd.roots) roots.push_back(root_json(rc));
        sp["roots"] = roots;
        j["spectral"] = sp;

        cl["dominant_root_found"] = yn(dominant);
        if (!dominant && refusal.empty()) refusal = "no_dominant_root";
        if (dominant) {
            cl["dominant_not_integer_gt1"] = yn(!sd.dominant_integer_gt1);
            if (sd.dominant_integer_gt1 && refusal.empty())
                refusal = "dominant_root_integer_gt1";
            try {
                BinetForm bf = binet_decomposition(rec, sd, cfg.precision_cap);
                cl["dominant_simple"] = "yes";
                cl["eta1_nonzero"] = "yes";
                ojson bn;
                bn["eta1"] = ball_json(bf.eta1);
                ojson cps = ojson::array();
                for (const auto& poly : bf.coeff_polys) {
                    ojson cp = ojson::array();
                    for (const Ball& bz : poly) cp.push_back(ball_json(bz));
                    cps.push_back(cp);
                }
                bn["coefficients"] = cps;
                j["binet"] = bn;
                RInt re = bf.roots[static_cast<size_t>(bf.dominant_index)].disk.real_rint();
                if (re.lo() > Dyadic::of(1))
                    cl["dominant_real_gt1"] = "yes";
                else if (Dyadic::cmp_si(re.hi(), 1) <= 0)
                    cl["dominant_real_gt1"] = "no";
                else
                    cl["dominant_real_gt1"] = "undecided";
            } catch (const HypothesisRefusal& e) {
                cl["dominant_simple"] = e.code == "not_constant_lead_coefficient" ? "no" : "yes";
                cl["eta1_nonzero"] = e.code == "eta1_uncertified" ? "undecided" : "yes";
                if (refusal.empty()) refusal = e.code;
            } catch (const PrecisionExhausted&) {
                cl["dominant_simple"] = "undecided";
                if (refusal.empty()) refusal = "dominance_undecided";
            }
        }
    }
    j["checklist"] = cl;
    if (refusal.empty())
        j["refusal"] = nullptr;
    else
        j["refusal"] = refusal;
    return j;
}

ojson certificate_json(const RunConfig& cfg, const BoundCertificate& cert) {
    ojson j;
    j["version"] = kVersionString;
    j["command"] = "certify";
    j["config"] = config_json(cfg);
    ojson hy;
    hy["nondegenerate"] = cert.hypotheses.nondegenerate;
    hy["dominant_root_found"] = cert.hypotheses.dominant_root_found;
    hy["dominant_simple"] = cert.hypotheses.dominant_simple;
    hy["dominant_real_gt1"] = cert.hypotheses.dominant_real_gt1;
    hy["dominant_not_integer_gt1"] = cert.hypotheses.dominant_not_integer_gt1;
    hy["eta1_nonzero"] = cert.hypotheses.eta1_nonzero;
    hy["scope"] = cert.hypotheses.scope;
    j["hypotheses"] = hy;
    ojson gr;
    gr["c1"] = rint_json(cert.growth.c1);
    gr["c2"] = rint_json(cert.growth.c2);
    gr["c3"] = rint_json(cert.growth.c3);
    gr["c4"] = rint_json(cert.growth.c4);
    gr["n_threshold"] = cert.growth.n_threshold.get_str();
    j["growth"] = gr;
    j["c7"] = dyadic_json(cert.c7);
    j["c8"] = dyadic_json(cert.c8);
    j["gap_constant"] = dyadic_json(cert.gap_constant);
    j["final_constant"] = dyadic_json(cert.final_constant);
    j["N0"] = cert.N0.get_str();
    j["Z0_log2"] = cert.Z0_log2.get_str();
    ojson tr = ojson::array();
    for (const auto& te : cert.trace) {
        ojson e;
        e["name"] = te.name;
        e["value"] = te.value;
        e["formula"] = te.formula;
        e["kind"] = te.kind;
        tr.push_back(e);
    }
    j["constants_trace"] = tr;
    return j;
}

ojson solution_json(const SolutionRecord& rec) {
    ojson j;
    j["n"] = rec.n;
    j["m"] = rec.m;
    ojson zs = ojson::array();
    for (const SUnit& z : rec.summands) {
        ojson zj;
        zj["sign"] = z.sign;
        ojson ex = ojson::array();
        for (unsigned long e : z.exponents) ex.push_back(e);
        zj["exponents"] = ex;
        zj["value"] = z.value.get_str();
        zs.push_back(zj);
    }
    j["summands"] = zs;
    j["lhs"] = rec.lhs_value.get_str();
    j["satisfies_dominance"] = rec.satisfies_dominance;
    j["satisfies_size_hypothesis"] = rec.satisfies_size_hypothesis;
    return j;
}

SolutionRecord solution_from_json(const ojson& j) {
    auto bad = [](const std::string& f) -> InputError {
        return InputError("solution record: bad or missing field '" + f + "'");
    };
    if (!j.is_object()) throw bad("(root)");
    SolutionRecord rec;
    if (!j.contains("n") || !j["n"].is_number_unsigned()) throw bad("n");
    if (!j.contains("m") || !j["m"].is_number_unsigned()) throw bad("m");
    rec.n = j["n"].get<unsigned long>();
    rec.m = j["m"].get<unsigned long>();
    if (!j.contains("summands") || !j["summands"].is_array()) throw bad("summands");
    for (const auto& zj : j["summands"]) {
        if (!zj.is_object()) throw bad("summands[]");
        SUnit z;
        if (!zj.contains("sign") || !zj["sign"].is_number_integer()) throw bad("sign");
        z.sign = zj["sign"].get<int>();
        if (z.sign != 1 && z.sign != -1) throw bad("sign");
        if (!zj.contains("exponents") || !zj["exponents"].is_array()) throw bad("exponents");
        for (const auto& e : zj["exponents"]) {
            if (!e.is_number_unsigned()) throw bad("exponents[]");
            z.exponents.push_back(e.get<unsigned long>());
        }
        if (!zj.contains("value") || !zj["value"].is_string()) throw bad("value");
        try {
            z.value = mpz_class(zj["value"].get<std::string>(), 10);
        } catch (const std::invalid_argument&) {
            throw bad("value");
        }
        rec.summands.push_back(std::move(z));
    }
    if (!j.contains("lhs") || !j["lhs"].is_string()) throw bad("lhs");
    try {
        rec.lhs_value = mpz_class(j["lhs"].get<std::string>(), 10);
    } catch (const std::invalid_argument&) {
        throw bad("lhs");
    }
    if (!j.contains("satisfies_dominance") || !j["satisfies_dominance"].is_boolean())
        throw bad("satisfies_dominance");
    if (!j.contains("satisfies_size_hypothesis") ||
        !j["satisfies_size_hypothesis"].is_boolean())
        throw bad("satisfies_size_hypothesis");
    rec.satisfies_dominance = j["satisfies_dominance"].get<bool>();
    rec.satisfies_size_hypothesis = j["satisfies_size_hypothesis"].get<bool>();
    return rec;
}

CertCheckData cert_check_from_json(const ojson& j) {
    auto bad = [](const std::string& f) -> InputError {
        return InputError("certificate file: bad or missing field '" + f + "'");
    };
    CertCheckData cd;
    auto get_dy = [&](const char* key) -> Dyadic {
        if (!j.contains(key) || !j[key].is_object() || !j[key].contains("hex") ||
            !j[key]["hex"].is_string())
            throw bad(key);
        return Dyadic::parse_hex(j[key]["hex"].get<std::string>());
    };
    cd.c7 = get_dy("c7");
    cd.c8 = get_dy("c8");
    cd.gap_constant = get_dy("gap_constant");
    if (!j.contains("N0") || !j["N0"].is_string()) throw bad("N0");
    try {
        cd.N0 = mpz_class(j["N0"].get<std::string>(), 10);
    } catch (const std::invalid_argument&) {
        throw bad("N0");
    }
    return cd;
}

bool check_zr_bound(const CertCheckData& cd, const SolutionRecord& rec) {
    if (rec.summands.empty()) return false;
    mpz_class az = abs(rec.summands.back().value);
    if (az < 1) return false;
    for (Prec p = 128; p <= (Prec{1} << 14); p *= 2) {
        RInt lhs = RInt::log_mpz(az, p);
        RInt rhs = RInt::add(
            RInt::mul(RInt::point(cd.c7), RInt::from_mpz(mpz_class(rec.n), p), p),
            RInt::point(cd.c8), p);
        if (lhs.hi() < rhs.lo()) return true;
        if (!(lhs.lo() < rhs.hi())) return false;
    }
    throw InternalError("certificate check: z_r bound comparison undecided");
}

bool check_n_bound(const CertCheckData& cd, const SolutionRecord& rec) {
    return mpz_class(rec.n) <= cd.N0;
}

bool check_gap_bound(const CertCheckData& cd, const SolutionRecord& rec) {
    unsigned long diff = rec.n - rec.m;
    mpz_class base = std::max<unsigned long>(rec.n, 3);
    for (Prec p = 128; p <= (Prec{1} << 14); p *= 2) {
        RInt rhs = RInt::mul(RInt::point(cd.gap_constant), RInt::log_mpz(base, p), p);
        Dyadic d = Dyadic::from_mpz(mpz_class(diff), 64, MPFR_RNDN);
        if (d <= rhs.lo()) return true;
        if (d > rhs.hi()) return false;
    }
    throw InternalError("certificate check: gap bound comparison undecided");
}

std::string render_json(const ojson& j) { return j.dump(2) + "\n"; }

std::string render_json_line(const ojson& j) { return j.dump(); }

namespace {

bool is_dyadic_obj(const ojson& j) {
    return j.is_object() && j.size() == 2 && j.contains("hex") && j.contains("dec");
}

std::string scalar_text(const ojson& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void walk_text(const ojson& j, int depth, std::ostream& os) {
    const std::string pad(static_cast<size_t>(depth) * 2, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (is_dyadic_obj(it.value())) {
                os << pad << it.key() << ": " << it.value()["dec"].get<std::string>() << " ["
                   << it.value()["hex"].get<std::string>() << "]\n";
            } else if (it.value().is_object() || it.value().is_array()) {
                os << pad << it.key() << ":\n";
                walk_text(it.value(), depth + 1, os);
            } else {
                os << pad << it.key() << ": " << scalar_text(it.value()) << "\n";
            }
        }
    } else if (j.is_array()) {
        size_t idx = 0;
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << pad << "- [" << idx << "]\n";
                walk_text(v, depth + 1, os);
            } else {
                os << pad << "- " << scalar_text(v) << "\n";
            }
            ++idx;
        }
    } else {
        os << pad << scalar_text(j) << "\n";
    }
}

}  // namespace

std::string render_text(const ojson& j) {
    std::ostringstream os;
    walk_text(j, 0, os);
    return os.str();
}

}  // namespace sunitrec
