#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sunitrec/bounds.hpp"
#include "sunitrec/config.hpp"
#include "sunitrec/search.hpp"

namespace sunitrec {

// Version stamp embedded in every report.
inline constexpr const char* kVersionString = "sunitrec 0.1.0";

using ojson = nlohmann::ordered_json;

// Every value below serializes deterministically: dyadics carry an exact hex
// form (round-trippable) next to a 20-digit decimal rendering; big integers
// are decimal strings; key order is fixed.
ojson dyadic_json(const Dyadic& d);
ojson rint_json(const RInt& x);
ojson ball_json(const Ball& b);
ojson config_json(const RunConfig& cfg);

// Full analysis report: characteristic polynomial, certified roots,
// dominance and degeneracy verdicts, the exponential-polynomial coefficients
// when available, and the hypothesis checklist (with the refusal code when
// one fires).  Never throws on a negative verdict.
ojson analyze_json(const RunConfig& cfg);

ojson certificate_json(const RunConfig& cfg, const BoundCertificate& cert);

// One search result as a single JSON object (used as a JSON line).
ojson solution_json(const SolutionRecord& rec);
// Inverse of solution_json; throws InputError naming the bad field.
SolutionRecord solution_from_json(const ojson& j);

// The certificate facts needed to cross-check solutions, recovered from a
// certificate report (exact: dyadics come back through their hex form).
struct CertCheckData {
    Dyadic c7 = Dyadic::of(0);
    Dyadic c8 = Dyadic::of(0);
    Dyadic gap_constant = Dyadic::of(0);
    mpz_class N0;
};
CertCheckData cert_check_from_json(const ojson& j);

// Certified checks of one record against a certificate.  `in_scope` means
// both record flags hold; the z_r bound needs only the gap condition flag.
bool check_zr_bound(const CertCheckData& cd, const SolutionRecord& rec);
bool check_n_bound(const CertCheckData& cd, const SolutionRecord& rec);
bool check_gap_bound(const CertCheckData& cd, const SolutionRecord& rec);

// Canonical serializations: reports use two-space indentation plus a final
// newline; lines are compact single-line JSON.
std::string render_json(const ojson& j);
std::string render_json_line(const ojson& j);
// Plain-text rendering of the same JSON tree (pure function of it).
std::string render_text(const ojson& j);

}  // namespace sunitrec
