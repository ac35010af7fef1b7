#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "sunitrec/dyadic.hpp"
#include "sunitrec/heights.hpp"
#include "sunitrec/recurrence.hpp"
#include "sunitrec/rint.hpp"
#include "sunitrec/sunits.hpp"

namespace sunitrec {

// The equation under study: a*U_n + b*U_m = z_1 + ... + z_r with all z_i
// S-units and the size-gap condition |z_i|^(1+eps) < |z_r| for i < r
// (non-strict when strict_dominance is false).
struct ProblemInstance {
    LinearRecurrence rec;
    PrimeSet S;
    mpz_class a = 1;
    mpz_class b = 1;
    int r = 1;
    mpq_class eps = 1;
    bool strict_dominance = true;
};

// Throws InputError unless a,b >= 1, r >= 1, eps > 0.
void validate_problem(const ProblemInstance& inst);

// Inputs for the explicit linear-forms-in-logarithms lower bound.
struct MatveevInput {
    int m = 0;                       // number of logarithms
    int kappa = 1;                   // 1 for totally real data, else 2
    mpz_class D = 1;                 // field degree upper bound
    Dyadic B = Dyadic::of(1);        // max |b_i| over the integer coefficients
    std::vector<Dyadic> A;           // A_i >= max(D*h(psi_i), |log psi_i|, 0.16)
};

// C(m, kappa) = min((1/kappa)*(em/2)^kappa * 30^(m+3) * m^3.5, 2^(6m+20)),
// enclosed with directed rounding.
RInt matveev_C(int m, int kappa);

// Certified lower bound for log|Lambda|:
//   -C(m,kappa) * D^2 * A_1...A_m * log(eD) * log(eB),
// rounded down (more negative).  Throws InputError when some A_i < 0.16 or
// B < 1 ("invalid matveev input").
Dyadic matveev_lower_bound(const MatveevInput& in);

// One resolved constant of the certificate chain.  kind is "chain" when the
// value instantiates a step of the written derivation and "choice" when it
// embodies an implementation decision.
struct TraceEntry {
    std::string name;
    std::string value;
    std::string formula;
    std::string kind;
};

struct HypothesisReport {
    bool nondegenerate = false;
    bool dominant_root_found = false;
    bool dominant_simple = false;
    bool dominant_real_gt1 = false;
    bool dominant_not_integer_gt1 = false;
    bool eta1_nonzero = false;
    std::string scope;
};

// Full certificate: every claim below is certified for solutions in scope.
//   log|z_r| < c7*n + c8                      (all n >= 0)
//   n - m <= gap_constant * log(max(n, 3))    (under the in-scope premise)
//   n <= final_constant * log n for n >= 3, resolved to n <= N0
//   every |z_i| <= 2^Z0_log2
struct BoundCertificate {
    HypothesisReport hypotheses;
    GrowthConstants growth;
    Dyadic c7 = Dyadic::of(0);
    Dyadic c8 = Dyadic::of(0);
    Dyadic gap_constant = Dyadic::of(0);
    Dyadic final_constant = Dyadic::of(0);
    mpz_class N0;
    mpz_class Z0_log2;
    std::vector<TraceEntry> trace;
};

// The (c7, c8) pair of the linear bound on log|z_r|.
std::pair<Dyadic, Dyadic> zr_log_bound(const ProblemInstance& inst, const GrowthConstants& growth,
                                       const BinetForm& bf,
                                       std::vector<TraceEntry>* trace = nullptr);

// Constant C_gap with n - m <= C_gap * log(max(n, 3)) for solutions
// satisfying the large-lhs premise |a*U_n + b*U_m| > (1/2)|eta_1|*alpha_1^n.
Dyadic gap_bound(const ProblemInstance& inst, const GrowthConstants& growth, const BinetForm& bf,
                 const SpectralData& sd, std::vector<TraceEntry>* trace = nullptr);

// Runs every hypothesis check and assembles the whole chain.  Throws
// HypothesisRefusal with codes: "degenerate", "no_dominant_root",
// "dominance_undecided", "dominant_root_integer_gt1",
// "dominant_root_not_real_gt1", "not_constant_lead_coefficient",
// "eta1_uncertified".
BoundCertificate final_bound(const ProblemInstance& inst, Prec prec_cap = kDefaultPrecCap);

// Largest integer N0 such that every integer n >= 1 with n <= c*log n
// satisfies n <= N0 (and N0 >= 2).  c > 0 required.
mpz_class solve_n_log_bound(const Dyadic& c);

}  // namespace sunitrec
