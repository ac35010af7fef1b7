#pragma once

#include <vector>

#include "sunitrec/intpoly.hpp"
#include "sunitrec/roots.hpp"

namespace sunitrec {

// Integer linear recurrence U_{n+k} = a_1 U_{n+k-1} + ... + a_k U_n with
// initial terms U_0..U_{k-1}.  Invariants enforced by make_recurrence:
// k >= 1, a_k != 0 (exact order), initial terms not all zero.
struct LinearRecurrence {
    int order = 0;
    std::vector<mpz_class> coeffs;    // a_1..a_k
    std::vector<mpz_class> initials;  // U_0..U_{k-1}
};

LinearRecurrence make_recurrence(std::vector<mpz_class> coeffs, std::vector<mpz_class> initials);

// x^k - a_1 x^(k-1) - ... - a_k
IntPoly char_poly(const LinearRecurrence& rec);

mpz_class term(const LinearRecurrence& rec, unsigned long n);
// U_0..U_N
std::vector<mpz_class> terms_upto(const LinearRecurrence& rec, unsigned long N);

// max(|a_i|, |U_j|, 1): a single "size of the data" constant.
mpz_class gamma_value(const LinearRecurrence& rec);

// Exact test: does some ratio of distinct characteristic roots lie on the
// unit circle at a root of unity?  (Cyclotomic divisor scan of the ratio
// polynomial; no floating point involved.)
bool is_degenerate(const LinearRecurrence& rec);

enum class DominanceStatus {
    kDominant,        // unique root of strictly largest modulus, certified
    kNoDominantRoot,  // two or more roots share the largest modulus, certified
};

struct SpectralData {
    IntPoly poly;                    // characteristic polynomial
    std::vector<RootCluster> roots;  // distinct roots, deterministic order
    int num_distinct = 0;
    DominanceStatus dominance = DominanceStatus::kNoDominantRoot;
    int dominant_index = -1;          // into roots, when kDominant
    bool dominant_simple = false;     // multiplicity one
    bool dominant_integer_gt1 = false;  // dominant root is a rational integer > 1
    Prec prec = 0;                    // working precision the disks were made at
};

// Certified spectral analysis.  Always decides dominance exactly (modulus
// ties are resolved through the pair-product polynomial, whose roots the
// squared moduli are), or throws PrecisionExhausted at the cap.
SpectralData spectral_data(const LinearRecurrence& rec, Prec prec_cap = kDefaultPrecCap);

// Exponential-polynomial expansion of U_n over the distinct characteristic
// roots: U_n = sum_i f_i(n) alpha_i^n where deg f_i < multiplicity(alpha_i).
// `roots` is a refined snapshot of the clusters (own deterministic order),
// `coeff_polys[i][l]` encloses the coefficient of n^l in f_i, and `eta1`
// encloses the constant dominant coefficient f_dom (certified nonzero).
struct BinetForm {
    std::vector<RootCluster> roots;
    int dominant_index = -1;
    std::vector<std::vector<Ball>> coeff_polys;
    Ball eta1;
    Prec prec = 0;
};

// Requires sd.dominance == kDominant.  Throws HypothesisRefusal with code
// "not_constant_lead_coefficient" when the dominant root is not simple, and
// "eta1_uncertified" when the dominant coefficient cannot be certified
// nonzero below the cap.  The result is self-checked: the expansion's disks
// must contain the exact terms U_0..U_50.
BinetForm binet_decomposition(const LinearRecurrence& rec, const SpectralData& sd,
                              Prec prec_cap = kDefaultPrecCap);

// Enclosure of sum_i f_i(n) alpha_i^n at working precision p.
Ball binet_eval(const BinetForm& bf, unsigned long n, Prec p);

}  // namespace sunitrec
