#pragma once

#include <gmpxx.h>

#include <vector>

#include "sunitrec/ball.hpp"
#include "sunitrec/intpoly.hpp"
#include "sunitrec/recurrence.hpp"
#include "sunitrec/rint.hpp"
#include "sunitrec/roots.hpp"

namespace sunitrec {

// Absolute logarithmic height data on the natural-log scale.  When is_exact,
// value encloses the true height to working precision; otherwise it encloses
// a certified upper bound for it.
struct HeightBound {
    RInt value;
    bool is_exact = false;
};

// Certified growth envelope for a recurrence written as
//   U_n = sum_i f_i(n) alpha_i^n,  deg f_i < m_i:
//   c1  bounds every h(alpha_i) and every coefficient height h(beta_{i,l})
//   c2 <= |f_i(n)| for every n >= 1 with f_i(n) != 0      (use lower end)
//   |f_i(n)| <= c3 * n^(m_i-1) for n >= 1                 (use upper end)
//   |U_n|   <= c4 * n^(k-1) * alpha_1^n for n >= 1        (use upper end)
// Past n_threshold every f_i is dominated by its leading term.
struct GrowthConstants {
    RInt c1, c2, c3, c4;
    mpz_class n_threshold;
};

// Exact height of the rational p/q (normalized internally): log max(|p|, q).
HeightBound height_rational(const mpz_class& p, const mpz_class& q);

// Upper bound for the height of roots[index], computed from the full
// certified root list of f:
//   log M(f) = log|lead(f)| + sum_j mult_j * log max(1, |root_j|),
// an upper bound because the minimal polynomial of the root divides f in
// Z[x] and every factor has measure >= 1.  Exact only when deg f = 1.
HeightBound height_upper_from_poly(const IntPoly& f, const std::vector<RootCluster>& roots,
                                   int index);

// Builds the growth envelope from a certified Binet form.  Coefficient
// heights are bounded through the defining linear system: each beta is a
// quotient of two determinants of integer-entry-bounded matrices (Cramer),
// each determinant bounded via a row-norm product (Hadamard) that is uniform
// over all conjugates, so it bounds the height of these algebraic integers.
GrowthConstants lemma21_constants(const LinearRecurrence& rec, const BinetForm& bf,
                                  const SpectralData& sd);

}  // namespace sunitrec
