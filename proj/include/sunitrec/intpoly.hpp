#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "sunitrec/ball.hpp"

namespace sunitrec {

// Dense univariate polynomial over Z.  Coefficient i is the coefficient of
// x^i; the vector carries no trailing zeros, and the zero polynomial is the
// empty vector (degree -1).
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { normalize(); }
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly monomial(const mpz_class& coef, size_t deg);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const mpz_class& coeff(size_t i) const;
    const mpz_class& leading() const;
    const std::vector<mpz_class>& coeffs() const { return c_; }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly neg() const;
    IntPoly mul_mpz(const mpz_class& z) const;
    IntPoly mul_xpow(size_t s) const;  // multiply by x^s
    IntPoly derivative() const;

    // gcd of coefficients (nonnegative; 0 for the zero polynomial)
    mpz_class content() const;
    // divided by content, leading coefficient made positive
    IntPoly primitive() const;

    mpz_class eval_z(const mpz_class& x) const;
    Ball eval_ball(const Ball& x, Prec p) const;

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    std::string str(const std::string& var = "x") const;

  private:
    void normalize();
    std::vector<mpz_class> c_;
};

// Quotient of an exact division in Z[x]; returns false if `den` does not
// divide `num` over Z.
bool try_exact_div(const IntPoly& num, const IntPoly& den, IntPoly* quot);
// Same, but throws InternalError when the division is not exact.
IntPoly exact_div(const IntPoly& num, const IntPoly& den);

// Primitive gcd with positive leading coefficient (primitive PRS).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

// Resultant via fraction-free (Bareiss) elimination of the Sylvester matrix.
mpz_class poly_resultant(const IntPoly& a, const IntPoly& b);

// p / gcd(p, p'): same roots, all simple; primitive, positive leading.
IntPoly squarefree_part(const IntPoly& p);

// Yun decomposition: list of (factor, multiplicity) with factors primitive,
// positive-leading, squarefree and pairwise coprime; p equals the product of
// factor^multiplicity up to a rational constant.  Constant factors are
// dropped.  Requires p nonzero.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p);

// q-th cyclotomic polynomial, q >= 1, by iterated exact division of x^q - 1.
IntPoly cyclotomic(unsigned long q);

// For squarefree p of degree k >= 1 with roots a_1..a_k, the polynomial of
// degree k^2 whose roots are all pairwise ratios a_i / a_j (i = j included),
// computed as an interpolated resultant.  Requires p(0) != 0.
IntPoly ratio_poly(const IntPoly& p);

// Same idea with products: roots are all pairwise products a_i * a_j
// (i = j included).  Requires p(0) != 0 and degree >= 1.
IntPoly pair_product_poly(const IntPoly& p);

// Euler totient by trial division (small arguments).
unsigned long euler_phi(unsigned long n);

}  // namespace sunitrec
