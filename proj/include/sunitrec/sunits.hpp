#pragma once

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <vector>

#include "sunitrec/errors.hpp"

namespace sunitrec {

// Finite set of distinct primes, kept sorted ascending.
struct PrimeSet {
    std::vector<mpz_class> primes;

    size_t size() const { return primes.size(); }
};

// Validates: every element a prime >= 2 (deterministic below 2^64, strong
// probable-prime test above), no duplicates.  An empty set is allowed; the
// only S-units are then +-1.
PrimeSet make_prime_set(std::vector<mpz_class> primes);

// sign * prod primes[i]^exponents[i], sign in {-1, +1}, exponents >= 0.
struct SUnit {
    int sign = 1;
    std::vector<unsigned long> exponents;
    mpz_class value;  // cached product
};

SUnit make_sunit(const PrimeSet& S, int sign, std::vector<unsigned long> exponents);

// Exact factorization of z over S: returns the S-unit equal to z, or nullopt
// if z has a prime factor outside S.  z must be nonzero.
std::optional<SUnit> factor_over_S(const PrimeSet& S, const mpz_class& z);

// All S-units u with |u| <= bound, both signs, sorted by (|value|, sign):
// ascending absolute value, -v immediately before +v.  bound >= 1.
std::vector<SUnit> enumerate_sunits(const PrimeSet& S, const mpz_class& bound);

// Ordering key used throughout: (|value|, sign), negative before positive.
bool sunit_less(const SUnit& x, const SUnit& y);

// Exact size-gap test between two S-units: with eps = u/v > 0, decides
// |x|^(u+v) < |y|^v (strict) or <= (non-strict) over the integers.
bool dominated_by(const SUnit& x, const SUnit& y, const mpq_class& eps, bool strict);

// Streams every tuple (z_1..z_r) of S-units with |z_r| <= zmax such that
// each of z_1..z_{r-1} passes dominated_by(z_i, z_r, eps, strict) and the
// first r-1 entries are nondecreasing in (|value|, sign).  r = 1 streams all
// S-units with |z_1| <= zmax.  The callback returns false to stop early.
void admissible_tuples(const PrimeSet& S, int r, const mpq_class& eps, const mpz_class& zmax,
                       bool strict, const std::function<bool(const std::vector<SUnit>&)>& sink);

}  // namespace sunitrec
