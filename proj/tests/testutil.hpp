#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "sunitrec/recurrence.hpp"
#include "sunitrec/rint.hpp"

namespace sunitrec::testutil {

// Exact rational denoted by a decimal literal like "-0.481211825".
inline mpq_class dec(const std::string& s) {
    std::string digits;
    long frac = 0;
    bool seen_dot = false;
    for (char c : s) {
        if (c == '.') {
            seen_dot = true;
            continue;
        }
        digits += c;
        if (seen_dot) ++frac;
    }
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac));
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

// The enclosure lies strictly inside the open interval (lo, hi).
inline bool within(const RInt& x, const std::string& lo, const std::string& hi) {
    return x.lo().to_mpq() > dec(lo) && x.hi().to_mpq() < dec(hi);
}

inline bool within_q(const mpq_class& v, const std::string& lo, const std::string& hi) {
    return v > dec(lo) && v < dec(hi);
}

// Named fixtures used across the suites.
inline LinearRecurrence fib() { return make_recurrence({1, 1}, {0, 1}); }
inline LinearRecurrence pell() { return make_recurrence({2, 1}, {0, 1}); }
inline LinearRecurrence trib() { return make_recurrence({1, 1, 1}, {0, 0, 1}); }
// U_n = 2^n - 1 (roots 2 and 1)
inline LinearRecurrence mersenne() { return make_recurrence({3, -2}, {0, 1}); }
// U_{n+2} = U_n, roots +-1
inline LinearRecurrence deg_pm1() { return make_recurrence({0, 1}, {0, 1}); }
// roots +-i
inline LinearRecurrence deg_pmi() { return make_recurrence({0, -1}, {0, 1}); }
// char poly (x^2-x-1)^2: dominant root of multiplicity two
inline LinearRecurrence double_root() { return make_recurrence({2, 1, -2, -1}, {0, 1, 1, 2}); }
// char poly x^2-x+2: conjugate pair of equal modulus, ratio not a root of unity
inline LinearRecurrence no_dominant() { return make_recurrence({1, -2}, {0, 1}); }
// roots -2 and 1: dominant root real but negative
inline LinearRecurrence neg_dominant() { return make_recurrence({-1, 2}, {0, 1}); }

}  // namespace sunitrec::testutil
