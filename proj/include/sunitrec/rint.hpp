#pragma once

#include <gmpxx.h>

#include <string>

#include "sunitrec/dyadic.hpp"

namespace sunitrec {

// Closed real interval [lo, hi] with exact dyadic endpoints.  All operations
// round outward at the requested precision, so a result always encloses the
// true image of its inputs.
class RInt {
  public:
    RInt() : lo_(Dyadic::of(0)), hi_(Dyadic::of(0)) {}
    RInt(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (Dyadic::cmp(lo_, hi_) > 0) throw InternalError("RInt: lo > hi");
    }

    static RInt point(const Dyadic& d) { return RInt(d, d); }
    static RInt of(long v) { return point(Dyadic::of(v)); }
    static RInt from_mpz(const mpz_class& z, Prec p);
    static RInt from_mpq(const mpq_class& q, Prec p);

    const Dyadic& lo() const { return lo_; }
    const Dyadic& hi() const { return hi_; }

    bool contains_zero() const { return lo_.sgn() <= 0 && hi_.sgn() >= 0; }
    bool is_positive() const { return lo_.sgn() > 0; }
    bool is_negative() const { return hi_.sgn() < 0; }
    bool contains(const mpq_class& q) const;

    // Certified order predicates ("unknown" overlaps return false).
    static bool certainly_lt(const RInt& a, const RInt& b) { return a.hi_ < b.lo_; }
    static bool certainly_le(const RInt& a, const RInt& b) { return a.hi_ <= b.lo_; }

    static RInt add(const RInt& a, const RInt& b, Prec p);
    static RInt sub(const RInt& a, const RInt& b, Prec p);
    static RInt mul(const RInt& a, const RInt& b, Prec p);
    // Divisor must not contain zero.
    static RInt div(const RInt& a, const RInt& b, Prec p);
    static RInt neg(const RInt& a);
    static RInt abs(const RInt& a);
    // Natural log; requires a.lo > 0.
    static RInt log(const RInt& a, Prec p);
    static RInt exp(const RInt& a, Prec p);
    static RInt pow_ui(const RInt& a, unsigned long n, Prec p);
    // a^q via exp(q*log a); requires a.lo > 0.
    static RInt pow_mpq(const RInt& a, const mpq_class& q, Prec p);
    static RInt mul_mpq(const RInt& a, const mpq_class& q, Prec p);

    // Pointwise max/min over both intervals.
    static RInt max(const RInt& a, const RInt& b);
    static RInt min(const RInt& a, const RInt& b);
    static RInt max(const RInt& a, long v) { return max(a, RInt::of(v)); }

    // Enclosures of constants / elementary values.
    static RInt const_e(Prec p);
    static RInt const_pi(Prec p);
    static RInt log_mpz(const mpz_class& z, Prec p);  // z >= 1
    static RInt log_mpq(const mpq_class& q, Prec p);  // q > 0

    std::string str(int digits = 12) const;

  private:
    Dyadic lo_, hi_;
};

}  // namespace sunitrec
