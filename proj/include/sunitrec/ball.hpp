#pragma once

#include <gmpxx.h>

#include <string>

#include "sunitrec/dyadic.hpp"
#include "sunitrec/rint.hpp"

namespace sunitrec {

// Thrown when a ball operation needs its operand bounded away from zero
// (division, log of modulus) but the disk contains zero.  Callers treat this
// as "raise precision and retry".
struct BallDomainError : Error {
    explicit BallDomainError(const std::string& what) : Error(what) {}
};

// Complex disk {z : |z - (re + i*im)| <= rad} with an exact dyadic midpoint
// and an upward-rounded dyadic radius.  Arithmetic is certified: the result
// disk always contains the exact image of any points of the operand disks.
class Ball {
  public:
    Ball() : re_(Dyadic::of(0)), im_(Dyadic::of(0)), rad_(Dyadic::of(0)) {}
    Ball(Dyadic re, Dyadic im, Dyadic rad)
        : re_(std::move(re)), im_(std::move(im)), rad_(std::move(rad)) {
        if (rad_.sgn() < 0) throw InternalError("Ball: negative radius");
    }

    static Ball zero() { return Ball(); }
    static Ball exact_int(const mpz_class& z) {
        return Ball(Dyadic::from_mpz_exact(z), Dyadic::of(0), Dyadic::of(0));
    }
    static Ball exact_point(Dyadic re, Dyadic im) {
        return Ball(std::move(re), std::move(im), Dyadic::of(0));
    }
    // Rational point rounded to precision p; rounding error goes to the radius.
    static Ball from_mpq(const mpq_class& q, Prec p);
    static Ball from_rint(const RInt& x, Prec p);

    const Dyadic& re() const { return re_; }
    const Dyadic& im() const { return im_; }
    const Dyadic& rad() const { return rad_; }

    bool is_exact() const { return rad_.is_zero(); }

    static Ball add(const Ball& a, const Ball& b, Prec p);
    static Ball sub(const Ball& a, const Ball& b, Prec p);
    static Ball mul(const Ball& a, const Ball& b, Prec p);
    // Requires abs_lower(b) > 0; throws BallDomainError otherwise.
    static Ball div(const Ball& a, const Ball& b, Prec p);
    static Ball neg(const Ball& a);
    static Ball conj(const Ball& a);
    static Ball mul_mpz(const Ball& a, const mpz_class& z, Prec p);
    static Ball pow_ui(const Ball& a, unsigned long n, Prec p);

    // Upper / lower bounds for the modulus over the whole disk (lower bound
    // clamps at zero).
    Dyadic abs_upper() const;
    Dyadic abs_lower() const;
    RInt abs_rint() const { return RInt(abs_lower(), abs_upper()); }

    // Interval containing Re(z) (resp. Im(z)) for every z in the disk.
    RInt real_rint() const;
    RInt imag_rint() const;

    bool contains_zero() const;
    // Exact membership test for a rational point (re + i*im).
    bool contains_point(const mpq_class& re, const mpq_class& im) const;
    bool contains_int(const mpz_class& z) const { return contains_point(mpq_class(z), 0); }

    // Exact squared modulus of the midpoint, for deterministic ordering.
    mpq_class midpoint_norm2() const;

    std::string str(int digits = 12) const;

  private:
    Dyadic re_, im_;
    Dyadic rad_;
};

// Certified disjointness: the two disks provably do not intersect.
bool balls_disjoint(const Ball& a, const Ball& b);

// Deterministic strict ordering on midpoints: descending |midpoint|, ties
// broken by ascending principal argument.  Exact (rational) comparisons.
bool midpoint_order_less(const Ball& a, const Ball& b);

}  // namespace sunitrec
