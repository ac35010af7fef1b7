#include "sunitrec/rint.hpp"

#include <array>

namespace sunitrec {

RInt RInt::from_mpz(const mpz_class& z, Prec p) {
    return RInt(Dyadic::from_mpz(z, p, MPFR_RNDD), Dyadic::from_mpz(z, p, MPFR_RNDU));
}

RInt RInt::from_mpq(const mpq_class& q, Prec p) {
    return RInt(Dyadic::from_mpq(q, p, MPFR_RNDD), Dyadic::from_mpq(q, p, MPFR_RNDU));
}

bool RInt::contains(const mpq_class& q) const {
    return mpfr_cmp_q(lo_.raw(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.raw(), q.get_mpq_t()) >= 0;
}

RInt RInt::add(const RInt& a, const RInt& b, Prec p) {
    return RInt(Dyadic::add(a.lo_, b.lo_, p, MPFR_RNDD), Dyadic::add(a.hi_, b.hi_, p, MPFR_RNDU));
}

RInt RInt::sub(const RInt& a, const RInt& b, Prec p) {
    return RInt(Dyadic::sub(a.lo_, b.hi_, p, MPFR_RNDD), Dyadic::sub(a.hi_, b.lo_, p, MPFR_RNDU));
}

RInt RInt::mul(const RInt& a, const RInt& b, Prec p) {
    std::array<const Dyadic*, 2> as = {&a.lo_, &a.hi_};
    std::array<const Dyadic*, 2> bs = {&b.lo_, &b.hi_};
    Dyadic lo = Dyadic::mul(a.lo_, b.lo_, p, MPFR_RNDD);
    Dyadic hi = Dyadic::mul(a.lo_, b.lo_, p, MPFR_RNDU);
    for (const Dyadic* x : as) {
        for (const Dyadic* y : bs) {
            Dyadic d = Dyadic::mul(*x, *y, p, MPFR_RNDD);
            Dyadic u = Dyadic::mul(*x, *y, p, MPFR_RNDU);
            if (d < lo) lo = d;
            if (u > hi) hi = u;
        }
    }
    return RInt(std::move(lo), std::move(hi));
}

RInt RInt::div(const RInt& a, const RInt& b, Prec p) {
    if (b.contains_zero()) throw InternalError("RInt::div: divisor interval contains zero");
    // Invert b (1/x is decreasing on each sign-definite half-line, so
    // [1/hi, 1/lo] works for positive and negative b alike), then multiply.
    Dyadic inv_lo = Dyadic::div(Dyadic::of(1), b.hi_, p, MPFR_RNDD);
    Dyadic inv_hi = Dyadic::div(Dyadic::of(1), b.lo_, p, MPFR_RNDU);
    return mul(a, RInt(std::move(inv_lo), std::move(inv_hi)), p);
}

RInt RInt::neg(const RInt& a) { return RInt(Dyadic::neg(a.hi_), Dyadic::neg(a.lo_)); }

RInt RInt::abs(const RInt& a) {
    if (a.lo_.sgn() >= 0) return a;
    if (a.hi_.sgn() <= 0) return neg(a);
    return RInt(Dyadic::of(0), Dyadic::max(Dyadic::neg(a.lo_), a.hi_));
}

RInt RInt::log(const RInt& a, Prec p) {
    if (a.lo_.sgn() <= 0) throw InternalError("RInt::log requires a positive interval");
    return RInt(Dyadic::log(a.lo_, p, MPFR_RNDD), Dyadic::log(a.hi_, p, MPFR_RNDU));
}

RInt RInt::exp(const RInt& a, Prec p) {
    return RInt(Dyadic::exp(a.lo_, p, MPFR_RNDD), Dyadic::exp(a.hi_, p, MPFR_RNDU));
}

RInt RInt::pow_ui(const RInt& a, unsigned long n, Prec p) {
    if (n == 0) return RInt::of(1);
    if (a.lo_.sgn() >= 0) {
        return RInt(Dyadic::pow_ui(a.lo_, n, p, MPFR_RNDD), Dyadic::pow_ui(a.hi_, n, p, MPFR_RNDU));
    }
    if (n % 2 == 1) {
        RInt m = pow_ui(neg(a), n, p);
        return neg(m);
    }
    // even power of an interval touching or crossing zero
    if (a.hi_.sgn() <= 0) {
        return RInt(Dyadic::pow_ui(a.hi_, n, p, MPFR_RNDD), Dyadic::pow_ui(a.lo_, n, p, MPFR_RNDU));
    }
    const Dyadic& big = Dyadic::max(Dyadic::neg(a.lo_), a.hi_);
    return RInt(Dyadic::of(0), Dyadic::pow_ui(big, n, p, MPFR_RNDU));
}

RInt RInt::pow_mpq(const RInt& a, const mpq_class& q, Prec p) {
    if (a.lo_.sgn() <= 0) throw InternalError("RInt::pow_mpq requires a positive base");
    if (q == 0) return RInt::of(1);
    RInt l = log(a, p);
    RInt s = mul_mpq(l, q, p);
    return exp(s, p);
}

RInt RInt::mul_mpq(const RInt& a, const mpq_class& q, Prec p) {
    return mul(a, from_mpq(q, p), p);
}

RInt RInt::max(const RInt& a, const RInt& b) {
    return RInt(Dyadic::max(a.lo_, b.lo_), Dyadic::max(a.hi_, b.hi_));
}

RInt RInt::min(const RInt& a, const RInt& b) {
    return RInt(Dyadic::min(a.lo_, b.lo_), Dyadic::min(a.hi_, b.hi_));
}

RInt RInt::const_e(Prec p) {
    Dyadic one = Dyadic::of(1);
    return RInt(Dyadic::exp(one, p, MPFR_RNDD), Dyadic::exp(one, p, MPFR_RNDU));
}

RInt RInt::const_pi(Prec p) {
    Dyadic lo(p), hi(p);
    mpfr_const_pi(lo.raw(), MPFR_RNDD);
    mpfr_const_pi(hi.raw(), MPFR_RNDU);
    return RInt(std::move(lo), std::move(hi));
}

RInt RInt::log_mpz(const mpz_class& z, Prec p) {
    if (z < 1) throw InternalError("RInt::log_mpz requires z >= 1");
    return log(from_mpz(z, p), p);
}

RInt RInt::log_mpq(const mpq_class& q, Prec p) {
    if (q <= 0) throw InternalError("RInt::log_mpq requires q > 0");
    return log(from_mpq(q, p), p);
}

std::string RInt::str(int digits) const {
    return "[" + lo_.str_dec(digits) + ", " + hi_.str_dec(digits) + "]";
}

}  // namespace sunitrec
