#include "sunitrec/ball.hpp"

namespace sunitrec {

namespace {

// Upper bound on the rounding error of a round-to-nearest result at its own
// precision: zero when the ternary flag says "exact", one ulp otherwise.
Dyadic round_slack(const Dyadic& x, int ternary) {
    if (ternary == 0) return Dyadic::of(0);
    if (x.is_zero()) throw InternalError("Ball: inexact underflow to zero");
    return Dyadic::pow2(x.exponent() - x.prec());
}

void rad_accumulate(Dyadic& rad, const Dyadic& extra) {
    mpfr_add(rad.raw(), rad.raw(), extra.raw(), MPFR_RNDU);
}

Dyadic hypot_up(const Dyadic& x, const Dyadic& y) {
    return Dyadic::hypot(x, y, 64, MPFR_RNDU);
}

Dyadic hypot_down(const Dyadic& x, const Dyadic& y) {
    return Dyadic::hypot(x, y, 64, MPFR_RNDD);
}

}  // namespace

Ball Ball::from_mpq(const mpq_class& q, Prec p) {
    Dyadic re(p);
    int t = mpfr_set_q(re.raw(), q.get_mpq_t(), MPFR_RNDN);
    Dyadic rad = round_slack(re, t);
    return Ball(std::move(re), Dyadic::of(0), std::move(rad));
}

Ball Ball::from_rint(const RInt& x, Prec p) {
    Dyadic mid(p);
    int t = mpfr_add(mid.raw(), x.lo().raw(), x.hi().raw(), MPFR_RNDN);
    mid = Dyadic::mul_2si(mid, -1);
    Dyadic half = Dyadic::mul_2si(Dyadic::sub(x.hi(), x.lo(), kRadiusPrec, MPFR_RNDU), -1);
    Dyadic rad(kRadiusPrec);
    mpfr_add(rad.raw(), half.raw(), round_slack(mid, t).raw(), MPFR_RNDU);
    return Ball(std::move(mid), Dyadic::of(0), std::move(rad));
}

Ball Ball::add(const Ball& a, const Ball& b, Prec p) {
    Dyadic re(p), im(p);
    int t1 = mpfr_add(re.raw(), a.re_.raw(), b.re_.raw(), MPFR_RNDN);
    int t2 = mpfr_add(im.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    Dyadic rad(kRadiusPrec);
    mpfr_add(rad.raw(), a.rad_.raw(), b.rad_.raw(), MPFR_RNDU);
    rad_accumulate(rad, round_slack(re, t1));
    rad_accumulate(rad, round_slack(im, t2));
    return Ball(std::move(re), std::move(im), std::move(rad));
}

Ball Ball::sub(const Ball& a, const Ball& b, Prec p) { return add(a, neg(b), p); }

Ball Ball::mul(const Ball& a, const Ball& b, Prec p) {
    Dyadic re(p), im(p);
    // re = a.re*b.re - a.im*b.im ; im = a.re*b.im + a.im*b.re, one rounding each
    int t1 = mpfr_fmms(re.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    int t2 = mpfr_fmma(im.raw(), a.re_.raw(), b.im_.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
    // |z*w - mz*mw| <= |mz|*rw + |mw|*rz + rz*rw for z,w in the disks
    Dyadic au = hypot_up(a.re_, a.im_);
    Dyadic bu = hypot_up(b.re_, b.im_);
    Dyadic rad(kRadiusPrec);
    mpfr_fmma(rad.raw(), au.raw(), b.rad_.raw(), bu.raw(), a.rad_.raw(), MPFR_RNDU);
    Dyadic rr(kRadiusPrec);
    mpfr_mul(rr.raw(), a.rad_.raw(), b.rad_.raw(), MPFR_RNDU);
    rad_accumulate(rad, rr);
    rad_accumulate(rad, round_slack(re, t1));
    rad_accumulate(rad, round_slack(im, t2));
    return Ball(std::move(re), std::move(im), std::move(rad));
}

Ball Ball::div(const Ball& a, const Ball& b, Prec p) {
    // need |mid(b)| - rad(b) > 0 so the divisor disk excludes zero
    Dyadic mlo = hypot_down(b.re_, b.im_);
    Dyadic gap = Dyadic::sub(mlo, b.rad_, 64, MPFR_RNDD);
    if (gap.sgn() <= 0) throw BallDomainError("Ball::div: divisor disk not separated from zero");

    // exact rational quotient of the midpoints
    mpq_class zr = a.re_.to_mpq(), zi = a.im_.to_mpq();
    mpq_class wr = b.re_.to_mpq(), wi = b.im_.to_mpq();
    mpq_class den = wr * wr + wi * wi;
    mpq_class qre = (zr * wr + zi * wi) / den;
    mpq_class qim = (zi * wr - zr * wi) / den;

    Dyadic re(p), im(p);
    int t1 = mpfr_set_q(re.raw(), qre.get_mpq_t(), MPFR_RNDN);
    int t2 = mpfr_set_q(im.raw(), qim.get_mpq_t(), MPFR_RNDN);

    // |z/w - mz/mw| <= (rz*|mw| + |mz|*rw) / (|mw| * (|mw| - rw))
    Dyadic mwu = hypot_up(b.re_, b.im_);
    Dyadic mzu = hypot_up(a.re_, a.im_);
    Dyadic num(kRadiusPrec);
    mpfr_fmma(num.raw(), a.rad_.raw(), mwu.raw(), mzu.raw(), b.rad_.raw(), MPFR_RNDU);
    Dyadic dd(64);
    mpfr_mul(dd.raw(), mlo.raw(), gap.raw(), MPFR_RNDD);
    Dyadic rad(kRadiusPrec);
    mpfr_div(rad.raw(), num.raw(), dd.raw(), MPFR_RNDU);
    rad_accumulate(rad, round_slack(re, t1));
    rad_accumulate(rad, round_slack(im, t2));
    return Ball(std::move(re), std::move(im), std::move(rad));
}

Ball Ball::neg(const Ball& a) { return Ball(Dyadic::neg(a.re_), Dyadic::neg(a.im_), a.rad_); }

Ball Ball::conj(const Ball& a) { return Ball(a.re_, Dyadic::neg(a.im_), a.rad_); }

Ball Ball::mul_mpz(const Ball& a, const mpz_class& z, Prec p) {
    return mul(a, exact_int(z), p);
}

Ball Ball::pow_ui(const Ball& a, unsigned long n, Prec p) {
    if (n == 0) return exact_int(1);
    Ball acc = exact_int(1);
    Ball base = a;
    bool acc_used = false;
    while (n > 0) {
        if (n & 1) {
            acc = acc_used ? mul(acc, base, p) : base;
            acc_used = true;
        }
        n >>= 1;
        if (n > 0) base = mul(base, base, p);
    }
    return acc;
}

Dyadic Ball::abs_upper() const {
    Dyadic h = hypot_up(re_, im_);
    return Dyadic::add(h, rad_, 64, MPFR_RNDU);
}

Dyadic Ball::abs_lower() const {
    Dyadic h = hypot_down(re_, im_);
    Dyadic d = Dyadic::sub(h, rad_, 64, MPFR_RNDD);
    return d.sgn() < 0 ? Dyadic::of(0) : d;
}

RInt Ball::real_rint() const {
    Prec p = re_.prec() < 64 ? 64 : re_.prec();
    return RInt(Dyadic::sub(re_, rad_, p, MPFR_RNDD), Dyadic::add(re_, rad_, p, MPFR_RNDU));
}

RInt Ball::imag_rint() const {
    Prec p = im_.prec() < 64 ? 64 : im_.prec();
    return RInt(Dyadic::sub(im_, rad_, p, MPFR_RNDD), Dyadic::add(im_, rad_, p, MPFR_RNDU));
}

bool Ball::contains_zero() const { return midpoint_norm2() <= rad_.to_mpq() * rad_.to_mpq(); }

bool Ball::contains_point(const mpq_class& re, const mpq_class& im) const {
    mpq_class dx = re_.to_mpq() - re;
    mpq_class dy = im_.to_mpq() - im;
    mpq_class r = rad_.to_mpq();
    return dx * dx + dy * dy <= r * r;
}

mpq_class Ball::midpoint_norm2() const {
    mpq_class x = re_.to_mpq(), y = im_.to_mpq();
    return x * x + y * y;
}

std::string Ball::str(int digits) const {
    return "(" + re_.str_dec(digits) + " + " + im_.str_dec(digits) + "*i +- " +
           rad_.str_dec(6) + ")";
}

bool balls_disjoint(const Ball& a, const Ball& b) {
    mpq_class dx = a.re().to_mpq() - b.re().to_mpq();
    mpq_class dy = a.im().to_mpq() - b.im().to_mpq();
    mpq_class s = a.rad().to_mpq() + b.rad().to_mpq();
    return dx * dx + dy * dy > s * s;
}

bool midpoint_order_less(const Ball& a, const Ball& b) {
    mpq_class na = a.midpoint_norm2(), nb = b.midpoint_norm2();
    if (na != nb) return na > nb;  // larger modulus first
    // Equal modulus: ascending principal argument in (-pi, pi].
    auto group = [](const Ball& x) {
        int sim = x.im().sgn();
        if (sim < 0) return 0;                // (-pi, 0)
        if (sim == 0 && x.re().sgn() >= 0) return 1;  // arg 0 (or origin)
        if (sim > 0) return 2;                // (0, pi)
        return 3;                             // arg pi
    };
    int ga = group(a), gb = group(b);
    if (ga != gb) return ga < gb;
    if (ga == 1 || ga == 3) return false;  // same ray + same modulus: equal midpoints
    // Within one open half-plane arg(a) < arg(b) iff a x b > 0.
    mpq_class cross = a.re().to_mpq() * b.im().to_mpq() - b.re().to_mpq() * a.im().to_mpq();
    return cross > 0;
}

}  // namespace sunitrec
