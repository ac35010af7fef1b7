#include "sunitrec/dyadic.hpp"

#include <cstdlib>

namespace sunitrec {

namespace {
Dyadic unary(Prec p, mpfr_rnd_t r, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), const Dyadic& a) {
    Dyadic out(p);
    fn(out.raw(), a.raw(), r);
    return out;
}
Dyadic binary(Prec p, mpfr_rnd_t r, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t),
              const Dyadic& a, const Dyadic& b) {
    Dyadic out(p);
    fn(out.raw(), a.raw(), b.raw(), r);
    return out;
}
}  // namespace

Dyadic Dyadic::from_mpz_exact(const mpz_class& z) {
    size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    Dyadic d(static_cast<Prec>(bits < 2 ? 2 : bits));
    int t = mpfr_set_z(d.v_, z.get_mpz_t(), MPFR_RNDN);
    if (t != 0) throw InternalError("from_mpz_exact: inexact");
    return d;
}

Dyadic Dyadic::from_mpz(const mpz_class& z, Prec p, mpfr_rnd_t r) {
    Dyadic d(p);
    mpfr_set_z(d.v_, z.get_mpz_t(), r);
    return d;
}

Dyadic Dyadic::from_mpq(const mpq_class& q, Prec p, mpfr_rnd_t r) {
    Dyadic d(p);
    mpfr_set_q(d.v_, q.get_mpq_t(), r);
    return d;
}

Dyadic Dyadic::add(const Dyadic& a, const Dyadic& b, Prec p, mpfr_rnd_t r) { return binary(p, r, mpfr_add, a, b); }
Dyadic Dyadic::sub(const Dyadic& a, const Dyadic& b, Prec p, mpfr_rnd_t r) { return binary(p, r, mpfr_sub, a, b); }
Dyadic Dyadic::mul(const Dyadic& a, const Dyadic& b, Prec p, mpfr_rnd_t r) { return binary(p, r, mpfr_mul, a, b); }

Dyadic Dyadic::div(const Dyadic& a, const Dyadic& b, Prec p, mpfr_rnd_t r) {
    if (b.is_zero()) throw InternalError("Dyadic::div by zero");
    return binary(p, r, mpfr_div, a, b);
}

Dyadic Dyadic::log(const Dyadic& a, Prec p, mpfr_rnd_t r) {
    if (a.sgn() <= 0) throw InternalError("Dyadic::log of nonpositive value");
    return unary(p, r, mpfr_log, a);
}

Dyadic Dyadic::exp(const Dyadic& a, Prec p, mpfr_rnd_t r) { return unary(p, r, mpfr_exp, a); }

Dyadic Dyadic::sqrt(const Dyadic& a, Prec p, mpfr_rnd_t r) {
    if (a.sgn() < 0) throw InternalError("Dyadic::sqrt of negative value");
    return unary(p, r, mpfr_sqrt, a);
}

Dyadic Dyadic::hypot(const Dyadic& a, const Dyadic& b, Prec p, mpfr_rnd_t r) {
    return binary(p, r, mpfr_hypot, a, b);
}

Dyadic Dyadic::pow_ui(const Dyadic& a, unsigned long n, Prec p, mpfr_rnd_t r) {
    Dyadic out(p);
    mpfr_pow_ui(out.raw(), a.raw(), n, r);
    return out;
}

Dyadic Dyadic::neg(const Dyadic& a) {
    Dyadic out(a.prec());
    mpfr_neg(out.raw(), a.raw(), MPFR_RNDN);
    return out;
}

Dyadic Dyadic::abs(const Dyadic& a) {
    Dyadic out(a.prec());
    mpfr_abs(out.raw(), a.raw(), MPFR_RNDN);
    return out;
}

Dyadic Dyadic::mul_2si(const Dyadic& a, long e) {
    Dyadic out(a.prec());
    mpfr_mul_2si(out.raw(), a.raw(), e, MPFR_RNDN);
    return out;
}

mpq_class Dyadic::to_mpq() const {
    if (!is_finite()) throw InternalError("Dyadic::to_mpq on non-finite value");
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
}

std::string Dyadic::str_hex() const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%Ra", v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string Dyadic::str_dec(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Dyadic Dyadic::parse_hex(const std::string& s) {
    Prec p = static_cast<Prec>(4 * s.size() + 16);
    if (p < 64) p = 64;
    Dyadic d(p);
    char* end = nullptr;
    int t = mpfr_strtofr(d.v_, s.c_str(), &end, 0, MPFR_RNDN);
    if (end == s.c_str() || *end != '\0') throw InputError("cannot parse number: " + s);
    if (t != 0) throw InputError("number does not round-trip exactly: " + s);
    return d;
}

}  // namespace sunitrec
