#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "sunitrec/errors.hpp"

namespace sunitrec {

using Prec = mpfr_prec_t;

// Mantissa bits used for ball radii and other quantities that only need to be
// correct in one direction.
inline constexpr Prec kRadiusPrec = 32;

// Default ceiling for the working-precision ladder of certified routines.
inline constexpr Prec kDefaultPrecCap = 1 << 16;

// Value-semantic wrapper over mpfr_t.  Every Dyadic holds an exact binary
// rational (we never store NaN or infinities); rounding happens only inside
// operations that take an explicit rounding mode.
class Dyadic {
  public:
    explicit Dyadic(Prec p = 64) {
        mpfr_init2(v_, p);
        mpfr_set_zero(v_, 1);
    }
    Dyadic(const Dyadic& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision: exact
    }
    Dyadic(Dyadic&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    Dyadic& operator=(const Dyadic& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Dyadic& operator=(Dyadic&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Dyadic() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    Prec prec() const { return mpfr_get_prec(v_); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    // Exponent e with |x| in [2^(e-1), 2^e); only valid for nonzero values.
    mpfr_exp_t exponent() const { return mpfr_get_exp(v_); }

    // --- exact constructors ---
    static Dyadic of(long v) {
        Dyadic d(64);
        mpfr_set_si(d.v_, v, MPFR_RNDN);
        return d;
    }
    static Dyadic pow2(mpfr_exp_t e) {
        Dyadic d(8);
        mpfr_set_ui_2exp(d.v_, 1, e, MPFR_RNDN);
        return d;
    }
    // Exact conversion; precision adapted to the integer's size.
    static Dyadic from_mpz_exact(const mpz_class& z);

    // --- rounded constructors ---
    static Dyadic from_mpz(const mpz_class& z, Prec p, mpfr_rnd_t r);
    static Dyadic from_mpq(const mpq_class& q, Prec p, mpfr_rnd_t r);

    // --- arithmetic (explicit precision and rounding) ---
    static Dyadic add(const Dyadic& a, const Dyadic& b, Prec p, mpfr_rnd_t r);
    static Dyadic sub(const Dyadic& a, const Dyadic& b, Prec p, mpfr_rnd_t r);
    static Dyadic mul(const Dyadic& a, const Dyadic& b, Prec p, mpfr_rnd_t r);
    static Dyadic div(const Dyadic& a, const Dyadic& b, Prec p, mpfr_rnd_t r);
    static Dyadic log(const Dyadic& a, Prec p, mpfr_rnd_t r);
    static Dyadic exp(const Dyadic& a, Prec p, mpfr_rnd_t r);
    static Dyadic sqrt(const Dyadic& a, Prec p, mpfr_rnd_t r);
    static Dyadic hypot(const Dyadic& a, const Dyadic& b, Prec p, mpfr_rnd_t r);
    static Dyadic pow_ui(const Dyadic& a, unsigned long n, Prec p, mpfr_rnd_t r);

    // --- exact operations (result keeps operand precision) ---
    static Dyadic neg(const Dyadic& a);
    static Dyadic abs(const Dyadic& a);
    static Dyadic mul_2si(const Dyadic& a, long e);

    static const Dyadic& max(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0 ? a : b; }
    static const Dyadic& min(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0 ? a : b; }

    // Exact comparison (values are exact dyadics, so this is decidable).
    static int cmp(const Dyadic& a, const Dyadic& b) { return mpfr_cmp(a.v_, b.v_); }
    static int cmp_si(const Dyadic& a, long v) { return mpfr_cmp_si(a.v_, v); }

    friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const Dyadic& a, const Dyadic& b) { return cmp(a, b) == 0; }

    // Exact rational value.
    mpq_class to_mpq() const;
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Exact hexadecimal form ("0x1.9p+2" style); round-trips via parse_hex.
    std::string str_hex() const;
    // Decimal rendering for humans, `digits` significant digits.
    std::string str_dec(int digits = 20) const;
    static Dyadic parse_hex(const std::string& s);

  private:
    mpfr_t v_;
};

}  // namespace sunitrec
