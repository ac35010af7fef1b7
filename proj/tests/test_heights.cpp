#include <vector>

#include "doctest.h"
#include "sunitrec/heights.hpp"
#include "sunitrec/recurrence.hpp"
#include "sunitrec/roots.hpp"
#include "testutil.hpp"

using namespace sunitrec;
namespace tu = sunitrec::testutil;
using testutil::dec;
using testutil::within;

TEST_CASE("rational heights are exact") {
    auto h0 = height_rational(0, 1);
    CHECK(h0.is_exact);
    CHECK(h0.value.contains(mpq_class(0)));
    CHECK(height_rational(1, 1).value.contains(mpq_class(0)));
    CHECK(height_rational(-1, 1).value.contains(mpq_class(0)));

    auto h32 = height_rational(3, 2);
    CHECK(h32.is_exact);
    CHECK(within(h32.value, "1.098612288668109691", "1.098612288668109692"));  // log 3

    auto h84 = height_rational(-8, 2);  // normalizes to -4
    CHECK(within(h84.value, "1.386294361119890618", "1.386294361119890619"));  // log 4

    // gcd invariance down to identical endpoints
    auto a = height_rational(6, 4);
    auto b = height_rational(3, 2);
    CHECK(Dyadic::cmp(a.value.lo(), b.value.lo()) == 0);
    CHECK(Dyadic::cmp(a.value.hi(), b.value.hi()) == 0);
}

TEST_CASE("height is symmetric under reciprocal on random reduced fractions") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(97531ul);
    int done = 0;
    while (done < 50) {
        mpz_class p = mpz_class(rng.get_z_bits(40)) + 1;
        mpz_class q = mpz_class(rng.get_z_bits(40)) + 1;
        mpz_class g = gcd(p, q);
        p /= g;
        q /= g;
        if (rng.get_z_range(2) == 0) p = -p;
        auto hpq = height_rational(p, q);
        auto hqp = height_rational(p < 0 ? -q : q, abs(p));  // reciprocal, denominator kept positive
        CHECK(hpq.is_exact);
        CHECK(Dyadic::cmp(hpq.value.lo(), hqp.value.lo()) == 0);
        CHECK(Dyadic::cmp(hpq.value.hi(), hqp.value.hi()) == 0);
        // the enclosed value is log max(|p|, q), certified via exp
        mpz_class big = abs(p) > q ? abs(p) : q;
        CHECK(RInt::exp(hpq.value, 192).contains(mpq_class(big)));
        ++done;
    }
}

TEST_CASE("polynomial height bounds hit the Mahler measure") {
    Dyadic target = Dyadic::pow2(-120);

    IntPoly lin({-2, 1});  // x - 2
    auto rl = certified_roots(lin, target);
    auto hb = height_upper_from_poly(lin, rl, 0);
    CHECK(hb.is_exact);
    CHECK(within(hb.value, "0.693147180559945309", "0.693147180559945310"));

    IntPoly golden({-1, -1, 1});  // measure = golden ratio
    auto rg = certified_roots(golden, target);
    auto hg = height_upper_from_poly(golden, rg, 0);
    CHECK(!hg.is_exact);
    CHECK(within(hg.value, "0.481211825059603446", "0.481211825059603448"));
    // same bound whichever root is asked about (measure is global)
    auto hg1 = height_upper_from_poly(golden, rg, 1);
    CHECK(Dyadic::cmp(hg.value.hi(), hg1.value.hi()) == 0);

    IntPoly sq2({-2, 0, 1});  // both roots modulus sqrt(2): measure 2
    auto rs = certified_roots(sq2, target);
    auto hs = height_upper_from_poly(sq2, rs, 0);
    CHECK(within(hs.value, "0.693147180559945", "0.693147180559946"));

    IntPoly five({-5, 1});
    auto rf = certified_roots(five, target);
    CHECK(within(height_upper_from_poly(five, rf, 0).value, "1.609437912434100",
                 "1.609437912434101"));  // log 5
}

TEST_CASE("growth envelope of the golden recurrence") {
    auto rec = tu::fib();
    auto sd = spectral_data(rec);
    auto bf = binet_decomposition(rec, sd);
    auto g = lemma21_constants(rec, bf, sd);

    CHECK(g.c1.hi().sgn() > 0);
    CHECK(g.c2.lo().sgn() > 0);
    CHECK(g.n_threshold >= 1);

    // both coefficients have modulus 1/sqrt(5): c2 lower end stays below it,
    // c3 upper end covers the sum bound 2/sqrt(5)
    mpq_class c2q = g.c2.lo().to_mpq();
    CHECK(c2q * c2q <= mpq_class(1, 5));
    CHECK(c2q > dec("0.44"));
    mpq_class c3q = g.c3.hi().to_mpq();
    CHECK(c3q * c3q * 5 >= 4);
    // c4 folds in the term count (t = 2 here)
    CHECK(g.c4.hi().to_mpq() == 2 * c3q);
}

// The last summand of the envelope check: |U_n| <= c4 * n^(k-1) * alpha1^n,
// c2 <= |f_i(n)| <= c3 * n^(m_i-1), all certified through exact rationals.
static void check_growth(const LinearRecurrence& rec, unsigned long upto) {
    auto sd = spectral_data(rec);
    auto bf = binet_decomposition(rec, sd);
    auto g = lemma21_constants(rec, bf, sd);
    const Prec p = 320;
    const int k = rec.order;

    RInt alpha = bf.roots[bf.dominant_index].disk.real_rint();
    REQUIRE(alpha.lo().to_mpq() > 1);
    RInt apow = RInt::point(Dyadic::of(1));

    mpq_class c2q = g.c2.lo().to_mpq();
    mpq_class c3q = g.c3.hi().to_mpq();
    mpq_class c4q = g.c4.hi().to_mpq();

    auto terms = terms_upto(rec, upto);
    for (unsigned long n = 1; n <= upto; ++n) {
        apow = RInt::mul(apow, alpha, p);

        mpq_class nk1(1);
        for (int i = 0; i + 1 < k; ++i) nk1 *= static_cast<long>(n);
        mpq_class lhs(abs(terms[n]));
        CHECK(lhs <= c4q * nk1 * apow.lo().to_mpq());

        Ball nb = Ball::exact_int(static_cast<long>(n));
        for (size_t i = 0; i < bf.coeff_polys.size(); ++i) {
            // Horner over the coefficient enclosures
            Ball f = Ball::zero();
            for (size_t l = bf.coeff_polys[i].size(); l-- > 0;)
                f = Ball::add(Ball::mul(f, nb, p), bf.coeff_polys[i][l], p);
            mpq_class lower = f.abs_lower().to_mpq();
            mpq_class upper = f.abs_upper().to_mpq();
            if (lower == 0) continue;  // cannot certify nonzero; out of scope here
            CHECK(c2q <= lower);
            mpq_class nm1(1);
            for (size_t l = 0; l + 1 < bf.coeff_polys[i].size(); ++l) nm1 *= static_cast<long>(n);
            CHECK(upper <= c3q * nm1);
        }
    }
}

TEST_CASE("growth envelope holds on sampled ranges") {
    check_growth(tu::fib(), 400);
    check_growth(tu::pell(), 300);
    check_growth(tu::trib(), 300);
    check_growth(tu::mersenne(), 300);
}
