#include "sunitrec/heights.hpp"

#include <algorithm>
#include <optional>

namespace sunitrec {

namespace {

constexpr Prec kHeightPrec = 192;

mpz_class ceil_mpz(const Dyadic& d) {
    Dyadic t = d;
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t.raw(), MPFR_RNDU);
    return z;
}

RInt log_max1(const RInt& x, Prec p) { return RInt::log(RInt::max(x, RInt::of(1)), p); }

void min_assign(std::optional<Dyadic>& acc, const Dyadic& v) {
    if (!acc || v < *acc) acc = v;
}

// Horner evaluation of a coefficient polynomial at an exact integer point.
Ball eval_coeff_poly(const std::vector<Ball>& poly, const mpz_class& n, Prec p) {
    Ball acc = Ball::zero();
    for (size_t l = poly.size(); l-- > 0;) acc = Ball::add(Ball::mul_mpz(acc, n, p), poly[l], p);
    return acc;
}

}  // namespace

HeightBound height_rational(const mpz_class& p, const mpz_class& q) {
    if (q <= 0) throw InputError("height_rational: denominator must be positive");
    mpq_class r(p, q);
    r.canonicalize();
    mpz_class m = abs(r.get_num());
    if (cmp(m, r.get_den()) < 0) m = r.get_den();
    if (m <= 1) return {RInt::point(Dyadic::of(0)), true};
    return {RInt::log_mpz(m, kHeightPrec), true};
}

HeightBound height_upper_from_poly(const IntPoly& f, const std::vector<RootCluster>& roots,
                                   int index) {
    if (index < 0 || index >= static_cast<int>(roots.size()))
        throw InputError("height_upper_from_poly: index out of range");
    if (f.degree() < 1) throw InputError("height_upper_from_poly: need a nonconstant polynomial");
    int total = 0;
    for (const RootCluster& rc : roots) total += rc.multiplicity;
    if (total != f.degree())
        throw InternalError("height_upper_from_poly: root list does not cover the polynomial");
    if (f.degree() == 1) {
        mpq_class root(-f.coeff(0), f.leading());
        root.canonicalize();
        return height_rational(root.get_num(), root.get_den());
    }
    const Prec p = kHeightPrec;
    RInt acc = RInt::log_mpz(abs(f.leading()), p);
    for (const RootCluster& rc : roots) {
        RInt term = log_max1(rc.disk.abs_rint(), p);
        acc = RInt::add(acc, RInt::mul(RInt::of(rc.multiplicity), term, p), p);
    }
    Dyadic lo = Dyadic::max(acc.lo(), Dyadic::of(0));
    return {RInt(lo, acc.hi()), false};
}

GrowthConstants lemma21_constants(const LinearRecurrence& rec, const BinetForm& bf,
                                  const SpectralData& sd) {
    const Prec p = kHeightPrec;
    const int k = rec.order;
    const int t = static_cast<int>(bf.roots.size());
    const IntPoly f = sd.poly;
    const RInt one = RInt::of(1);

    HeightBound ha = height_upper_from_poly(f, bf.roots, 0);

    int mmax = 1;
    Dyadic maxroot = Dyadic::of(0);
    for (const RootCluster& rc : bf.roots) {
        mmax = std::max(mmax, rc.multiplicity);
        maxroot = Dyadic::max(maxroot, rc.disk.abs_upper());
    }

    // Hadamard row-norm product for the k x k system matrix (entries n^l a_i^n,
    // rows n = 0..k-1) and for the right-hand-side-replaced matrix.  Every
    // conjugate of a root of f is again a root of f, so |entry| <= Mx^n *
    // max(n,1)^(mmax-1) holds uniformly over conjugates and the products bound
    // the heights of these determinants of algebraic integers.
    const RInt Mx = RInt::max(RInt::point(maxroot), one);
    const RInt kr = RInt::of(k);
    std::vector<mpz_class> u = terms_upto(rec, static_cast<unsigned long>(k - 1));
    RInt mv = one, mr = one;
    for (int n = 0; n < k; ++n) {
        RInt npow = RInt::pow_ui(RInt::of(std::max(n, 1)), static_cast<unsigned long>(mmax - 1), p);
        RInt ent = RInt::mul(npow, RInt::pow_ui(Mx, static_cast<unsigned long>(n), p), p);
        mv = RInt::mul(mv, RInt::mul(kr, ent, p), p);
        RInt un = RInt::from_mpz(abs(u[static_cast<size_t>(n)]), p);
        mr = RInt::mul(mr, RInt::mul(kr, RInt::max(ent, un), p), p);
    }
    RInt hbeta = RInt::add(log_max1(mv, p), log_max1(mr, p), p);
    RInt c1 = RInt::max(ha.value, hbeta);

    // Coefficient magnitude envelopes.
    Dyadic max_bup = Dyadic::of(0);
    for (int i = 0; i < t; ++i)
        for (const Ball& b : bf.coeff_polys[static_cast<size_t>(i)])
            max_bup = Dyadic::max(max_bup, b.abs_upper());
    RInt c3 = RInt::mul(RInt::of(std::max(t, mmax)), RInt::point(max_bup), p);
    RInt c4 = RInt::mul(RInt::of(t), c3, p);

    // Liouville floor for any nonzero algebraic number of height <= c1 living
    // in the splitting field (degree <= k^t).
    mpz_class dbar;
    mpz_ui_pow_ui(dbar.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(t));
    const RInt two_dbar = RInt::from_mpz(2 * dbar, p);
    const Dyadic liou = RInt::exp(RInt::neg(RInt::mul(two_dbar, RInt::point(c1.hi()), p)), p).lo();

    std::optional<Dyadic> c2v;
    mpz_class n_threshold = 1;
    for (int i = 0; i < t; ++i) {
        const std::vector<Ball>& poly = bf.coeff_polys[static_cast<size_t>(i)];
        const int mi = bf.roots[static_cast<size_t>(i)].multiplicity;
        std::vector<Dyadic> bup, blo;
        int lmin = -1;
        for (int l = 0; l < mi; ++l) {
            bup.push_back(poly[static_cast<size_t>(l)].abs_upper());
            blo.push_back(poly[static_cast<size_t>(l)].abs_lower());
            if (blo.back().sgn() > 0) lmin = l;
        }
        // The true degree of f_i is unknown when high coefficient balls
        // contain zero; every degree candidate at or above the last certified
        // nonzero coefficient is covered.
        for (int lhat = std::max(lmin, 0); lhat < mi; ++lhat) {
            Dyadic bhat = Dyadic::max(blo[static_cast<size_t>(lhat)], liou);
            Dyadic below = Dyadic::of(0);
            for (int l = 0; l < lhat; ++l) below = Dyadic::max(below, bup[static_cast<size_t>(l)]);
            mpz_class n0 = 1;
            Dyadic regime = bhat;
            if (lhat > 0 && !below.is_zero()) {
                // Past n0 = ceil(2*lhat*below/bhat) the top term wins half.
                Dyadic num = Dyadic::mul(Dyadic::of(2 * lhat), below, p, MPFR_RNDU);
                n0 = ceil_mpz(Dyadic::div(num, bhat, p, MPFR_RNDU));
                if (n0 < 1) n0 = 1;
                regime = Dyadic::div(bhat, Dyadic::of(2), p, MPFR_RNDD);
            }
            min_assign(c2v, regime);
            if (n0 > n_threshold) n_threshold = n0;
            if (n0 > 1) {
                // Liouville floor for the value f_i(n), 1 <= n < n0:
                // h(f_i(n)) <= (lhat+1)c1 + (lhat(lhat+1)/2)log n0 + lhat*log 2.
                RInt hv = RInt::mul(RInt::of(lhat + 1), RInt::point(c1.hi()), p);
                hv = RInt::add(hv, RInt::mul(RInt::of(lhat * (lhat + 1) / 2),
                                             RInt::log_mpz(n0, p), p),
                               p);
                hv = RInt::add(hv, RInt::mul(RInt::of(lhat), RInt::log_mpz(mpz_class(2), p), p), p);
                Dyadic vfloor =
                    RInt::exp(RInt::neg(RInt::mul(two_dbar, RInt::point(hv.hi()), p)), p).lo();
                // Certified small-n evaluation up to a fixed horizon; the
                // value floor covers the remainder of the small range.
                mpz_class horizon = n0 - 1;
                bool tail = false;
                if (horizon > 63) {
                    horizon = 63;
                    tail = true;
                }
                for (mpz_class n = 1; n <= horizon; ++n) {
                    Ball v = eval_coeff_poly(poly, n, bf.prec);
                    min_assign(c2v, Dyadic::max(v.abs_lower(), vfloor));
                }
                if (tail) min_assign(c2v, vfloor);
            }
        }
    }

    GrowthConstants g{c1, RInt::point(*c2v), c3, c4, n_threshold};
    return g;
}

}  // namespace sunitrec
