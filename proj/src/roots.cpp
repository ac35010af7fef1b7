#include "sunitrec/roots.hpp"

#include <algorithm>

namespace sunitrec {

namespace {

// Plain (uncertified) complex point used by the Aberth iteration.  Soundness
// comes from the a posteriori certification step only, so round-to-nearest
// arithmetic is fine here.
struct CPt {
    Dyadic re, im;
};

CPt make_cpt(Prec p) { return CPt{Dyadic(p), Dyadic(p)}; }

CPt to_prec(const CPt& a, Prec p) {
    CPt out = make_cpt(p);
    mpfr_set(out.re.raw(), a.re.raw(), MPFR_RNDN);
    mpfr_set(out.im.raw(), a.im.raw(), MPFR_RNDN);
    return out;
}

CPt csub(const CPt& a, const CPt& b, Prec p) {
    CPt out = make_cpt(p);
    mpfr_sub(out.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_sub(out.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    return out;
}

CPt cadd(const CPt& a, const CPt& b, Prec p) {
    CPt out = make_cpt(p);
    mpfr_add(out.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_add(out.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    return out;
}

CPt cmul(const CPt& a, const CPt& b, Prec p) {
    CPt out = make_cpt(p);
    mpfr_fmms(out.re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_fmma(out.im.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    return out;
}

bool czero(const CPt& a) { return a.re.is_zero() && a.im.is_zero(); }

// a / b; caller must ensure b != 0.
CPt cdiv(const CPt& a, const CPt& b, Prec p) {
    Dyadic den(p);
    mpfr_fmma(den.raw(), b.re.raw(), b.re.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
    CPt out = make_cpt(p);
    Dyadic t(p);
    mpfr_fmma(t.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_div(out.re.raw(), t.raw(), den.raw(), MPFR_RNDN);
    mpfr_fmms(t.raw(), a.im.raw(), b.re.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_div(out.im.raw(), t.raw(), den.raw(), MPFR_RNDN);
    return out;
}

// Horner evaluation of g and g' at z, round-to-nearest.
void eval_poly_deriv(const IntPoly& g, const CPt& z, Prec p, CPt* val, CPt* deriv) {
    CPt v = make_cpt(p), d = make_cpt(p);
    mpfr_set_z(v.re.raw(), g.leading().get_mpz_t(), MPFR_RNDN);
    for (int i = g.degree() - 1; i >= 0; --i) {
        d = cadd(cmul(d, z, p), v, p);
        v = cmul(v, z, p);
        mpfr_add_z(v.re.raw(), v.re.raw(), g.coeff(static_cast<size_t>(i)).get_mpz_t(), MPFR_RNDN);
    }
    *val = v;
    *deriv = d;
}

// Deterministic starting points on a circle of radius 1 + max|c_i/c_d|.
std::vector<CPt> initial_points(const IntPoly& g, Prec p) {
    int d = g.degree();
    Dyadic maxq = Dyadic::of(0);
    for (int i = 0; i < d; ++i) {
        Dyadic q = Dyadic::div(Dyadic::from_mpz(abs(g.coeff(static_cast<size_t>(i))), 64, MPFR_RNDU),
                               Dyadic::from_mpz(abs(g.leading()), 64, MPFR_RNDD), 64, MPFR_RNDU);
        if (q > maxq) maxq = q;
    }
    Dyadic radius = Dyadic::add(maxq, Dyadic::of(1), 64, MPFR_RNDU);
    std::vector<CPt> pts;
    pts.reserve(static_cast<size_t>(d));
    Dyadic pi(p);
    mpfr_const_pi(pi.raw(), MPFR_RNDN);
    for (int j = 0; j < d; ++j) {
        // angle = 2*pi*j/d + pi/(2d): offset breaks real-axis symmetry
        Dyadic ang(p);
        mpfr_mul_si(ang.raw(), pi.raw(), 4L * j + 1, MPFR_RNDN);
        mpfr_div_si(ang.raw(), ang.raw(), 2L * d, MPFR_RNDN);
        CPt z = make_cpt(p);
        mpfr_cos(z.re.raw(), ang.raw(), MPFR_RNDN);
        mpfr_sin(z.im.raw(), ang.raw(), MPFR_RNDN);
        mpfr_mul(z.re.raw(), z.re.raw(), radius.raw(), MPFR_RNDN);
        mpfr_mul(z.im.raw(), z.im.raw(), radius.raw(), MPFR_RNDN);
        pts.push_back(std::move(z));
    }
    return pts;
}

void perturb(CPt& z, Prec p, int salt) {
    Dyadic eps = Dyadic::pow2(-(p / 2) - salt);
    mpfr_add(z.re.raw(), z.re.raw(), eps.raw(), MPFR_RNDN);
    mpfr_sub(z.im.raw(), z.im.raw(), eps.raw(), MPFR_RNDN);
}

// One Aberth–Ehrlich sweep; returns true if every correction was below the
// convergence threshold.
bool aberth_sweep(const IntPoly& g, std::vector<CPt>& z, Prec p) {
    const size_t d = z.size();
    bool done = true;
    for (size_t j = 0; j < d; ++j) {
        CPt val = make_cpt(p), der = make_cpt(p);
        eval_poly_deriv(g, z[j], p, &val, &der);
        if (czero(val)) continue;  // exact hit
        if (czero(der)) {
            perturb(z[j], p, 3);
            done = false;
            continue;
        }
        CPt newton = cdiv(val, der, p);
        // S = sum over i != j of 1/(z_j - z_i)
        CPt s = make_cpt(p);
        bool collision = false;
        for (size_t i = 0; i < d; ++i) {
            if (i == j) continue;
            CPt diff = csub(z[j], z[i], p);
            if (czero(diff)) {
                collision = true;
                break;
            }
            CPt one = make_cpt(p);
            mpfr_set_ui(one.re.raw(), 1, MPFR_RNDN);
            s = cadd(s, cdiv(one, diff, p), p);
        }
        if (collision) {
            perturb(z[j], p, 5);
            done = false;
            continue;
        }
        CPt denom = cmul(newton, s, p);
        mpfr_neg(denom.re.raw(), denom.re.raw(), MPFR_RNDN);
        mpfr_neg(denom.im.raw(), denom.im.raw(), MPFR_RNDN);
        mpfr_add_ui(denom.re.raw(), denom.re.raw(), 1, MPFR_RNDN);
        CPt w = czero(denom) ? newton : cdiv(newton, denom, p);
        z[j] = csub(z[j], w, p);
        // converged when |w| <= 2^(16-p) * max(1, |z_j|)
        Dyadic wa = Dyadic::hypot(w.re, w.im, 64, MPFR_RNDU);
        Dyadic za = Dyadic::hypot(z[j].re, z[j].im, 64, MPFR_RNDD);
        Dyadic thr = Dyadic::mul(Dyadic::max(za, Dyadic::of(1)), Dyadic::pow2(16 - p), 64, MPFR_RNDU);
        if (wa > thr) done = false;
    }
    return done;
}

// Inclusion disk around an approximation z: radius d * |g(z)/g'(z)| (upper
// bound), which always contains at least one root of g.  Returns false if the
// derivative's ball cannot be separated from zero at this precision.
bool inclusion_disk(const IntPoly& g, const CPt& z, Prec p, Ball* out) {
    Ball zb = Ball::exact_point(z.re, z.im);
    Ball val = g.eval_ball(zb, p);
    Ball der = g.derivative().eval_ball(zb, p);
    Dyadic der_lo = der.abs_lower();
    if (der_lo.sgn() <= 0) return false;
    Dyadic num = Dyadic::mul(Dyadic::of(g.degree()), val.abs_upper(), 64, MPFR_RNDU);
    Dyadic rad = Dyadic::div(num, der_lo, 64, MPFR_RNDU);
    *out = Ball(z.re, z.im, rad);
    return true;
}

}  // namespace

std::vector<RootCluster> certified_roots(const IntPoly& p, const Dyadic& target_radius,
                                         Prec prec_cap) {
    if (p.is_zero() || p.degree() < 1) throw InternalError("certified_roots: degree >= 1 required");
    if (target_radius.sgn() <= 0) throw InternalError("certified_roots: target radius must be positive");

    auto factors = squarefree_decomposition(p);
    std::vector<std::vector<CPt>> approx(factors.size());

    for (Prec prec = 128; prec <= prec_cap; prec *= 2) {
        std::vector<RootCluster> clusters;
        bool ok = true;
        for (size_t fi = 0; fi < factors.size() && ok; ++fi) {
            const IntPoly& g = factors[fi].first;
            int mult = factors[fi].second;
            if (g.degree() == 1) {
                mpq_class root(-g.coeff(0), g.coeff(1));
                root.canonicalize();
                clusters.push_back(RootCluster{Ball::from_mpq(root, prec), mult});
                continue;
            }
            std::vector<CPt>& zs = approx[fi];
            if (zs.empty()) {
                zs = initial_points(g, prec);
            } else {
                for (CPt& z : zs) z = to_prec(z, prec);
            }
            int max_sweeps = 100 + 20 * g.degree();
            for (int it = 0; it < max_sweeps; ++it) {
                if (aberth_sweep(g, zs, prec)) break;
            }
            for (const CPt& z : zs) {
                Ball disk;
                if (!inclusion_disk(g, z, prec, &disk)) {
                    ok = false;
                    break;
                }
                clusters.push_back(RootCluster{std::move(disk), mult});
            }
        }
        if (!ok) continue;

        bool small_enough = std::all_of(clusters.begin(), clusters.end(), [&](const RootCluster& c) {
            return c.disk.rad() <= target_radius;
        });
        if (!small_enough) continue;

        bool disjoint = true;
        for (size_t i = 0; i < clusters.size() && disjoint; ++i)
            for (size_t j = i + 1; j < clusters.size() && disjoint; ++j)
                if (!balls_disjoint(clusters[i].disk, clusters[j].disk)) disjoint = false;
        if (!disjoint) continue;

        std::sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
            return midpoint_order_less(a.disk, b.disk);
        });
        // Midpoints of equal-modulus roots differ in their last bits, so the
        // modulus sort alone would order them arbitrarily.  Regroup runs whose
        // certified modulus intervals overlap and order each run by argument:
        // lower half-plane, positive real axis, upper half-plane, negative axis.
        auto arg_class = [](const Ball& x) {
            int sim = x.im().sgn();
            if (sim < 0) return 0;
            if (sim == 0 && x.re().sgn() >= 0) return 1;
            if (sim > 0) return 2;
            return 3;
        };
        auto arg_less = [&](const RootCluster& a, const RootCluster& b) {
            int ga = arg_class(a.disk), gb = arg_class(b.disk);
            if (ga != gb) return ga < gb;
            if (ga == 1 || ga == 3) return false;
            mpq_class cross = a.disk.re().to_mpq() * b.disk.im().to_mpq() -
                              b.disk.re().to_mpq() * a.disk.im().to_mpq();
            return cross > 0;
        };
        size_t run_begin = 0;
        for (size_t i = 1; i <= clusters.size(); ++i) {
            bool extend = false;
            if (i < clusters.size()) {
                RInt prev = clusters[i - 1].disk.abs_rint();
                RInt cur = clusters[i].disk.abs_rint();
                extend = !RInt::certainly_lt(cur, prev) && !RInt::certainly_lt(prev, cur);
            }
            if (!extend) {
                std::stable_sort(clusters.begin() + static_cast<long>(run_begin),
                                 clusters.begin() + static_cast<long>(i), arg_less);
                run_begin = i;
            }
        }
        return clusters;
    }
    throw PrecisionExhausted("certified_roots: precision cap reached before certification");
}

}  // namespace sunitrec
