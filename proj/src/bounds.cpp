#include "sunitrec/bounds.hpp"

#include <algorithm>
#include <utility>

#include "sunitrec/roots.hpp"

namespace sunitrec {

namespace {

constexpr Prec bp = 256;

mpz_class ceil_mpz(const Dyadic& d) {
    Dyadic t = d;
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t.raw(), MPFR_RNDU);
    return z;
}

std::string dstr(const Dyadic& d) { return d.str_dec(20); }

void put(std::vector<TraceEntry>* tr, const std::string& name, const std::string& value,
         const std::string& formula, const std::string& kind) {
    if (tr) tr->push_back(TraceEntry{name, value, formula, kind});
}

// Shared data for the two linear-form chains.
struct ChainData {
    int k = 0, t = 0, ell = 0, r = 1;
    mpz_class a, b, Dbar;
    mpq_class eps, s;  // s = eps/(1+eps)
    RInt al, la;       // dominant root enclosure (real part) and its log
    RInt etaI;         // |eta_1| range, lo > 0
    RInt er;           // real part of eta_1
    RInt c1, c3;       // growth constants reused across cases
    Dyadic M2 = Dyadic::of(0);  // upper bound for every other root modulus
    RInt c12;          // |Phi - 1| <= c12 * n^(k-1) * theta^(n-m or n)
    RInt theta, theta2, linv, linv2;
    RInt log3, ln2, logeD;
    std::vector<Dyadic> Ap;  // Matveev A-values for the primes
    Dyadic A_alpha = Dyadic::of(0), A_neg1 = Dyadic::of(0);
    Dyadic A_eta_gap = Dyadic::of(0), A_eta_fin = Dyadic::of(0);
    bool aeta_maybe_one = false, eta_maybe_one = false;
};

// max(log x, 0) / log 3: folds a constant offset into a log n coefficient,
// valid for n >= 3.
RInt fold3(const RInt& x, const RInt& log3) {
    return RInt::div(RInt::max(RInt::log(x, bp), RInt::of(0)), log3, bp);
}

Dyadic d016_up() { return Dyadic::from_mpq(mpq_class(4, 25), 64, MPFR_RNDU); }

ChainData make_chain(const ProblemInstance& inst, const GrowthConstants& g, const BinetForm& bf,
                     std::vector<TraceEntry>* tr) {
    const Prec p = bp;
    ChainData cd;
    cd.k = inst.rec.order;
    cd.t = static_cast<int>(bf.roots.size());
    cd.ell = static_cast<int>(inst.S.size());
    cd.r = inst.r;
    cd.a = inst.a;
    cd.b = inst.b;
    cd.eps = inst.eps;
    cd.eps.canonicalize();
    cd.s = cd.eps / (1 + cd.eps);
    mpz_ui_pow_ui(cd.Dbar.get_mpz_t(), static_cast<unsigned long>(cd.k),
                  static_cast<unsigned long>(cd.t));
    cd.c1 = g.c1;
    cd.c3 = g.c3;
    cd.log3 = RInt::log_mpz(mpz_class(3), p);
    cd.ln2 = RInt::log_mpz(mpz_class(2), p);

    const Ball& dom = bf.roots[static_cast<size_t>(bf.dominant_index)].disk;
    cd.al = dom.real_rint();
    if (!(cd.al.lo() > Dyadic::of(1)))
        throw InternalError("chain: dominant root not certified > 1");
    cd.la = RInt::log(cd.al, p);
    for (int j = 0; j < cd.t; ++j)
        if (j != bf.dominant_index)
            cd.M2 = Dyadic::max(cd.M2, bf.roots[static_cast<size_t>(j)].disk.abs_upper());

    Dyadic eta_lo = bf.eta1.abs_lower();
    if (eta_lo.sgn() <= 0) throw InternalError("chain: eta1 not separated from zero");
    cd.etaI = RInt(eta_lo, bf.eta1.abs_upper());
    cd.er = bf.eta1.real_rint();

    // Numerator constants for |Phi - 1|:
    //   c9  : the b-side tail           2*r*t*b*c3/|eta1|
    //   c10 : the a-side tail           2*r*(t-1)*a*c3/|eta1|
    //   c11 : the z_1..z_{r-1} tail     (r-1)*(2r)^s/|eta1|^s
    RInt c9 = RInt::div(RInt::mul(RInt::mul(RInt::of(2L * cd.r * cd.t),
                                            RInt::from_mpz(cd.b, p), p),
                                  cd.c3, p),
                        cd.etaI, p);
    RInt c10 = RInt::div(RInt::mul(RInt::mul(RInt::of(2L * cd.r * (cd.t - 1)),
                                             RInt::from_mpz(cd.a, p), p),
                                   cd.c3, p),
                         cd.etaI, p);
    RInt c11 = RInt::of(0);
    if (cd.r >= 2) {
        RInt pow2r = RInt::pow_mpq(RInt::of(2L * cd.r), cd.s, p);
        RInt etas = RInt::pow_mpq(cd.etaI, cd.s, p);
        c11 = RInt::mul(RInt::of(cd.r - 1), RInt::div(pow2r, etas, p), p);
    }
    cd.c12 = RInt::add(RInt::add(c9, c10, p), c11, p);
    put(tr, "c9", dstr(c9.hi()), "2*r*t*b*c3/|eta1|", "chain");
    put(tr, "c10", dstr(c10.hi()), "2*r*(t-1)*a*c3/|eta1|", "chain");
    put(tr, "c11", dstr(c11.hi()), "(r-1)*(2r)^(eps/(1+eps)) / |eta1|^(eps/(1+eps))", "chain");
    put(tr, "c12", dstr(cd.c12.hi()), "c9 + c10 + c11", "chain");

    // Shrink factors.
    RInt one = RInt::of(1);
    RInt inva = RInt::div(one, cd.al, p);
    RInt pows = RInt::pow_mpq(cd.al, -cd.s, p);
    RInt ratio = RInt::div(RInt(Dyadic::of(0), cd.M2), cd.al, p);
    cd.theta = RInt::max(RInt::max(inva, pows), ratio);
    cd.theta2 = RInt::max(pows, ratio);
    if (!(cd.theta.hi() < Dyadic::of(1)))
        throw InternalError("chain: shrink factor not certified < 1");
    cd.linv = RInt::log(RInt::div(one, cd.theta, p), p);
    cd.linv2 = RInt::log(RInt::div(one, cd.theta2, p), p);
    put(tr, "theta", dstr(cd.theta.hi()),
        "max(1/alpha1, alpha1^(-eps/(1+eps)), |alpha2|/alpha1)", "chain");

    // Matveev A-values (kappa = 2 throughout: the forms carry a -1 term whose
    // principal log is i*pi, so the real-field branch is never claimed).
    cd.logeD = RInt::add(one, RInt::log_mpz(cd.Dbar, p), p);
    const Dyadic lim = d016_up();
    for (int j = 0; j < cd.ell; ++j) {
        RInt aj = RInt::mul(RInt::from_mpz(cd.Dbar, p),
                            RInt::log_mpz(inst.S.primes[static_cast<size_t>(j)], p), p);
        cd.Ap.push_back(Dyadic::max(aj.hi(), lim));
    }
    RInt pi = RInt::const_pi(p);
    cd.A_neg1 = pi.hi();
    {
        Dyadic h = RInt::mul(RInt::from_mpz(cd.Dbar, p), RInt::point(cd.c1.hi()), p).hi();
        Dyadic labs = Dyadic::add(RInt::abs(RInt::log(cd.al, p)).hi(), pi.hi(), 64, MPFR_RNDU);
        cd.A_alpha = Dyadic::max(Dyadic::max(h, labs), lim);
    }
    {
        // psi = a*eta1: h <= log a + c1.
        RInt ha = RInt::add(RInt::log_mpz(cd.a, p), RInt::point(cd.c1.hi()), p);
        RInt prod = RInt::mul(RInt::from_mpz(cd.a, p), cd.etaI, p);
        Dyadic labs = Dyadic::add(RInt::abs(RInt::log(prod, p)).hi(), pi.hi(), 64, MPFR_RNDU);
        Dyadic h = RInt::mul(RInt::from_mpz(cd.Dbar, p), ha, p).hi();
        cd.A_eta_gap = Dyadic::max(Dyadic::max(h, labs), lim);
        cd.aeta_maybe_one = RInt::mul(RInt::from_mpz(cd.a, p), cd.er, p).contains(mpq_class(1));
    }
    {
        // psi = eta1: h <= c1.
        Dyadic h = RInt::mul(RInt::from_mpz(cd.Dbar, p), RInt::point(cd.c1.hi()), p).hi();
        Dyadic labs = Dyadic::add(RInt::abs(RInt::log(cd.etaI, p)).hi(), pi.hi(), 64, MPFR_RNDU);
        cd.A_eta_fin = Dyadic::max(Dyadic::max(h, labs), lim);
        cd.eta_maybe_one = cd.er.contains(mpq_class(1));
    }
    return cd;
}

// C(mm,2) * Dbar^2 * prod(As) * log(e*Dbar), rounded up.
Dyadic chain_K(const ChainData& cd, int mm, const std::vector<Dyadic>& As) {
    RInt x = matveev_C(mm, 2);
    x = RInt::mul(x, RInt::from_mpz(cd.Dbar * cd.Dbar, bp), bp);
    for (const Dyadic& av : As) x = RInt::mul(x, RInt::point(av), bp);
    x = RInt::mul(x, cd.logeD, bp);
    return x.hi();
}

// B = c15 * n covers every integer coefficient of a form with extra slots.
RInt b_coefficient(const ChainData& cd, const std::pair<Dyadic, Dyadic>& zr, long slots) {
    RInt from_zr = RInt::div(RInt::add(RInt::point(zr.first), RInt::point(zr.second), bp),
                             cd.ln2, bp);
    return RInt::max(RInt::max(from_zr, RInt::of(cd.ell + slots)), RInt::of(1));
}

// (1 + log c15)/log3 + 1: the log(e*B) fold for n >= 3.
RInt b_fold(const ChainData& cd, const RInt& c15) {
    return RInt::add(RInt::div(RInt::add(RInt::of(1), RInt::log(c15, bp), bp), cd.log3, bp),
                     RInt::of(1), bp);
}

Dyadic gap_from_chain(const ChainData& cd, const std::pair<Dyadic, Dyadic>& zr,
                      std::vector<TraceEntry>* tr) {
    const Prec p = bp;
    RInt base = RInt::add(fold3(RInt::mul(RInt::of(2), cd.c12, p), cd.log3),
                          RInt::of(cd.k - 1), p);
    // |Phi1 - 1| > 1/2.
    RInt CA = RInt::div(base, cd.linv, p);
    put(tr, "c13", dstr(CA.hi()),
        "(max(log(2*c12),0)/log3 + (k-1)) / log(1/theta), n-m <= c13*log n", "chain");
    // Phi1 = 1: conjugating a*eta1*alpha1^n = z_r pins n.
    RInt CB = RInt::of(0);
    if (cd.t >= 2) {
        RInt rho = RInt::div(cd.al, RInt::point(cd.M2), p);
        if (!(rho.lo() > Dyadic::of(1)))
            throw InternalError("gap: conjugate modulus ratio not certified > 1");
        RInt num = RInt::add(RInt::mul(RInt::from_mpz(cd.Dbar, p), RInt::point(cd.c1.hi()), p),
                             RInt::neg(RInt::log(cd.etaI, p)), p);
        RInt c14 = RInt::max(RInt::div(num, RInt::log(rho, p), p), RInt::of(0));
        put(tr, "c14", dstr(c14.hi()),
            "(Dbar*c1 + log(1/|eta1|)) / log(alpha1/|alpha2|), bounds n when Phi1 = 1", "chain");
        CB = RInt::div(c14, cd.log3, p);
    }
    // 0 < |Phi1 - 1| <= 1/2: linear form in l+3 logs.
    RInt c15 = b_coefficient(cd, zr, 2);
    put(tr, "c15", dstr(c15.hi()), "max(1, (c7+c8)/log2, l+2); B = c15*n", "chain");
    Dyadic maxA3 = Dyadic::max(Dyadic::max(cd.A_eta_gap, cd.A_alpha), cd.A_neg1);
    put(tr, "c16", dstr(RInt::div(RInt::point(maxA3), cd.log3, p).hi()),
        "max(A_(l+1),A_(l+2),A_(l+3))/log3, so maxA <= c16*log n for n >= 3", "chain");
    std::vector<Dyadic> As(cd.Ap);
    As.push_back(cd.A_eta_gap);
    As.push_back(cd.A_alpha);
    As.push_back(cd.A_neg1);
    Dyadic K = chain_K(cd, cd.ell + 3, As);
    if (cd.aeta_maybe_one) {
        // a*eta1 may equal 1; the form then loses that term, so take the
        // weaker of both readings.
        std::vector<Dyadic> As2(cd.Ap);
        As2.push_back(cd.A_alpha);
        As2.push_back(cd.A_neg1);
        K = Dyadic::max(K, chain_K(cd, cd.ell + 2, As2));
    }
    RInt c17 = RInt::mul(RInt::point(K), b_fold(cd, c15), p);
    put(tr, "c17", dstr(c17.hi()),
        "C(l+3,2)*Dbar^2*prod(A)*log(e*Dbar)*log(e*B) folded to a log n coefficient", "chain");
    RInt CC = RInt::div(RInt::add(base, c17, p), cd.linv, p);
    Dyadic cg = Dyadic::max(Dyadic::max(CA.hi(), CB.hi()),
                            Dyadic::max(CC.hi(), RInt::div(RInt::of(2), cd.log3, p).hi()));
    put(tr, "c18", dstr(cg), "max of the case constants; n-m <= c18*log max(n,3)", "chain");
    return cg;
}

}  // namespace

void validate_problem(const ProblemInstance& inst) {
    if (inst.a < 1 || inst.b < 1) throw InputError("problem: a and b must be >= 1");
    if (inst.r < 1) throw InputError("problem: r must be >= 1");
    if (inst.eps <= 0) throw InputError("problem: epsilon must be positive");
}

RInt matveev_C(int m, int kappa) {
    if (m < 1) throw InputError("matveev_C: m must be >= 1");
    if (kappa != 1 && kappa != 2) throw InputError("matveev_C: kappa must be 1 or 2");
    const Prec p = bp;
    RInt e = RInt::const_e(p);
    RInt em2 = RInt::div(RInt::mul(e, RInt::of(m), p), RInt::of(2), p);
    RInt b1 = RInt::div(RInt::pow_ui(em2, static_cast<unsigned long>(kappa), p),
                        RInt::of(kappa), p);
    b1 = RInt::mul(b1, RInt::pow_ui(RInt::of(30), static_cast<unsigned long>(m) + 3, p), p);
    // m^3.5 = exp((7/2) log m)
    RInt m35 = RInt::exp(RInt::mul_mpq(RInt::log_mpz(mpz_class(m), p), mpq_class(7, 2), p), p);
    b1 = RInt::mul(b1, m35, p);
    RInt b2 = RInt::point(Dyadic::pow2(6 * static_cast<mpfr_exp_t>(m) + 20));
    return RInt::min(b1, b2);
}

Dyadic matveev_lower_bound(const MatveevInput& in) {
    if (in.m < 1 || static_cast<int>(in.A.size()) != in.m)
        throw InputError("invalid matveev input: m does not match the A list");
    if (in.kappa != 1 && in.kappa != 2) throw InputError("invalid matveev input: kappa");
    if (in.D < 1) throw InputError("invalid matveev input: D must be >= 1");
    if (in.B.to_mpq() < 1) throw InputError("invalid matveev input: B < 1");
    const mpq_class lim(4, 25);
    RInt prod = RInt::of(1);
    for (const Dyadic& ai : in.A) {
        if (ai.to_mpq() < lim) throw InputError("invalid matveev input: some A_i < 0.16");
        prod = RInt::mul(prod, RInt::point(ai), bp);
    }
    RInt x = RInt::mul(matveev_C(in.m, in.kappa), RInt::from_mpz(in.D * in.D, bp), bp);
    x = RInt::mul(x, prod, bp);
    x = RInt::mul(x, RInt::add(RInt::of(1), RInt::log_mpz(in.D, bp), bp), bp);
    x = RInt::mul(x, RInt::add(RInt::of(1), RInt::log(RInt::point(in.B), bp), bp), bp);
    return Dyadic::neg(x.hi());
}

mpz_class solve_n_log_bound(const Dyadic& c) {
    if (c.sgn() <= 0) throw InputError("solve_n_log_bound: c must be positive");
    for (Prec q = 64;; q *= 2) {
        RInt e = RInt::const_e(q);
        if (c <= e.lo()) return 2;
        if (c > e.hi()) break;
        if (q > (Prec{1} << 16))
            throw InternalError("solve_n_log_bound: cannot separate c from e");
    }
    auto pred = [&c](const mpz_class& n) -> bool {
        if (n <= 1) return false;
        Prec nb = static_cast<Prec>(mpz_sizeinbase(n.get_mpz_t(), 2)) + 8;
        Dyadic nd = Dyadic::from_mpz(n, std::max<Prec>(64, nb), MPFR_RNDN);
        for (Prec q = 128;; q *= 2) {
            RInt v = RInt::mul(RInt::point(c), RInt::log_mpz(n, q), q);
            if (nd <= v.lo()) return true;
            if (nd > v.hi()) return false;
            if (q > (Prec{1} << 24))
                throw InternalError("solve_n_log_bound: predicate undecidable");
        }
    };
    mpz_class start = ceil_mpz(c);
    if (start < 3) start = 3;
    // Either no integer at or past start satisfies n <= c*log n (then the
    // crossing sits below 3 and 2 covers it), or the satisfied set meets
    // [start, inf) in an interval we can bisect.
    if (!pred(start)) return 2;
    mpz_class lo = start, hi = start * 2;
    while (pred(hi)) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        mpz_class mid = (lo + hi) / 2;
        if (pred(mid))
            lo = mid;
        else
            hi = mid;
    }
    if (pred(lo + 1)) throw InternalError("solve_n_log_bound: resolution failed");
    return lo;
}

std::pair<Dyadic, Dyadic> zr_log_bound(const ProblemInstance& inst, const GrowthConstants& growth,
                                       const BinetForm& bf, std::vector<TraceEntry>* tr) {
    validate_problem(inst);
    const Prec p = bp;
    const int k = inst.rec.order;
    mpq_class eps = inst.eps;
    eps.canonicalize();
    const mpq_class one_plus = eps + 1;

    RInt al = bf.roots[static_cast<size_t>(bf.dominant_index)].disk.real_rint();
    if (!(al.lo() > Dyadic::of(1))) throw InternalError("zr: dominant root not certified > 1");
    RInt la = RInt::log(al, p);

    mpz_class gamma = gamma_value(inst.rec);
    RInt c5 = RInt::mul(RInt::from_mpz(inst.a + inst.b, p),
                        RInt::max(growth.c4, RInt::from_mpz(gamma, p)), p);
    put(tr, "c5", dstr(c5.hi()),
        "(a+b)*max(c4, gamma); |a*U_n + b*U_m| <= c5*n^(k-1)*alpha1^n for n >= 1, and "
        "(a+b)*gamma covers n = 0",
        "choice");

    RInt c7r = RInt::mul_mpq(
        RInt::add(la, RInt::div(RInt::of(k - 1), RInt::const_e(p), p), p), one_plus, p);
    RInt c6 = RInt::of(0);
    if (inst.r >= 2) c6 = RInt::mul_mpq(RInt::log_mpz(mpz_class(inst.r), p), one_plus / eps, p);
    put(tr, "c6", dstr(c6.hi()), "((1+eps)/eps)*log r: covers |z_r|^(eps/(1+eps)) <= r", "chain");
    RInt t1 = RInt::max(RInt::mul_mpq(RInt::log(c5, p), one_plus, p), RInt::of(0));
    RInt c8r = RInt::add(RInt::add(t1, RInt::max(c6, RInt::of(0)), p),
                         RInt::point(Dyadic::pow2(-10)), p);
    Dyadic c7 = c7r.hi(), c8 = c8r.hi();
    put(tr, "c7", dstr(c7), "(1+eps)*(log alpha1 + (k-1)/e), using n^(k-1) <= e^((k-1)n/e)",
        "chain");
    put(tr, "c8", dstr(c8), "max((1+eps)*log c5, 0) + max(c6, 0) + 2^-10 for strictness",
        "chain");
    return {c7, c8};
}

Dyadic gap_bound(const ProblemInstance& inst, const GrowthConstants& growth, const BinetForm& bf,
                 const SpectralData& sd, std::vector<TraceEntry>* tr) {
    validate_problem(inst);
    if (sd.dominance != DominanceStatus::kDominant)
        throw InternalError("gap_bound: dominance not certified");
    ChainData cd = make_chain(inst, growth, bf, tr);
    auto zr = zr_log_bound(inst, growth, bf, nullptr);
    return gap_from_chain(cd, zr, tr);
}

BoundCertificate final_bound(const ProblemInstance& inst, Prec prec_cap) {
    validate_problem(inst);
    const Prec p = bp;
    BoundCertificate cert;
    std::vector<TraceEntry>* tr = &cert.trace;
    const LinearRecurrence& rec = inst.rec;

    if (is_degenerate(rec))
        throw HypothesisRefusal("degenerate",
                                "a ratio of distinct characteristic roots is a root of unity");
    cert.hypotheses.nondegenerate = true;

    SpectralData sd;
    try {
        sd = spectral_data(rec, prec_cap);
    } catch (const PrecisionExhausted&) {
        throw HypothesisRefusal("dominance_undecided",
                                "root isolation hit the precision cap before the dominance "
                                "question was decided");
    }
    if (sd.dominance == DominanceStatus::kNoDominantRoot)
        throw HypothesisRefusal("no_dominant_root",
                                "two distinct characteristic roots share the maximal modulus");
    cert.hypotheses.dominant_root_found = true;

    if (sd.dominant_integer_gt1)
        throw HypothesisRefusal("dominant_root_integer_gt1",
                                "the dominant root is a rational integer > 1; the target "
                                "equation then has unbounded solution families");
    cert.hypotheses.dominant_not_integer_gt1 = true;

    BinetForm bf = binet_decomposition(rec, sd, prec_cap);
    cert.hypotheses.dominant_simple = true;
    cert.hypotheses.eta1_nonzero = true;

    {
        // Certify alpha1 > 1 on the refined disk (a strictly dominant root of
        // a real polynomial is automatically real).
        const IntPoly& f = sd.poly;
        std::vector<RootCluster> rts = bf.roots;
        int di = bf.dominant_index;
        Prec bits = bf.prec;
        for (;;) {
            RInt al = rts[static_cast<size_t>(di)].disk.real_rint();
            if (al.lo() > Dyadic::of(1)) break;
            if (Dyadic::cmp_si(al.hi(), 1) <= 0)
                throw HypothesisRefusal("dominant_root_not_real_gt1",
                                        "the dominant root is certified <= 1");
            if (f.eval_z(mpz_class(1)) == 0 &&
                rts[static_cast<size_t>(di)].disk.contains_int(mpz_class(1)))
                throw HypothesisRefusal("dominant_root_not_real_gt1", "the dominant root is 1");
            bits *= 2;
            if (bits > prec_cap)
                throw PrecisionExhausted(
                    "cannot separate the dominant root from 1 within the precision cap");
            auto fresh = certified_roots(f, Dyadic::pow2(-static_cast<mpfr_exp_t>(bits / 2)),
                                         prec_cap);
            int found = -1;
            for (size_t j = 0; j < fresh.size(); ++j) {
                if (!balls_disjoint(fresh[j].disk, rts[static_cast<size_t>(di)].disk)) {
                    if (found >= 0) {
                        found = -1;
                        break;
                    }
                    found = static_cast<int>(j);
                }
            }
            if (found >= 0) {
                // Keep the other disks too so M2 stays meaningful if reused.
                rts = std::move(fresh);
                di = found;
            }
        }
        cert.hypotheses.dominant_real_gt1 = true;
    }
    cert.hypotheses.scope =
        "integer solutions with n >= m >= 0, |a*U_n + b*U_m| >= |U_n|, and the size-gap "
        "condition on z_1..z_(r-1) relative to z_r";

    GrowthConstants growth = lemma21_constants(rec, bf, sd);
    cert.growth = growth;
    put(tr, "c1", dstr(growth.c1.hi()), "height bound for the roots and Binet coefficients",
        "chain");
    put(tr, "c2", dstr(growth.c2.lo()), "lower bound for |f_i(n)| when nonzero", "chain");
    put(tr, "c3", dstr(growth.c3.hi()), "|f_i(n)| <= c3*n^(m_i-1)", "chain");
    put(tr, "c4", dstr(growth.c4.hi()), "|U_n| <= c4*n^(k-1)*alpha1^n for n >= 1", "chain");
    put(tr, "n_threshold", growth.n_threshold.get_str(),
        "past it every f_i is dominated by its leading term", "chain");

    auto zr = zr_log_bound(inst, growth, bf, tr);
    cert.c7 = zr.first;
    cert.c8 = zr.second;

    ChainData cd = make_chain(inst, growth, bf, tr);
    Dyadic cgap = gap_from_chain(cd, zr, tr);
    cert.gap_constant = cgap;

    // ----- final chain: bound n itself -----
    std::vector<Dyadic> cands;

    // Premise failure |a*U_n + b*U_m| <= (1/2)|eta1|*alpha1^n: the dominant
    // term is then swallowed by the tails.
    RInt m2c = RInt::max(RInt(Dyadic::of(0), cd.M2), 1);
    RInt rho3 = RInt::div(cd.al, m2c, p);
    if (!(rho3.lo() > Dyadic::of(1)))
        throw InternalError("final: dominant separation ratio not certified > 1");
    RInt lrho3 = RInt::log(rho3, p);
    {
        RInt num = RInt::div(RInt::mul(RInt::of(2L * (cd.t - 1)), cd.c3, p), cd.etaI, p);
        RInt cprem = RInt::div(RInt::add(fold3(num, cd.log3), RInt::of(cd.k - 1), p), lrho3, p);
        cands.push_back(cprem.hi());
        put(tr, "fin_premise", dstr(cprem.hi()),
            "n <= fin_premise*log n when |a*U_n+b*U_m| <= (1/2)|eta1|*alpha1^n", "chain");
    }
    // Some f_i(n) = 0 (i >= 2): n is a root of a nonzero polynomial with
    // bounded coefficient heights.
    {
        Dyadic max_bup = Dyadic::of(0);
        for (const auto& poly : bf.coeff_polys)
            for (const Ball& bz : poly) max_bup = Dyadic::max(max_bup, bz.abs_upper());
        RInt liou_inv =
            RInt::exp(RInt::mul(RInt::from_mpz(2 * cd.Dbar, p), RInt::point(cd.c1.hi()), p), p);
        RInt nf0 = RInt::mul(RInt::mul(RInt::of(cd.k), RInt::point(max_bup), p), liou_inv, p);
        RInt cf0 = RInt::div(RInt::max(nf0, RInt::of(1)), cd.log3, p);
        cands.push_back(cf0.hi());
        put(tr, "fin_fzero", dstr(cf0.hi()),
            "k*maxB*exp(2*Dbar*c1)/log3: covers n with f_i(n) = 0 for some i >= 2", "choice");
    }
    // Phi2 = 1: conjugating eta1*(a*alpha1^n + b*alpha1^m) = z_r pins n.
    {
        RInt num = RInt::div(
            RInt::mul(RInt::from_mpz(2 * mpz_class(std::max(cd.a, cd.b)), p),
                      RInt::exp(RInt::mul(RInt::from_mpz(cd.Dbar, p), RInt::point(cd.c1.hi()), p),
                                p),
                      p),
            cd.etaI, p);
        RInt nphi2 = RInt::max(RInt::div(RInt::log(num, p), lrho3, p), RInt::of(0));
        RInt cphi2 = RInt::div(RInt::max(nphi2, RInt::of(1)), cd.log3, p);
        cands.push_back(cphi2.hi());
        put(tr, "fin_phi2_eq1", dstr(cphi2.hi()),
            "log(2*max(a,b)*exp(Dbar*c1)/|eta1|)/log(alpha1/max(|alpha2|,1)) folded by log3",
            "chain");
    }
    // |Phi2 - 1| > 1/2.
    RInt base2 = RInt::add(fold3(RInt::mul(RInt::of(2), cd.c12, p), cd.log3),
                           RInt::of(cd.k - 1), p);
    {
        RInt cbig = RInt::div(base2, cd.linv2, p);
        cands.push_back(cbig.hi());
        put(tr, "fin_phi2_big", dstr(cbig.hi()),
            "(max(log(2*c12),0)/log3 + (k-1))/log(1/theta2) when |Phi2-1| > 1/2", "chain");
    }
    // Main case: linear form in l+4 logs with one n-dependent A-value.
    {
        RInt c15f = b_coefficient(cd, zr, 3);
        RInt qc = b_fold(cd, c15f);
        put(tr, "fin_B", dstr(c15f.hi()), "max(1, (c7+c8)/log2, l+3); B = fin_B*n", "chain");
        // A for psi = a + b*alpha1^(m-n), using n-m <= c18*log max(n,3):
        //   A(n) <= qa + qb*log n for n >= 3.
        RInt qa = RInt::add(
            RInt::add(RInt::mul(RInt::from_mpz(cd.Dbar, p),
                                RInt::log_mpz(2 * cd.a * cd.b, p), p),
                      RInt::log_mpz(cd.a + cd.b, p), p),
            RInt::from_mpq(mpq_class(1, 5), p), p);
        RInt qb = RInt::mul(RInt::mul(RInt::from_mpz(cd.Dbar, p), RInt::point(cd.c1.hi()), p),
                            RInt::point(cgap), p);
        put(tr, "fin_A_mix_const", dstr(qa.hi()),
            "Dbar*log(2ab) + log(a+b) + 1/5: n-free part of the mixed A-value", "chain");
        put(tr, "fin_A_mix_slope", dstr(qb.hi()),
            "Dbar*c1*c18: log n coefficient of the mixed A-value", "chain");
        std::vector<Dyadic> As(cd.Ap);
        As.push_back(cd.A_eta_fin);
        As.push_back(cd.A_alpha);
        As.push_back(cd.A_neg1);
        Dyadic K = chain_K(cd, cd.ell + 4, As);
        if (cd.eta_maybe_one) {
            std::vector<Dyadic> As2(cd.Ap);
            As2.push_back(cd.A_alpha);
            As2.push_back(cd.A_neg1);
            K = Dyadic::max(K, chain_K(cd, cd.ell + 3, As2));
        }
        put(tr, "fin_K", dstr(K),
            "C(l+4,2)*Dbar^2*prod(A)*log(e*Dbar), mixed A-value excluded", "chain");
        RInt kq = RInt::mul(RInt::point(K), qc, p);
        RInt P = RInt::div(RInt::add(base2, RInt::mul(kq, qa, p), p), cd.linv2, p);
        RInt Q = RInt::div(RInt::mul(kq, qb, p), cd.linv2, p);
        put(tr, "fin_P", dstr(P.hi()), "log n coefficient before absorption", "chain");
        put(tr, "fin_Q", dstr(Q.hi()), "(log n)^2 coefficient before absorption", "chain");
        // (log n)^2 <= n/(2Q) + (log Nhat)^2 with Nhat = (N(sqrt(8Q))+1)^2.
        Dyadic s8q = Dyadic::sqrt(Dyadic::mul(Dyadic::of(8), Q.hi(), p, MPFR_RNDU), p, MPFR_RNDU);
        mpz_class nhat = solve_n_log_bound(s8q) + 1;
        nhat *= nhat;
        RInt lk = RInt::log_mpz(nhat, p);
        RInt kqq = RInt::mul(lk, lk, p);
        put(tr, "fin_logsq_cap", dstr(kqq.hi()),
            "(log Nhat)^2: additive remainder of the (log n)^2 absorption", "choice");
        RInt cmain = RInt::add(RInt::mul(RInt::of(2), P, p),
                               RInt::div(RInt::mul(RInt::mul(RInt::of(2), Q, p), kqq, p),
                                         cd.log3, p),
                               p);
        cands.push_back(cmain.hi());
        put(tr, "fin_main", dstr(cmain.hi()),
            "2P + 2Q*(log Nhat)^2/log3 after absorbing the quadratic log term", "chain");
    }

    Dyadic cfin = cands[0];
    for (const Dyadic& cv : cands) cfin = Dyadic::max(cfin, cv);
    cert.final_constant = cfin;
    put(tr, "C_fin", dstr(cfin), "max over the case constants; n <= C_fin*log n for n >= 3",
        "chain");
    cert.N0 = solve_n_log_bound(cfin);
    put(tr, "N0", cert.N0.get_str(), "largest integer n with n <= C_fin*log n (at least 2)",
        "chain");

    {
        Prec pz = static_cast<Prec>(mpz_sizeinbase(cert.N0.get_mpz_t(), 2)) + 96;
        RInt val = RInt::add(RInt::mul(RInt::point(cert.c7), RInt::from_mpz(cert.N0, pz), pz),
                             RInt::point(cert.c8), pz);
        mpz_class e2 = ceil_mpz(RInt::div(val, RInt::log_mpz(mpz_class(2), pz), pz).hi());
        if (e2 < 1) e2 = 1;
        cert.Z0_log2 = e2;
        put(tr, "Z0_log2", e2.get_str(), "ceil((c7*N0 + c8)/log 2); every |z_i| <= 2^Z0_log2",
            "choice");
    }
    return cert;
}

}  // namespace sunitrec
