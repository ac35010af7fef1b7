#include "sunitrec/recurrence.hpp"

#include <algorithm>

namespace sunitrec {

LinearRecurrence make_recurrence(std::vector<mpz_class> coeffs, std::vector<mpz_class> initials) {
    if (coeffs.empty()) throw InputError("recurrence needs at least one coefficient");
    if (coeffs.size() != initials.size())
        throw InputError("recurrence needs exactly as many initial terms as coefficients");
    if (coeffs.back() == 0)
        throw InputError("trailing recurrence coefficient must be nonzero (exact order)");
    bool all_zero = std::all_of(initials.begin(), initials.end(),
                                [](const mpz_class& v) { return v == 0; });
    if (all_zero) throw InputError("initial terms must not all be zero");
    LinearRecurrence rec;
    rec.order = static_cast<int>(coeffs.size());
    rec.coeffs = std::move(coeffs);
    rec.initials = std::move(initials);
    return rec;
}

IntPoly char_poly(const LinearRecurrence& rec) {
    size_t k = static_cast<size_t>(rec.order);
    std::vector<mpz_class> c(k + 1);
    c[k] = 1;
    for (size_t i = 0; i < k; ++i) c[k - 1 - i] = -rec.coeffs[i];
    return IntPoly(std::move(c));
}

std::vector<mpz_class> terms_upto(const LinearRecurrence& rec, unsigned long N) {
    size_t k = static_cast<size_t>(rec.order);
    std::vector<mpz_class> u = rec.initials;
    u.reserve(std::max<size_t>(N + 1, u.size()));
    for (unsigned long n = k; n <= N; ++n) {
        mpz_class next = 0;
        for (size_t i = 0; i < k; ++i) next += rec.coeffs[i] * u[n - 1 - i];
        u.push_back(std::move(next));
    }
    u.resize(N + 1);
    return u;
}

mpz_class term(const LinearRecurrence& rec, unsigned long n) {
    size_t k = static_cast<size_t>(rec.order);
    if (n < k) return rec.initials[n];
    std::vector<mpz_class> u = rec.initials;
    for (unsigned long m = k; m <= n; ++m) {
        mpz_class next = 0;
        for (size_t i = 0; i < k; ++i) next += rec.coeffs[i] * u[u.size() - 1 - i];
        u.push_back(std::move(next));
    }
    return u.back();
}

mpz_class gamma_value(const LinearRecurrence& rec) {
    mpz_class g = 1;
    for (const auto& a : rec.coeffs) g = std::max(g, mpz_class(abs(a)));
    for (const auto& v : rec.initials) g = std::max(g, mpz_class(abs(v)));
    return g;
}

bool is_degenerate(const LinearRecurrence& rec) {
    IntPoly fsf = squarefree_part(char_poly(rec));
    int k = fsf.degree();
    if (k < 2) return false;  // fewer than two distinct roots: no ratio to test
    IntPoly R = ratio_poly(fsf);
    unsigned long kk = static_cast<unsigned long>(k);
    unsigned long limit = 2 * kk * kk * kk * kk;
    unsigned long phimax = kk * kk;
    for (unsigned long q = 2; q <= limit; ++q) {
        if (euler_phi(q) > phimax) continue;
        if (try_exact_div(R, cyclotomic(q), nullptr)) return true;
    }
    return false;
}

namespace {

// Index of a certified dominant cluster (abs-lower strictly above every other
// abs-upper), or -1 when the disks cannot tell.
int disk_dominant_index(const std::vector<RootCluster>& roots) {
    int best = 0;
    for (size_t i = 1; i < roots.size(); ++i)
        if (roots[i].disk.abs_lower() > roots[best].disk.abs_lower()) best = static_cast<int>(i);
    const Dyadic lo = roots[static_cast<size_t>(best)].disk.abs_lower();
    for (size_t i = 0; i < roots.size(); ++i) {
        if (static_cast<int>(i) == best) continue;
        if (!(roots[i].disk.abs_upper() < lo)) return -1;
    }
    return best;
}

bool disks_intersect(const Ball& a, const Ball& b) { return !balls_disjoint(a, b); }

}  // namespace

SpectralData spectral_data(const LinearRecurrence& rec, Prec prec_cap) {
    IntPoly f = char_poly(rec);
    IntPoly prodp;  // built lazily: needed only to break modulus ties exactly

    for (mpfr_exp_t bits = 64;; bits *= 2) {
        if (bits > prec_cap)
            throw PrecisionExhausted("spectral_data: cap reached while separating moduli");
        Dyadic target = Dyadic::pow2(-bits);
        std::vector<RootCluster> roots = certified_roots(f, target, prec_cap);

        SpectralData sd;
        sd.poly = f;
        sd.num_distinct = static_cast<int>(roots.size());
        sd.prec = static_cast<Prec>(bits);

        int dom = disk_dominant_index(roots);
        if (dom < 0 && roots.size() >= 2) {
            // Modulus ordering is ambiguous at this radius.  Decide exactly:
            // |alpha_i|^2 = alpha_i * conj(alpha_i) is a root of the pair-product
            // polynomial, and distinct roots of that polynomial separate at some
            // finite radius, so pinning each squared modulus to its product root
            // decides every tie.
            if (prodp.is_zero()) prodp = pair_product_poly(squarefree_part(f));
            std::vector<RootCluster> proots = certified_roots(prodp, target, prec_cap);
            Prec wp = static_cast<Prec>(std::max<mpfr_exp_t>(128, bits));
            std::vector<int> pin(roots.size(), -1);
            bool pinned_all = true;
            for (size_t i = 0; i < roots.size() && pinned_all; ++i) {
                Ball m = Ball::mul(roots[i].disk, Ball::conj(roots[i].disk), wp);
                int hit = -1;
                for (size_t j = 0; j < proots.size(); ++j) {
                    if (disks_intersect(m, proots[j].disk)) {
                        if (hit >= 0) {
                            hit = -2;
                            break;
                        }
                        hit = static_cast<int>(j);
                    }
                }
                if (hit < 0) pinned_all = false;
                pin[i] = hit;
            }
            if (!pinned_all) continue;  // tighter disks needed

            // Group clusters by pinned squared modulus and identify the group
            // whose product root is certifiably the largest.
            std::vector<int> group_of_pin(proots.size(), -1);
            std::vector<std::vector<int>> groups;
            for (size_t i = 0; i < roots.size(); ++i) {
                int& g = group_of_pin[static_cast<size_t>(pin[i])];
                if (g < 0) {
                    g = static_cast<int>(groups.size());
                    groups.emplace_back();
                }
                groups[static_cast<size_t>(g)].push_back(static_cast<int>(i));
            }
            int best_group = -1;
            bool separated = true;
            {
                // compare the real enclosures of the pinned product roots
                std::vector<RInt> vals;
                std::vector<int> reps;
                for (size_t g = 0; g < groups.size(); ++g) {
                    int pj = pin[static_cast<size_t>(groups[g][0])];
                    vals.push_back(proots[static_cast<size_t>(pj)].disk.real_rint());
                    reps.push_back(static_cast<int>(g));
                }
                size_t bi = 0;
                for (size_t g = 1; g < vals.size(); ++g)
                    if (vals[g].lo() > vals[bi].lo()) bi = g;
                for (size_t g = 0; g < vals.size(); ++g) {
                    if (g == bi) continue;
                    if (!(vals[g].hi() < vals[bi].lo())) {
                        separated = false;
                        break;
                    }
                }
                if (separated) best_group = reps[bi];
            }
            if (!separated) continue;  // distinct product roots not yet apart

            const std::vector<int>& top = groups[static_cast<size_t>(best_group)];
            if (top.size() >= 2) {
                sd.roots = std::move(roots);
                sd.dominance = DominanceStatus::kNoDominantRoot;
                return sd;
            }
            dom = top[0];
        }

        sd.dominance = DominanceStatus::kDominant;
        sd.dominant_index = dom;
        sd.dominant_simple = roots[static_cast<size_t>(dom)].multiplicity == 1;
        // Integer test: the disk has radius < 1/2, so it contains at most one
        // integer; exact divisibility decides whether that integer is the root.
        const Ball& dd = roots[static_cast<size_t>(dom)].disk;
        mpz_class cand;
        mpfr_get_z(cand.get_mpz_t(), dd.re().raw(), MPFR_RNDN);
        if (f.eval_z(cand) == 0 && dd.contains_int(cand) && cand > 1)
            sd.dominant_integer_gt1 = true;
        sd.roots = std::move(roots);
        return sd;
    }
}

namespace {

// Solve the k x k ball linear system A x = b by Gaussian elimination with
// certified pivoting (pivot must exclude zero).  Returns false if some pivot
// cannot be separated from zero at this precision.
bool solve_ball_system(std::vector<std::vector<Ball>>& a, std::vector<Ball>& b, Prec p,
                       std::vector<Ball>* out) {
    size_t k = b.size();
    for (size_t col = 0; col < k; ++col) {
        size_t piv = col;
        Dyadic best = a[col][col].abs_lower();
        for (size_t r = col + 1; r < k; ++r) {
            Dyadic v = a[r][col].abs_lower();
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best.sgn() <= 0) return false;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (size_t r = col + 1; r < k; ++r) {
            if (a[r][col].is_exact() && a[r][col].re().is_zero() && a[r][col].im().is_zero())
                continue;
            Ball factor;
            try {
                factor = Ball::div(a[r][col], a[col][col], p);
            } catch (const BallDomainError&) {
                return false;
            }
            for (size_t c = col; c < k; ++c)
                a[r][c] = Ball::sub(a[r][c], Ball::mul(factor, a[col][c], p), p);
            b[r] = Ball::sub(b[r], Ball::mul(factor, b[col], p), p);
        }
    }
    std::vector<Ball> x(k);
    for (size_t i = k; i-- > 0;) {
        Ball acc = b[i];
        for (size_t j = i + 1; j < k; ++j) acc = Ball::sub(acc, Ball::mul(a[i][j], x[j], p), p);
        try {
            x[i] = Ball::div(acc, a[i][i], p);
        } catch (const BallDomainError&) {
            return false;
        }
    }
    *out = std::move(x);
    return true;
}

// Match each new cluster to the unique old cluster whose disk it meets.
// Returns an empty vector unless the matching is a bijection.
std::vector<int> match_clusters(const std::vector<RootCluster>& fresh,
                                const std::vector<RootCluster>& old) {
    std::vector<int> map(fresh.size(), -1);
    std::vector<int> used(old.size(), 0);
    for (size_t i = 0; i < fresh.size(); ++i) {
        int hit = -1;
        for (size_t j = 0; j < old.size(); ++j) {
            if (!balls_disjoint(fresh[i].disk, old[j].disk)) {
                if (hit >= 0) return {};
                hit = static_cast<int>(j);
            }
        }
        if (hit < 0 || used[static_cast<size_t>(hit)]) return {};
        used[static_cast<size_t>(hit)] = 1;
        map[i] = hit;
    }
    return map;
}

}  // namespace

BinetForm binet_decomposition(const LinearRecurrence& rec, const SpectralData& sd, Prec prec_cap) {
    if (sd.dominance != DominanceStatus::kDominant)
        throw InternalError("binet_decomposition requires a certified dominant root");
    if (!sd.dominant_simple)
        throw HypothesisRefusal("not_constant_lead_coefficient",
                                "dominant characteristic root is repeated, so the dominant "
                                "expansion coefficient is a nonconstant polynomial in n");

    IntPoly f = char_poly(rec);
    size_t k = static_cast<size_t>(rec.order);
    std::vector<mpz_class> u = terms_upto(rec, std::max<unsigned long>(2 * k, 50));

    for (Prec prec = 256; prec <= prec_cap; prec *= 2) {
        std::vector<RootCluster> roots = certified_roots(f, Dyadic::pow2(-prec / 2), prec_cap);
        std::vector<int> to_old = match_clusters(roots, sd.roots);
        if (to_old.empty()) continue;
        int dom = -1;
        for (size_t i = 0; i < roots.size(); ++i)
            if (to_old[i] == sd.dominant_index) dom = static_cast<int>(i);
        if (dom < 0) continue;

        // Columns: for each cluster i and power l < mult_i, the function
        // n^l * alpha_i^n; rows are n = 0..k-1.
        std::vector<std::pair<size_t, int>> cols;
        for (size_t i = 0; i < roots.size(); ++i)
            for (int l = 0; l < roots[i].multiplicity; ++l) cols.emplace_back(i, l);
        if (cols.size() != k) throw InternalError("binet: multiplicity bookkeeping mismatch");

        std::vector<std::vector<Ball>> a(k, std::vector<Ball>(k));
        std::vector<Ball> b(k);
        for (size_t n = 0; n < k; ++n) {
            for (size_t c = 0; c < k; ++c) {
                auto [i, l] = cols[c];
                mpz_class npow;
                mpz_ui_pow_ui(npow.get_mpz_t(), n, static_cast<unsigned long>(l));  // 0^0 = 1
                Ball alphan = Ball::pow_ui(roots[i].disk, n, prec);
                a[n][c] = Ball::mul_mpz(alphan, npow, prec);
            }
            b[n] = Ball::exact_int(u[n]);
        }
        std::vector<Ball> x;
        if (!solve_ball_system(a, b, prec, &x)) continue;

        BinetForm bf;
        bf.roots = std::move(roots);
        bf.dominant_index = dom;
        bf.coeff_polys.resize(bf.roots.size());
        for (size_t c = 0; c < k; ++c) bf.coeff_polys[cols[c].first].push_back(x[c]);
        bf.eta1 = bf.coeff_polys[static_cast<size_t>(dom)][0];
        bf.prec = prec;

        if (bf.eta1.contains_zero()) {
            if (2 * prec > prec_cap)
                throw HypothesisRefusal("eta1_uncertified",
                                        "dominant expansion coefficient cannot be certified "
                                        "nonzero below the precision cap");
            continue;
        }

        // Self-check: the expansion must contain the exact terms.
        for (unsigned long n = 0; n < u.size(); ++n) {
            Ball v = binet_eval(bf, n, prec);
            if (!v.contains_int(u[n]))
                throw InternalError("binet: expansion does not contain exact terms");
        }
        return bf;
    }
    throw PrecisionExhausted("binet_decomposition: cap reached");
}

Ball binet_eval(const BinetForm& bf, unsigned long n, Prec p) {
    Ball total = Ball::zero();
    for (size_t i = 0; i < bf.roots.size(); ++i) {
        Ball poly = Ball::zero();
        mpz_class npow = 1;
        for (size_t l = 0; l < bf.coeff_polys[i].size(); ++l) {
            poly = Ball::add(poly, Ball::mul_mpz(bf.coeff_polys[i][l], npow, p), p);
            npow *= static_cast<long>(n);
        }
        total = Ball::add(total, Ball::mul(poly, Ball::pow_ui(bf.roots[i].disk, n, p), p), p);
    }
    return total;
}

}  // namespace sunitrec
