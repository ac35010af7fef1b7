// Acceptance gate: nine end-to-end criteria, one verdict line each.
// Exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <set>
#include <string>
#include <vector>

#include "sunitrec/bounds.hpp"
#include "sunitrec/config.hpp"
#include "sunitrec/errors.hpp"
#include "sunitrec/heights.hpp"
#include "sunitrec/recurrence.hpp"
#include "sunitrec/report.hpp"
#include "sunitrec/search.hpp"
#include "sunitrec/sunits.hpp"
#include "testutil.hpp"

using namespace sunitrec;
namespace tu = sunitrec::testutil;
using testutil::dec;
using testutil::within;
using testutil::within_q;

namespace {

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void verdict(int idx, bool pass, const std::string& what, const std::string& detail = "") {
    std::printf("criterion %d: %s — %s%s%s\n", idx, pass ? "PASS" : "FAIL", what.c_str(),
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

template <typename F>
void guarded(int idx, const std::string& what, F body) {
    try {
        body();
    } catch (const std::exception& e) {
        verdict(idx, false, what, std::string("exception: ") + e.what());
    }
}

// ---- criterion 1: exponential-form containment -----------------------------

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    long bad = 0;
    for (const auto& rec : {tu::fib(), tu::pell(), tu::trib()}) {
        auto bf = binet_decomposition(rec, spectral_data(rec));
        auto exact = terms_upto(rec, 300);
        for (unsigned long n = 0; n <= 300; ++n)
            if (!binet_eval(bf, n, bf.prec).contains_int(exact[n])) ++bad;
    }
    double dt = seconds_since(t0);
    verdict(1, bad == 0 && dt < 10.0,
            "closed-form ball contains every exact term, 3 sequences, n <= 300",
            std::to_string(bad) + " violations, " + std::to_string(dt) + " s");
}

// ---- criterion 2: degeneracy classification --------------------------------

// Numeric cross-check at 100+ digits: some ratio of distinct roots has a
// power within 1e-50 of 1 (orders up to 60 exhaust what degree <= 16
// algebraic numbers can do).
bool numeric_degenerate(const LinearRecurrence& rec) {
    const Prec p = 512;
    auto roots = certified_roots(char_poly(rec), Dyadic::pow2(-360));
    mpq_class tol(1, mpz_class(1) << 166);
    for (size_t i = 0; i < roots.size(); ++i) {
        for (size_t j = 0; j < roots.size(); ++j) {
            if (i == j || roots[j].disk.contains_int(0)) continue;
            Ball ratio = Ball::div(roots[i].disk, roots[j].disk, p);
            for (unsigned long q = 1; q <= 60; ++q) {
                Ball pw = Ball::sub(Ball::pow_ui(ratio, q, p), Ball::exact_int(1), p);
                if (pw.abs_upper().to_mpq() < tol) return true;
            }
        }
    }
    return false;
}

void criterion2() {
    long bad = 0;
    if (!is_degenerate(tu::deg_pm1())) ++bad;
    if (!is_degenerate(tu::deg_pmi())) ++bad;
    for (const auto& rec : {tu::fib(), tu::pell(), tu::trib(), tu::mersenne()})
        if (is_degenerate(rec)) ++bad;

    gmp_randclass rng(gmp_randinit_default);
    rng.seed(16180339ul);
    int done = 0;
    while (done < 20) {
        int k = 1 + static_cast<int>(mpz_class(rng.get_z_range(4)).get_ui());
        std::vector<mpz_class> coeffs(k), initials(k);
        for (int i = 0; i < k; ++i) coeffs[i] = mpz_class(rng.get_z_range(9)) - 4;
        if (coeffs[k - 1] == 0) continue;
        bool live = false;
        for (int i = 0; i < k; ++i) {
            initials[i] = mpz_class(rng.get_z_range(7)) - 3;
            live = live || initials[i] != 0;
        }
        if (!live) continue;
        auto rec = make_recurrence(coeffs, initials);
        if (is_degenerate(rec) != numeric_degenerate(rec)) ++bad;
        ++done;
    }
    verdict(2, bad == 0,
            "degeneracy fixtures plus 20 random orders <= 4 against the 100-digit oracle",
            std::to_string(bad) + " disagreements");
}

// ---- criterion 3: height identities -----------------------------------------

void criterion3() {
    long bad = 0;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(27182818ul);
    for (int i = 0; i < 100; ++i) {
        mpz_class p = mpz_class(rng.get_z_bits(48)) + 1;
        mpz_class q = mpz_class(rng.get_z_bits(48)) + 1;
        mpz_class g = gcd(p, q);
        p /= g;
        q /= g;
        if (rng.get_z_range(2) == 0) p = -p;
        auto h = height_rational(p, q);
        auto hr = height_rational(p < 0 ? -q : q, abs(p));  // reciprocal with positive denominator
        mpz_class big = abs(p) > q ? abs(p) : q;
        if (!h.is_exact) ++bad;
        if (!RInt::exp(h.value, 224).contains(mpq_class(big))) ++bad;
        if (Dyadic::cmp(h.value.lo(), hr.value.lo()) != 0 ||
            Dyadic::cmp(h.value.hi(), hr.value.hi()) != 0)
            ++bad;
    }

    IntPoly golden({-1, -1, 1});
    auto roots = certified_roots(golden, Dyadic::pow2(-120));
    auto hb = height_upper_from_poly(golden, roots, 0);
    // bound must dominate the true height 0.2406059125... of the larger root
    // and stay within 1e-9 above log((1+sqrt 5)/2) = 0.4812118250596034...
    bool lower_ok = hb.value.hi().to_mpq() >= dec("0.2406059125298018");
    bool upper_ok = hb.value.hi().to_mpq() <= dec("0.4812118250606034");  // +1e-9
    if (!lower_ok || !upper_ok) ++bad;

    verdict(3, bad == 0,
            "exact rational heights on 100 random fractions, reciprocal symmetry, golden bound",
            std::to_string(bad) + " violations");
}

// ---- criterion 4: explicit linear-form constants ----------------------------

RInt branch1_oracle(int m, int kappa, Prec p) {
    RInt logm = RInt::log_mpz(m, p);
    RInt term = RInt::sub(RInt::add(RInt::of(1), logm, p), RInt::log_mpz(2, p), p);
    RInt acc = RInt::mul_mpq(term, kappa, p);
    acc = RInt::sub(acc, RInt::log_mpz(kappa, p), p);
    acc = RInt::add(acc, RInt::mul_mpq(RInt::log_mpz(30, p), m + 3, p), p);
    acc = RInt::add(acc, RInt::mul_mpq(logm, mpq_class(7, 2), p), p);
    return RInt::exp(acc, p);
}

void criterion4() {
    long bad = 0;
    // frozen 30-digit hand evaluations of the winning branch
    if (!within(matveev_C(1, 1), "1100904.1405259133", "1100904.1405259134")) ++bad;
    if (!within(matveev_C(2, 1), "747318511.8741323107", "747318511.8741323108")) ++bad;

    for (int kappa : {1, 2}) {
        RInt prev = matveev_C(1, kappa);
        for (int m = 1; m <= 30; ++m) {
            RInt got = matveev_C(m, kappa);
            RInt oracle =
                RInt::min(branch1_oracle(m, kappa, 320), RInt::point(Dyadic::pow2(6 * m + 20)));
            if (RInt::certainly_lt(got, oracle) || RInt::certainly_lt(oracle, got)) ++bad;
            if (m > 1 && !RInt::certainly_lt(prev, got)) ++bad;  // nondecreasing (strictly, even)
            prev = got;
        }
    }

    MatveevInput in;
    in.m = 1;
    in.kappa = 1;
    in.D = 1;
    in.B = Dyadic::of(1);
    in.A = {Dyadic::from_mpq(mpq_class(4, 25), 64, MPFR_RNDU)};
    mpq_class mag = -matveev_lower_bound(in).to_mpq();
    if (!within_q(mag, "176144.6624841461", "176144.6624841462")) ++bad;

    verdict(4, bad == 0, "linear-form constants vs independent both-branch oracle, m <= 30",
            std::to_string(bad) + " violations");
}

// ---- criterion 5: growth envelope over the full sample range ----------------

long growth_violations(const LinearRecurrence& rec, unsigned long upto) {
    auto sd = spectral_data(rec);
    auto bf = binet_decomposition(rec, sd);
    auto g = lemma21_constants(rec, bf, sd);
    const Prec p = 320;
    const int k = rec.order;

    RInt alpha = bf.roots[bf.dominant_index].disk.real_rint();
    RInt apow = RInt::point(Dyadic::of(1));
    mpq_class c2q = g.c2.lo().to_mpq();
    mpq_class c3q = g.c3.hi().to_mpq();
    mpq_class c4q = g.c4.hi().to_mpq();

    long bad = 0;
    auto terms = terms_upto(rec, upto);
    for (unsigned long n = 1; n <= upto; ++n) {
        apow = RInt::mul(apow, alpha, p);
        mpq_class nk1(1);
        for (int i = 0; i + 1 < k; ++i) nk1 *= static_cast<long>(n);
        if (mpq_class(abs(terms[n])) > c4q * nk1 * apow.lo().to_mpq()) ++bad;

        Ball nb = Ball::exact_int(static_cast<long>(n));
        for (size_t i = 0; i < bf.coeff_polys.size(); ++i) {
            Ball f = Ball::zero();
            for (size_t l = bf.coeff_polys[i].size(); l-- > 0;)
                f = Ball::add(Ball::mul(f, nb, p), bf.coeff_polys[i][l], p);
            mpq_class lower = f.abs_lower().to_mpq();
            if (lower == 0) continue;  // f_i(n) not certified nonzero
            if (c2q > lower) ++bad;
            mpq_class nm1(1);
            for (size_t l = 0; l + 1 < bf.coeff_polys[i].size(); ++l) nm1 *= static_cast<long>(n);
            if (f.abs_upper().to_mpq() > c3q * nm1) ++bad;
        }
    }
    return bad;
}

void criterion5() {
    long bad = 0;
    for (const auto& rec : {tu::fib(), tu::pell(), tu::trib(), tu::mersenne()})
        bad += growth_violations(rec, 10000);
    verdict(5, bad == 0, "growth envelope holds for 4 fixtures, 1 <= n <= 10^4",
            std::to_string(bad) + " violations");
}

// ---- criterion 6: search engine equivalence and planted recovery ------------

bool same_records(const std::vector<SolutionRecord>& A, const std::vector<SolutionRecord>& B) {
    if (A.size() != B.size()) return false;
    for (size_t i = 0; i < A.size(); ++i) {
        const auto& a = A[i];
        const auto& b = B[i];
        if (a.n != b.n || a.m != b.m || a.lhs_value != b.lhs_value ||
            a.satisfies_dominance != b.satisfies_dominance ||
            a.satisfies_size_hypothesis != b.satisfies_size_hypothesis ||
            a.summands.size() != b.summands.size())
            return false;
        for (size_t j = 0; j < a.summands.size(); ++j)
            if (a.summands[j].sign != b.summands[j].sign ||
                a.summands[j].value != b.summands[j].value ||
                a.summands[j].exponents != b.summands[j].exponents)
                return false;
    }
    return true;
}

bool contains_planted(const std::vector<SolutionRecord>& recs, unsigned long n, unsigned long m,
                      std::vector<mpz_class> values) {
    std::sort(values.begin(), values.end(),
              [](const mpz_class& x, const mpz_class& y) {
                  int c = cmp(abs(x), abs(y));
                  return c != 0 ? c < 0 : x < y;
              });
    for (const auto& r : recs) {
        if (r.n != n || r.m != m || r.summands.size() != values.size()) continue;
        bool all = true;
        for (size_t i = 0; i < values.size(); ++i)
            if (r.summands[i].value != values[i]) all = false;
        if (all) return true;
    }
    return false;
}

void criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    const unsigned long nmax = 60;
    const mpz_class zmax = mpz_class(1) << 20;
    long mismatches = 0, planted_total = 0, planted_missing = 0;

    for (const auto& rec : {tu::fib(), tu::pell(), tu::trib()}) {
        for (std::vector<mpz_class> primes :
             {std::vector<mpz_class>{2}, std::vector<mpz_class>{2, 3},
              std::vector<mpz_class>{2, 3, 5}}) {
            for (int r = 1; r <= 3; ++r) {
                ProblemInstance inst;
                inst.rec = rec;
                inst.S = make_prime_set(primes);
                inst.r = r;

                SearchOptions opt;
                opt.nmax = nmax;
                opt.zmax = zmax;
                auto fast = brute_solutions(inst, opt);
                auto slow = brute_solutions_naive(inst, opt);
                if (!same_records(fast, slow)) ++mismatches;

                ResiduePrefilter pf(inst, nmax, {7, 11, 13});
                SearchOptions popt = opt;
                popt.prefilter = &pf;
                if (!same_records(brute_solutions(inst, popt), fast)) ++mismatches;

                // plant a few solutions per cell by solving for the last summand
                auto small = enumerate_sunits(inst.S, 128);
                int cell_planted = 0;
                for (unsigned long n = 1; n <= 20 && cell_planted < 4; ++n) {
                    for (unsigned long m = 0; m <= n && cell_planted < 4; ++m) {
                        mpz_class T = term(rec, n) + term(rec, m);
                        if (r == 1) {
                            if (T == 0 || abs(T) > zmax) continue;
                            if (!factor_over_S(inst.S, T).has_value()) continue;
                            ++cell_planted;
                            ++planted_total;
                            if (!contains_planted(fast, n, m, {T})) ++planted_missing;
                        } else if (r == 2) {
                            for (const auto& z1 : small) {
                                mpz_class rest = T - z1.value;
                                if (rest == 0 || abs(rest) > zmax) continue;
                                if (!factor_over_S(inst.S, rest).has_value()) continue;
                                ++cell_planted;
                                ++planted_total;
                                if (!contains_planted(fast, n, m, {z1.value, rest}))
                                    ++planted_missing;
                                break;
                            }
                        } else {
                            bool done = false;
                            for (size_t i = 0; i < small.size() && !done; ++i) {
                                for (size_t j = i; j < small.size() && !done; ++j) {
                                    mpz_class rest = T - small[i].value - small[j].value;
                                    if (rest == 0 || abs(rest) > zmax) continue;
                                    if (!factor_over_S(inst.S, rest).has_value()) continue;
                                    done = true;
                                    ++cell_planted;
                                    ++planted_total;
                                    if (!contains_planted(
                                            fast, n, m,
                                            {small[i].value, small[j].value, rest}))
                                        ++planted_missing;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    double dt = seconds_since(t0);
    bool pass = mismatches == 0 && planted_missing == 0 && planted_total >= 50 && dt < 300.0;
    verdict(6, pass, "engine equivalence on 27 cells, pruning neutrality, planted recovery",
            std::to_string(mismatches) + " mismatches, " + std::to_string(planted_total) +
                " planted / " + std::to_string(planted_missing) + " missing, " +
                std::to_string(dt) + " s");
}

// ---- criterion 7: certificate soundness on desk-scale solutions -------------

void criterion7() {
    RunConfig cfg = parse_config_text(R"({
      "recurrence": {"coefficients": ["1", "1"], "initials": ["0", "1"]},
      "primes": ["2", "3", "5"],
      "a": "1", "b": "1", "r": 1, "epsilon": "1"
    })");

    std::string bytes1 = render_json(certificate_json(cfg, final_bound(cfg.inst)));
    std::string bytes2 = render_json(certificate_json(cfg, final_bound(cfg.inst)));

    BoundCertificate cert = final_bound(cfg.inst);
    bool finite = cert.N0 > 0 && cert.Z0_log2 > 0;

    CertCheckData cd = cert_check_from_json(certificate_json(cfg, cert));
    auto recs = brute_solutions(cfg.inst, 60, mpz_class(1) << 20);
    long bad = 0;
    for (const auto& r : recs) {
        if (!check_n_bound(cd, r)) ++bad;
        if (!check_gap_bound(cd, r)) ++bad;
        if (!check_zr_bound(cd, r)) ++bad;
    }

    verdict(7, finite && bytes1 == bytes2 && !recs.empty() && bad == 0,
            "finite certificate, byte-stable report, all desk solutions inside the bounds",
            std::to_string(recs.size()) + " solutions, " + std::to_string(bad) + " violations");
}

// ---- criterion 8: hypothesis refusals ---------------------------------------

void criterion8() {
    long bad = 0;
    auto expect = [&bad](const LinearRecurrence& rec, const std::string& code) {
        ProblemInstance inst;
        inst.rec = rec;
        inst.S = make_prime_set({2});
        try {
            final_bound(inst);
            ++bad;
        } catch (const HypothesisRefusal& e) {
            if (e.code != code) ++bad;
        }
    };
    expect(tu::mersenne(), "dominant_root_integer_gt1");
    expect(tu::deg_pm1(), "degenerate");
    expect(tu::double_root(), "not_constant_lead_coefficient");
    verdict(8, bad == 0, "refusal codes for integer root, degenerate, repeated dominant root",
            std::to_string(bad) + " wrong refusals");
}

// ---- criterion 9: resolving n <= c log n ------------------------------------

void criterion9() {
    long bad = 0;
    if (solve_n_log_bound(Dyadic::of(1)) != 2) ++bad;
    if (solve_n_log_bound(Dyadic::of(10)) != 35) ++bad;
    if (solve_n_log_bound(Dyadic::of(100)) != 647) ++bad;

    std::vector<RInt> logs(16385, RInt::of(0));
    for (long n = 2; n <= 16384; ++n) logs[n] = RInt::log_mpz(n, 256);

    gmp_randclass rng(gmp_randinit_default);
    rng.seed(31415926ul);
    for (int trial = 0; trial < 100; ++trial) {
        mpz_class v = mpz_class(rng.get_z_range(64000)) + 1;
        mpq_class cq(v, 64);
        cq.canonicalize();
        Dyadic c = Dyadic::from_mpq(cq, 64, MPFR_RNDN);
        mpz_class n0 = solve_n_log_bound(c);
        mpz_class best = 0;
        bool ambiguous = false;
        for (long n = 2; n <= 16384; ++n) {
            if (mpq_class(n) <= cq * logs[n].lo().to_mpq())
                best = n;
            else if (!(mpq_class(n) > cq * logs[n].hi().to_mpq()))
                ambiguous = true;
        }
        if (ambiguous) ++bad;
        if (best == 0 ? n0 != 2 : n0 != best) ++bad;
    }
    verdict(9, bad == 0, "n <= c log n resolved maximally, 3 frozen values + 100 random",
            std::to_string(bad) + " violations");
}

}  // namespace

int main() {
    guarded(1, "closed-form containment", criterion1);
    guarded(2, "degeneracy classification", criterion2);
    guarded(3, "height identities", criterion3);
    guarded(4, "linear-form constants", criterion4);
    guarded(5, "growth envelope", criterion5);
    guarded(6, "search equivalence", criterion6);
    guarded(7, "certificate soundness", criterion7);
    guarded(8, "hypothesis refusals", criterion8);
    guarded(9, "bound resolution", criterion9);
    if (g_failures != 0) {
        std::printf("%d of 9 criteria failed\n", g_failures);
        return 1;
    }
    std::printf("all 9 criteria passed\n");
    return 0;
}
