#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "sunitrec/bounds.hpp"
#include "sunitrec/errors.hpp"
#include "testutil.hpp"

using namespace sunitrec;
namespace tu = sunitrec::testutil;
using testutil::dec;
using testutil::within;
using testutil::within_q;

static ProblemInstance fib_instance(std::vector<mpz_class> primes, int r = 1) {
    ProblemInstance inst;
    inst.rec = tu::fib();
    inst.S = make_prime_set(std::move(primes));
    inst.r = r;
    return inst;
}

TEST_CASE("problem validation") {
    auto inst = fib_instance({2});
    CHECK_NOTHROW(validate_problem(inst));
    auto bad = inst;
    bad.a = 0;
    CHECK_THROWS_AS(validate_problem(bad), InputError);
    bad = inst;
    bad.b = -1;
    CHECK_THROWS_AS(validate_problem(bad), InputError);
    bad = inst;
    bad.r = 0;
    CHECK_THROWS_AS(validate_problem(bad), InputError);
    bad = inst;
    bad.eps = 0;
    CHECK_THROWS_AS(validate_problem(bad), InputError);
    bad = inst;
    bad.eps = mpq_class(-1, 3);
    CHECK_THROWS_AS(validate_problem(bad), InputError);
}

// Independent evaluation of the first branch through its logarithm:
// exp(-log k + k(1 + log m - log 2) + (m+3) log 30 + (7/2) log m).
static RInt branch1_oracle(int m, int kappa, Prec p) {
    RInt logm = RInt::log_mpz(m, p);
    RInt term = RInt::sub(RInt::add(RInt::of(1), logm, p), RInt::log_mpz(2, p), p);
    RInt acc = RInt::mul_mpq(term, kappa, p);
    acc = RInt::sub(acc, RInt::log_mpz(kappa, p), p);
    acc = RInt::add(acc, RInt::mul_mpq(RInt::log_mpz(30, p), m + 3, p), p);
    acc = RInt::add(acc, RInt::mul_mpq(logm, mpq_class(7, 2), p), p);
    return RInt::exp(acc, p);
}

TEST_CASE("linear-form constant matches the frozen oracle digits") {
    RInt c11 = matveev_C(1, 1);
    CHECK(within(c11, "1100904.1405259133", "1100904.1405259134"));
    RInt c21 = matveev_C(2, 1);
    CHECK(within(c21, "747318511.8741323107", "747318511.8741323108"));

    // the second branch would have been 2^26 and 2^32: both larger
    CHECK(c11.hi().to_mpq() < mpq_class(1) << 26);
    CHECK(c21.hi().to_mpq() < mpq_class(1) << 32);

    // both-branch cross-check at several sizes, independent composition
    for (int kappa : {1, 2}) {
        for (int m : {1, 2, 3, 5, 8, 20, 30}) {
            RInt oracle = RInt::min(branch1_oracle(m, kappa, 320),
                                    RInt::point(Dyadic::pow2(6 * m + 20)));
            RInt got = matveev_C(m, kappa);
            CHECK(!RInt::certainly_lt(got, oracle));
            CHECK(!RInt::certainly_lt(oracle, got));
            // enclosure is tight: relative width below 1e-20
            mpq_class width = got.hi().to_mpq() - got.lo().to_mpq();
            CHECK(width * (mpz_class(1) << 70) < got.lo().to_mpq());
        }
    }

    CHECK_THROWS_AS(matveev_C(0, 1), InputError);
    CHECK_THROWS_AS(matveev_C(1, 3), InputError);
}

TEST_CASE("linear-form constant is strictly increasing in the log count") {
    for (int kappa : {1, 2})
        for (int m = 1; m < 30; ++m)
            CHECK(RInt::certainly_lt(matveev_C(m, kappa), matveev_C(m + 1, kappa)));
}

TEST_CASE("lower bound for the linear form, unit inputs") {
    MatveevInput in;
    in.m = 1;
    in.kappa = 1;
    in.D = 1;
    in.B = Dyadic::of(1);
    in.A = {Dyadic::from_mpq(mpq_class(4, 25), 64, MPFR_RNDU)};
    Dyadic got = matveev_lower_bound(in);
    CHECK(got.sgn() < 0);
    mpq_class mag = -got.to_mpq();
    CHECK(within_q(mag, "176144.6624841461", "176144.6624841462"));
}

TEST_CASE("lower bound scales with the coefficient size as log(eB)") {
    MatveevInput in;
    in.m = 2;
    in.kappa = 2;
    in.D = 2;
    in.A = {Dyadic::of(1), Dyadic::of(3)};
    in.B = Dyadic::of(10);
    mpq_class b10 = -matveev_lower_bound(in).to_mpq();
    in.B = Dyadic::of(20);
    mpq_class b20 = -matveev_lower_bound(in).to_mpq();
    CHECK(b20 > b10);
    CHECK(within_q(b20 / b10, "1.2098", "1.2099"));  // log(20e)/log(10e)
}

TEST_CASE("lower bound input validation") {
    MatveevInput in;
    in.m = 1;
    in.kappa = 1;
    in.D = 1;
    in.B = Dyadic::of(1);
    in.A = {Dyadic::from_mpq(mpq_class(3, 20), 64, MPFR_RNDN)};  // 0.15 < 0.16
    CHECK_THROWS_AS(matveev_lower_bound(in), InputError);
    in.A = {Dyadic::of(1), Dyadic::of(1)};  // size mismatch
    CHECK_THROWS_AS(matveev_lower_bound(in), InputError);
    in.A = {Dyadic::of(1)};
    in.B = Dyadic::from_mpq(mpq_class(1, 2), 64, MPFR_RNDN);
    CHECK_THROWS_AS(matveev_lower_bound(in), InputError);
    in.B = Dyadic::of(1);
    in.D = 0;
    CHECK_THROWS_AS(matveev_lower_bound(in), InputError);
    in.D = 1;
    in.kappa = 3;
    CHECK_THROWS_AS(matveev_lower_bound(in), InputError);
}

TEST_CASE("largest-summand bound is linear in n and holds unconditionally") {
    auto inst = fib_instance({2});
    auto sd = spectral_data(inst.rec);
    auto bf = binet_decomposition(inst.rec, sd);
    auto growth = lemma21_constants(inst.rec, bf, sd);
    auto [c7, c8] = zr_log_bound(inst, growth, bf);
    CHECK(c7.sgn() > 0);
    CHECK(c8.sgn() > 0);

    mpq_class c7q = c7.to_mpq(), c8q = c8.to_mpq();
    auto terms = terms_upto(inst.rec, 40);
    for (unsigned long n = 0; n <= 40; ++n) {
        for (unsigned long m = 0; m <= n; ++m) {
            mpz_class T = terms[n] + terms[m];
            if (T == 0) continue;
            mpq_class logT = RInt::log_mpz(abs(T), 192).hi().to_mpq();
            CHECK(logT < c7q * static_cast<long>(n) + c8q);
        }
    }

    // epsilon widens the exponent coefficient
    auto inst2 = inst;
    inst2.eps = 2;
    auto [c7b, c8b] = zr_log_bound(inst2, growth, bf);
    CHECK(c7b.to_mpq() > c7q);
    CHECK(c8b.sgn() > 0);
}

TEST_CASE("gap constant is finite, deterministic, and traced") {
    auto inst = fib_instance({2});
    auto sd = spectral_data(inst.rec);
    auto bf = binet_decomposition(inst.rec, sd);
    auto growth = lemma21_constants(inst.rec, bf, sd);

    std::vector<TraceEntry> trace;
    Dyadic g1 = gap_bound(inst, growth, bf, sd, &trace);
    Dyadic g2 = gap_bound(inst, growth, bf, sd);
    CHECK(g1.sgn() > 0);
    CHECK(Dyadic::cmp(g1, g2) == 0);

    std::set<std::string> names;
    for (const auto& e : trace) {
        names.insert(e.name);
        CHECK((e.kind == "chain" || e.kind == "choice"));
        CHECK(!e.value.empty());
        CHECK(!e.formula.empty());
    }
    for (const char* want : {"c9", "c10", "c11", "c12", "theta", "c13", "c15", "c16", "c17",
                             "c18"})
        CHECK(names.count(want) == 1);

    // more summand slots can only push the gap constant up
    Dyadic g3 = gap_bound(fib_instance({2}, 3), growth, bf, sd);
    CHECK(Dyadic::cmp(g3, g1) >= 0);
}

TEST_CASE("full certificate for the golden instance") {
    auto inst = fib_instance({2, 3, 5});
    BoundCertificate cert = final_bound(inst);

    CHECK(cert.hypotheses.nondegenerate);
    CHECK(cert.hypotheses.dominant_root_found);
    CHECK(cert.hypotheses.dominant_simple);
    CHECK(cert.hypotheses.dominant_real_gt1);
    CHECK(cert.hypotheses.dominant_not_integer_gt1);
    CHECK(cert.hypotheses.eta1_nonzero);
    CHECK(!cert.hypotheses.scope.empty());

    CHECK(cert.N0 > 0);
    CHECK(cert.Z0_log2 >= 1);
    CHECK(cert.c7.sgn() > 0);
    CHECK(cert.c8.sgn() > 0);
    CHECK(cert.gap_constant.sgn() > 0);
    CHECK(cert.final_constant.sgn() > 0);
    CHECK(cert.N0 == solve_n_log_bound(cert.final_constant));

    std::set<std::string> names;
    for (const auto& e : cert.trace) names.insert(e.name);
    for (const char* want : {"c1", "c4", "c5", "c7", "c8", "c18", "fin_main", "C_fin", "N0",
                             "Z0_log2"})
        CHECK(names.count(want) == 1);

    // byte-level determinism of the numbers themselves
    BoundCertificate again = final_bound(inst);
    CHECK(again.N0 == cert.N0);
    CHECK(again.Z0_log2 == cert.Z0_log2);
    CHECK(Dyadic::cmp(again.final_constant, cert.final_constant) == 0);
    CHECK(Dyadic::cmp(again.c7, cert.c7) == 0);
    CHECK(Dyadic::cmp(again.c8, cert.c8) == 0);
    CHECK(Dyadic::cmp(again.gap_constant, cert.gap_constant) == 0);

    // growing the problem never shrinks the resolved bound
    CHECK(final_bound(fib_instance({2})).N0 <= cert.N0);
    CHECK(cert.N0 <= final_bound(fib_instance({2, 3, 5}, 2)).N0);
}

TEST_CASE("hypothesis refusals carry their reason codes") {
    auto expects = [](const LinearRecurrence& rec, const char* code) {
        ProblemInstance inst;
        inst.rec = rec;
        inst.S = make_prime_set({2});
        try {
            final_bound(inst);
            FAIL("expected refusal: ", code);
        } catch (const HypothesisRefusal& e) {
            CHECK(e.code == code);
        }
    };
    expects(tu::mersenne(), "dominant_root_integer_gt1");
    expects(tu::deg_pm1(), "degenerate");
    expects(tu::deg_pmi(), "degenerate");
    expects(tu::double_root(), "not_constant_lead_coefficient");
    expects(tu::no_dominant(), "no_dominant_root");
    expects(tu::neg_dominant(), "dominant_root_not_real_gt1");
    // initials landing exactly on the subdominant eigenvector: U_n = 1 forever,
    // so the dominant-root coefficient vanishes and cannot be certified nonzero
    expects(make_recurrence({-1, 2}, {1, 1}), "eta1_uncertified");
}

TEST_CASE("resolving n <= c log n") {
    CHECK(solve_n_log_bound(Dyadic::of(1)) == 2);
    CHECK(solve_n_log_bound(Dyadic::of(10)) == 35);
    CHECK(solve_n_log_bound(Dyadic::of(100)) == 647);
    CHECK_THROWS_AS(solve_n_log_bound(Dyadic::of(0)), InputError);
    CHECK_THROWS_AS(solve_n_log_bound(Dyadic::of(-5)), InputError);
    CHECK(solve_n_log_bound(Dyadic::of(1000000)) > 1000000);

    // brute maximality on seeded random values c = v/64 <= 1000
    std::vector<RInt> logs(16385, RInt::of(0));
    for (long n = 2; n <= 16384; ++n) logs[n] = RInt::log_mpz(n, 256);

    gmp_randclass rng(gmp_randinit_default);
    rng.seed(424242ul);
    for (int trial = 0; trial < 25; ++trial) {
        mpz_class v = mpz_class(rng.get_z_range(64000)) + 1;
        mpq_class cq(v, 64);
        cq.canonicalize();
        Dyadic c = Dyadic::from_mpq(cq, 64, MPFR_RNDN);  // exact: dyadic by construction
        mpz_class n0 = solve_n_log_bound(c);

        mpz_class best = 0;
        for (long n = 2; n <= 16384; ++n) {
            if (mpq_class(n) <= cq * logs[n].lo().to_mpq()) {
                best = n;
            } else {
                REQUIRE(mpq_class(n) > cq * logs[n].hi().to_mpq());
            }
        }
        if (best == 0)
            CHECK(n0 == 2);
        else
            CHECK(n0 == best);
    }
}
