#include "sunitrec/sunits.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace sunitrec {

namespace {

bool miller_rabin(const mpz_class& n, const mpz_class& a) {
    if (mpz_divisible_p(n.get_mpz_t(), a.get_mpz_t()) != 0) return n == a;
    mpz_class d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    mpz_class nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return true;
        if (x <= 1) return false;
    }
    return false;
}

// Deterministic for n below ~3.3e24 (covers 2^64) via the fixed witness set;
// strong probable-prime verdict beyond that.
bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    static const long kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    static const mpz_class kDetLimit = mpz_class("3300000000000000000000000");
    if (n < kDetLimit) {
        for (long w : kWitnesses) {
            if (n == w) return true;
            if (!miller_rabin(n, mpz_class(w))) return false;
        }
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) >= 1;
}

}  // namespace

PrimeSet make_prime_set(std::vector<mpz_class> primes) {
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] < 2 || !is_prime(primes[i]))
            throw InputError("prime set: " + primes[i].get_str() + " is not prime");
        if (i > 0 && primes[i] == primes[i - 1])
            throw InputError("prime set: duplicate entry " + primes[i].get_str());
    }
    return PrimeSet{std::move(primes)};
}

SUnit make_sunit(const PrimeSet& S, int sign, std::vector<unsigned long> exponents) {
    if (sign != 1 && sign != -1) throw InputError("s-unit sign must be +1 or -1");
    if (exponents.size() != S.size()) throw InputError("s-unit exponent count mismatch");
    mpz_class v = 1, pw;
    for (size_t i = 0; i < exponents.size(); ++i) {
        mpz_pow_ui(pw.get_mpz_t(), S.primes[i].get_mpz_t(), exponents[i]);
        v *= pw;
    }
    if (sign < 0) v = -v;
    return SUnit{sign, std::move(exponents), std::move(v)};
}

std::optional<SUnit> factor_over_S(const PrimeSet& S, const mpz_class& z) {
    if (z == 0) throw InputError("factor_over_S: zero is not an S-unit");
    mpz_class m = abs(z);
    std::vector<unsigned long> exps(S.size(), 0);
    for (size_t i = 0; i < S.size(); ++i)
        exps[i] = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), S.primes[i].get_mpz_t());
    if (m != 1) return std::nullopt;
    return SUnit{z < 0 ? -1 : 1, std::move(exps), z};
}

bool sunit_less(const SUnit& x, const SUnit& y) {
    int c = mpz_cmpabs(x.value.get_mpz_t(), y.value.get_mpz_t());
    if (c != 0) return c < 0;
    return x.sign < y.sign;
}

std::vector<SUnit> enumerate_sunits(const PrimeSet& S, const mpz_class& bound) {
    if (bound < 1) throw InputError("enumerate_sunits: bound must be >= 1");
    std::vector<SUnit> out;
    std::vector<unsigned long> exps(S.size(), 0);
    auto rec = [&](auto&& self, size_t i, const mpz_class& acc) -> void {
        if (i == S.size()) {
            out.push_back(SUnit{-1, exps, -acc});
            out.push_back(SUnit{1, exps, acc});
            return;
        }
        mpz_class v = acc;
        unsigned long e = 0;
        for (;;) {
            exps[i] = e;
            self(self, i + 1, v);
            v *= S.primes[i];
            if (v > bound) break;
            ++e;
        }
        exps[i] = 0;
    };
    rec(rec, 0, mpz_class(1));
    std::sort(out.begin(), out.end(), sunit_less);
    return out;
}

bool dominated_by(const SUnit& x, const SUnit& y, const mpq_class& eps, bool strict) {
    if (eps <= 0) throw InputError("epsilon must be positive");
    mpq_class e(eps);
    e.canonicalize();
    if (!e.get_num().fits_ulong_p() || !e.get_den().fits_ulong_p())
        throw InputError("epsilon numerator/denominator too large");
    unsigned long u = e.get_num().get_ui();
    unsigned long v = e.get_den().get_ui();
    if (u > std::numeric_limits<unsigned long>::max() - v)
        throw InputError("epsilon numerator/denominator too large");
    // |x|^(1+eps) < |y|  <=>  |x|^(u+v) < |y|^v  with eps = u/v.
    mpz_class ax = abs(x.value), ay = abs(y.value), lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), ax.get_mpz_t(), u + v);
    mpz_pow_ui(rhs.get_mpz_t(), ay.get_mpz_t(), v);
    return strict ? lhs < rhs : lhs <= rhs;
}

void admissible_tuples(const PrimeSet& S, int r, const mpq_class& eps, const mpz_class& zmax,
                       bool strict, const std::function<bool(const std::vector<SUnit>&)>& sink) {
    if (r < 1) throw InputError("admissible_tuples: r must be >= 1");
    if (zmax < 1) throw InputError("admissible_tuples: zmax must be >= 1");
    std::vector<SUnit> all = enumerate_sunits(S, zmax);
    std::vector<SUnit> tuple(static_cast<size_t>(r));
    bool go = true;
    for (const SUnit& zr : all) {
        if (!go) break;
        if (r == 1) {
            tuple[0] = zr;
            go = sink(tuple);
            continue;
        }
        // The gap test is monotone in |z_i|, so the admissible pool for this
        // z_r is a prefix of the sorted unit list.
        size_t K = 0;
        while (K < all.size() && dominated_by(all[K], zr, eps, strict)) ++K;
        if (K == 0) continue;
        tuple[static_cast<size_t>(r) - 1] = zr;
        auto emit = [&](auto&& self, int pos, size_t from) -> void {
            if (pos == r - 1) {
                go = sink(tuple);
                return;
            }
            for (size_t j = from; j < K && go; ++j) {
                tuple[static_cast<size_t>(pos)] = all[j];
                self(self, pos + 1, j);
            }
        };
        emit(emit, 0, 0);
    }
}

}  // namespace sunitrec
