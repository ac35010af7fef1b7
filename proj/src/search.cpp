#include "sunitrec/search.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>

namespace sunitrec {

namespace {

constexpr unsigned long kClosureMaxMod = 1UL << 22;  // residue-set BFS bound
constexpr unsigned long long kSumsetOps = 1ULL << 28;  // schoolbook sumset budget
constexpr unsigned long kCycleCap = 1UL << 18;  // state-map size bound

struct Pool {
    std::vector<SUnit> units;              // sorted by (|value|, sign)
    std::map<mpz_class, size_t> by_value;  // values are pairwise distinct
};

Pool build_pool(const PrimeSet& S, const mpz_class& zmax) {
    Pool pool;
    pool.units = enumerate_sunits(S, zmax);
    for (size_t i = 0; i < pool.units.size(); ++i)
        pool.by_value.emplace(pool.units[i].value, i);
    return pool;
}

void check_options(const ProblemInstance& inst, const SearchOptions& opt) {
    validate_problem(inst);
    if (opt.zmax < 1) throw InputError("search: Zmax must be >= 1");
}

// Materialize the canonical records of one (n, m) cell.  `found` holds
// sorted pool-index tuples, already deduplicated; pool order equals the
// canonical summand order, so the tuple is the canonical form.
void emit_pair(const ProblemInstance& inst, const Pool& pool, unsigned long n, unsigned long m,
               const mpz_class& T, const mpz_class& Un,
               const std::set<std::vector<size_t>>& found, const SearchOptions& opt,
               std::vector<SolutionRecord>& out) {
    for (const auto& tup : found) {
        SolutionRecord rec;
        rec.n = n;
        rec.m = m;
        rec.lhs_value = T;
        rec.summands.reserve(tup.size());
        for (size_t i : tup) rec.summands.push_back(pool.units[i]);
        rec.satisfies_dominance = true;
        for (size_t i = 0; i + 1 < rec.summands.size(); ++i) {
            if (!dominated_by(rec.summands[i], rec.summands.back(), inst.eps,
                              inst.strict_dominance)) {
                rec.satisfies_dominance = false;
                break;
            }
        }
        rec.satisfies_size_hypothesis = mpz_cmpabs(T.get_mpz_t(), Un.get_mpz_t()) >= 0;
        if (opt.filter_dominant && !rec.satisfies_dominance) continue;
        out.push_back(std::move(rec));
    }
}

}  // namespace

// ---------------------------------------------------------------- prefilter

ResiduePrefilter::ResiduePrefilter(const ProblemInstance& inst, unsigned long nmax,
                                   const std::vector<mpz_class>& moduli) {
    validate_problem(inst);
    const mpz_class mod_max = mpz_class(1) << 32;
    for (const auto& M : moduli) {
        if (M == 1) throw InputError("residue prefilter: modulus 1 is useless");
        if (M < 2) throw InputError("residue prefilter: modulus must be >= 2");
        if (M > mod_max) throw InputError("residue prefilter: modulus must be <= 2^32");
    }
    for (size_t i = 0; i < moduli.size(); ++i)
        for (size_t j = i + 1; j < moduli.size(); ++j)
            if (gcd(moduli[i], moduli[j]) != 1)
                throw InputError("residue prefilter: moduli must be pairwise coprime");

    const LinearRecurrence& rec = inst.rec;
    const int k = rec.order;
    for (const auto& M : moduli) {
        ModData md;
        md.mod = M.get_ui();
        md.am = mpz_fdiv_ui(inst.a.get_mpz_t(), md.mod);
        md.bm = mpz_fdiv_ui(inst.b.get_mpz_t(), md.mod);

        std::vector<unsigned long> cm(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i)
            cm[static_cast<size_t>(i)] =
                mpz_fdiv_ui(rec.coeffs[static_cast<size_t>(i)].get_mpz_t(), md.mod);
        std::vector<unsigned long> seq;
        for (int i = 0; i < k; ++i)
            seq.push_back(mpz_fdiv_ui(rec.initials[static_cast<size_t>(i)].get_mpz_t(), md.mod));
        auto step = [&]() {
            size_t j = seq.size();
            unsigned __int128 acc = 0;
            for (int i = 1; i <= k; ++i)
                acc += static_cast<unsigned __int128>(cm[static_cast<size_t>(i - 1)]) *
                       seq[j - static_cast<size_t>(i)];
            seq.push_back(static_cast<unsigned long>(acc % md.mod));
        };

        // First repeated k-term state closes the orbit.
        std::unordered_map<std::string, unsigned long> states;
        bool cyc = false;
        for (unsigned long j = 0; j <= std::min(nmax, kCycleCap); ++j) {
            while (seq.size() < j + static_cast<size_t>(k)) step();
            std::string key(reinterpret_cast<const char*>(&seq[j]),
                            sizeof(unsigned long) * static_cast<size_t>(k));
            auto [it, fresh] = states.emplace(std::move(key), j);
            if (!fresh) {
                md.cycle_start = it->second;
                md.cycle_len = j - it->second;
                seq.resize(md.cycle_start + md.cycle_len);
                cyc = true;
                break;
            }
        }
        if (!cyc) {
            md.cycle_len = 0;
            while (seq.size() <= nmax) step();
        }
        md.useq = std::move(seq);

        // Residues of S-unit values: close {1, -1} under multiplication by
        // the primes (all exponents, so a superset of any bounded search).
        if (md.mod <= kClosureMaxMod) {
            std::vector<uint8_t> vis(md.mod, 0);
            std::vector<uint32_t> R;
            auto push = [&](unsigned long x) {
                if (!vis[x]) {
                    vis[x] = 1;
                    R.push_back(static_cast<uint32_t>(x));
                }
            };
            push(1 % md.mod);
            push((md.mod - 1) % md.mod);
            std::vector<unsigned long> pm;
            for (const auto& p : inst.S.primes) pm.push_back(mpz_fdiv_ui(p.get_mpz_t(), md.mod));
            for (size_t qi = 0; qi < R.size(); ++qi)
                for (unsigned long pv : pm)
                    push(static_cast<unsigned long>(
                        (static_cast<unsigned __int128>(R[qi]) * pv) % md.mod));
            std::sort(R.begin(), R.end());

            if (inst.r == 1) {
                md.reachable.assign(md.mod, false);
                for (uint32_t x : R) md.reachable[x] = true;
                md.active = true;
            } else {
                unsigned long long cost = static_cast<unsigned long long>(inst.r - 1) *
                                          R.size() * md.mod;
                if (cost <= kSumsetOps) {
                    std::vector<bool> prev(md.mod, false);
                    for (uint32_t x : R) prev[x] = true;
                    for (int stepi = 2; stepi <= inst.r; ++stepi) {
                        std::vector<bool> nxt(md.mod, false);
                        for (unsigned long x = 0; x < md.mod; ++x) {
                            if (!prev[x]) continue;
                            for (uint32_t y : R) {
                                unsigned long z = x + y;
                                if (z >= md.mod) z -= md.mod;
                                nxt[z] = true;
                            }
                        }
                        prev = std::move(nxt);
                    }
                    md.reachable = std::move(prev);
                    md.active = true;
                }
            }
        }
        mods_.push_back(std::move(md));
    }
}

unsigned long ResiduePrefilter::fold(const ModData& md, unsigned long n) const {
    if (n < md.useq.size()) return md.useq[n];
    if (md.cycle_len == 0)
        throw InternalError("residue prefilter: index beyond the precomputed table");
    return md.useq[md.cycle_start + (n - md.cycle_start) % md.cycle_len];
}

bool ResiduePrefilter::admits(unsigned long n, unsigned long m) const {
    for (const auto& md : mods_) {
        if (!md.active) continue;
        unsigned long un = fold(md, n);
        unsigned long um = fold(md, m);
        unsigned long t = static_cast<unsigned long>(
            (static_cast<unsigned __int128>(md.am) * un +
             static_cast<unsigned __int128>(md.bm) * um) %
            md.mod);
        if (!md.reachable[t]) return false;
    }
    return true;
}

int ResiduePrefilter::active_count() const {
    int c = 0;
    for (const auto& md : mods_) c += md.active ? 1 : 0;
    return c;
}

// ------------------------------------------------------------------ engines

std::vector<SolutionRecord> brute_solutions_naive(const ProblemInstance& inst,
                                                  const SearchOptions& opt) {
    check_options(inst, opt);
    const int r = inst.r;
    Pool pool = build_pool(inst.S, opt.zmax);
    std::vector<mpz_class> U = terms_upto(inst.rec, opt.nmax);
    std::vector<mpz_class> slack(static_cast<size_t>(r) + 1);
    for (int q = 0; q <= r; ++q) slack[static_cast<size_t>(q)] = opt.zmax * q;
    SearchStats local;
    SearchStats& st = opt.stats ? *opt.stats : local;
    st.naive_fallback = true;

    std::vector<SolutionRecord> out;
    std::vector<size_t> cur;
    for (unsigned long n = 0; n <= opt.nmax; ++n) {
        for (unsigned long m = 0; m <= n; ++m) {
            ++st.pairs_total;
            if (opt.prefilter && !opt.prefilter->admits(n, m)) {
                ++st.pairs_pruned_residue;
                continue;
            }
            mpz_class T = inst.a * U[n] + inst.b * U[m];
            if (mpz_cmpabs(T.get_mpz_t(), slack[static_cast<size_t>(r)].get_mpz_t()) > 0) {
                ++st.pairs_pruned_size;
                continue;
            }
            std::set<std::vector<size_t>> found;
            auto dfs = [&](auto&& self, size_t pos, size_t from, const mpz_class& partial) -> void {
                if (pos + 1 == static_cast<size_t>(r)) {
                    mpz_class rem = T - partial;
                    if (rem == 0) return;
                    if (mpz_cmpabs(rem.get_mpz_t(), opt.zmax.get_mpz_t()) > 0) return;
                    ++st.tuples_checked;
                    if (!factor_over_S(inst.S, rem)) return;
                    auto it = pool.by_value.find(rem);
                    if (it == pool.by_value.end())
                        throw InternalError("search: smooth remainder missing from the pool");
                    std::vector<size_t> tup(cur);
                    tup.push_back(it->second);
                    std::sort(tup.begin(), tup.end());
                    found.insert(std::move(tup));
                    return;
                }
                const mpz_class& budget = slack[static_cast<size_t>(r) - pos - 1];
                for (size_t j = from; j < pool.units.size(); ++j) {
                    mpz_class p2 = partial + pool.units[j].value;
                    mpz_class diff = T - p2;
                    if (mpz_cmpabs(diff.get_mpz_t(), budget.get_mpz_t()) > 0) continue;
                    cur.push_back(j);
                    self(self, pos + 1, j, p2);
                    cur.pop_back();
                }
            };
            dfs(dfs, 0, 0, mpz_class(0));
            emit_pair(inst, pool, n, m, T, U[n], found, opt, out);
        }
    }
    return out;
}

std::vector<SolutionRecord> brute_solutions(const ProblemInstance& inst,
                                            const SearchOptions& opt) {
    check_options(inst, opt);
    const int r = inst.r;
    const int H = (r + 1) / 2;  // indexed half
    const int I = r - H;        // iterated half
    Pool pool = build_pool(inst.S, opt.zmax);

    mpz_class combos;
    mpz_bin_uiui(combos.get_mpz_t(), pool.units.size() + static_cast<unsigned long>(H) - 1,
                 static_cast<unsigned long>(H));
    if (combos > static_cast<unsigned long>(opt.index_cap))
        return brute_solutions_naive(inst, opt);

    SearchStats local;
    SearchStats& st = opt.stats ? *opt.stats : local;
    st.naive_fallback = false;

    // All H-multisets of summand values, keyed by their sum.
    std::map<mpz_class, std::vector<std::vector<uint32_t>>> index;
    {
        std::vector<uint32_t> hcur;
        auto hdfs = [&](auto&& self, int pos, size_t from, const mpz_class& sum) -> void {
            if (pos == H) {
                index[sum].push_back(hcur);
                return;
            }
            for (size_t j = from; j < pool.units.size(); ++j) {
                hcur.push_back(static_cast<uint32_t>(j));
                self(self, pos + 1, j, mpz_class(sum + pool.units[j].value));
                hcur.pop_back();
            }
        };
        hdfs(hdfs, 0, 0, mpz_class(0));
    }

    std::vector<mpz_class> U = terms_upto(inst.rec, opt.nmax);
    std::vector<mpz_class> slack(static_cast<size_t>(r) + 1);
    for (int q = 0; q <= r; ++q) slack[static_cast<size_t>(q)] = opt.zmax * q;

    std::vector<SolutionRecord> out;
    std::vector<size_t> cur;
    for (unsigned long n = 0; n <= opt.nmax; ++n) {
        for (unsigned long m = 0; m <= n; ++m) {
            ++st.pairs_total;
            if (opt.prefilter && !opt.prefilter->admits(n, m)) {
                ++st.pairs_pruned_residue;
                continue;
            }
            mpz_class T = inst.a * U[n] + inst.b * U[m];
            if (mpz_cmpabs(T.get_mpz_t(), slack[static_cast<size_t>(r)].get_mpz_t()) > 0) {
                ++st.pairs_pruned_size;
                continue;
            }
            std::set<std::vector<size_t>> found;
            auto idfs = [&](auto&& self, int pos, size_t from, const mpz_class& partial) -> void {
                if (pos == I) {
                    auto it = index.find(mpz_class(T - partial));
                    if (it == index.end()) return;
                    for (const auto& ht : it->second) {
                        ++st.tuples_checked;
                        std::vector<size_t> tup(cur);
                        for (uint32_t x : ht) tup.push_back(x);
                        std::sort(tup.begin(), tup.end());
                        found.insert(std::move(tup));
                    }
                    return;
                }
                const mpz_class& budget = slack[static_cast<size_t>(r - pos - 1)];
                for (size_t j = from; j < pool.units.size(); ++j) {
                    mpz_class p2 = partial + pool.units[j].value;
                    mpz_class diff = T - p2;
                    if (mpz_cmpabs(diff.get_mpz_t(), budget.get_mpz_t()) > 0) continue;
                    cur.push_back(j);
                    self(self, pos + 1, j, p2);
                    cur.pop_back();
                }
            };
            idfs(idfs, 0, 0, mpz_class(0));
            emit_pair(inst, pool, n, m, T, U[n], found, opt, out);
        }
    }
    return out;
}

std::vector<SolutionRecord> brute_solutions(const ProblemInstance& inst, unsigned long nmax,
                                            const mpz_class& zmax) {
    SearchOptions opt;
    opt.nmax = nmax;
    opt.zmax = zmax;
    return brute_solutions(inst, opt);
}

bool verify_solution(const ProblemInstance& inst, const SolutionRecord& rec) {
    try {
        if (static_cast<int>(rec.summands.size()) != inst.r) return false;
        if (rec.n < rec.m) return false;
        for (const SUnit& z : rec.summands) {
            if (z.sign != 1 && z.sign != -1) return false;
            if (z.exponents.size() != inst.S.primes.size()) return false;
            SUnit w = make_sunit(inst.S, z.sign, z.exponents);
            if (w.value != z.value) return false;
        }
        for (size_t i = 0; i + 1 < rec.summands.size(); ++i)
            if (sunit_less(rec.summands[i + 1], rec.summands[i])) return false;
        mpz_class Un = term(inst.rec, rec.n);
        mpz_class Um = term(inst.rec, rec.m);
        mpz_class lhs = inst.a * Un + inst.b * Um;
        if (lhs != rec.lhs_value) return false;
        mpz_class sum = 0;
        for (const SUnit& z : rec.summands) sum += z.value;
        if (sum != lhs) return false;
        bool dom = true;
        for (size_t i = 0; i + 1 < rec.summands.size(); ++i) {
            if (!dominated_by(rec.summands[i], rec.summands.back(), inst.eps,
                              inst.strict_dominance)) {
                dom = false;
                break;
            }
        }
        if (dom != rec.satisfies_dominance) return false;
        bool sz = mpz_cmpabs(lhs.get_mpz_t(), Un.get_mpz_t()) >= 0;
        if (sz != rec.satisfies_size_hypothesis) return false;
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace sunitrec
