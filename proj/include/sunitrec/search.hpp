#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "sunitrec/bounds.hpp"
#include "sunitrec/recurrence.hpp"
#include "sunitrec/sunits.hpp"

namespace sunitrec {

// One solution of a*U_n + b*U_m = z_1 + ... + z_r in canonical form: the
// summands are sorted ascending by (|value|, sign), so the last entry is the
// largest summand (the one the size-gap condition names).
struct SolutionRecord {
    unsigned long n = 0;
    unsigned long m = 0;                 // n >= m
    std::vector<SUnit> summands;         // exactly r entries, sorted
    mpz_class lhs_value;                 // a*U_n + b*U_m
    bool satisfies_dominance = false;    // every earlier summand gap-dominated by the last
    bool satisfies_size_hypothesis = false;  // |a*U_n + b*U_m| >= |U_n|
};

// Sound (n, m) pruning by modular arithmetic: for each modulus M the set of
// residues reachable as a sum of r S-unit values mod M is precomputed (the
// closure uses unbounded exponents, a superset of the truth, so a pair is
// discarded only when no solution can exist).  U_n mod M comes from a
// state-vector cycle of the recurrence, so lookups cost O(1).
class ResiduePrefilter {
  public:
    // Moduli must be >= 2, <= 2^32 and pairwise coprime.  A modulus whose
    // reachable-residue computation would exceed the internal work budget is
    // kept but marked inert (it admits everything).
    ResiduePrefilter(const ProblemInstance& inst, unsigned long nmax,
                     const std::vector<mpz_class>& moduli);

    // False only when a*U_n + b*U_m is provably not a sum of r S-units.
    // Requires n, m <= nmax.
    bool admits(unsigned long n, unsigned long m) const;

    int active_count() const;
    size_t size() const { return mods_.size(); }

  private:
    struct ModData {
        unsigned long mod = 0;
        unsigned long am = 0, bm = 0;          // a mod M, b mod M
        std::vector<unsigned long> useq;       // U_j mod M, folded by the cycle
        unsigned long cycle_start = 0;
        unsigned long cycle_len = 0;           // 0: useq is a direct table
        std::vector<bool> reachable;           // r-fold S-unit sumset mod M
        bool active = false;
    };
    unsigned long fold(const ModData& md, unsigned long n) const;
    std::vector<ModData> mods_;
};

// Deterministic counters describing one search run.
struct SearchStats {
    unsigned long long pairs_total = 0;
    unsigned long long pairs_pruned_residue = 0;
    unsigned long long pairs_pruned_size = 0;
    unsigned long long tuples_checked = 0;
    bool naive_fallback = false;
};

struct SearchOptions {
    unsigned long nmax = 0;
    mpz_class zmax = 1;
    bool filter_dominant = false;           // keep only satisfies_dominance records
    const ResiduePrefilter* prefilter = nullptr;
    size_t index_cap = size_t{1} << 26;     // meet-in-the-middle memory budget
    SearchStats* stats = nullptr;
};

// All solutions with 0 <= m <= n <= nmax and every |z_i| <= zmax, in
// canonical deduplicated form, ordered by (n, m, summand tuple).  The main
// engine indexes every ceil(r/2)-multiset of S-unit values by sum once, then
// resolves each (n, m) by meet-in-the-middle over floor(r/2)-multisets; when
// the index would blow the cap it falls back to the naive engine.
std::vector<SolutionRecord> brute_solutions(const ProblemInstance& inst,
                                            const SearchOptions& opt);
std::vector<SolutionRecord> brute_solutions(const ProblemInstance& inst, unsigned long nmax,
                                            const mpz_class& zmax);

// Reference engine: r-1 nested nondecreasing summand loops plus an exact
// smoothness check on the remainder.  Same output contract.
std::vector<SolutionRecord> brute_solutions_naive(const ProblemInstance& inst,
                                                  const SearchOptions& opt);

// Exact recheck of a record against the instance: summand well-formedness
// over S, canonical ordering, the sum identity, and the two flags.  False on
// any mismatch.
bool verify_solution(const ProblemInstance& inst, const SolutionRecord& rec);

}  // namespace sunitrec
