#pragma once

#include <vector>

#include "sunitrec/intpoly.hpp"

namespace sunitrec {

// One distinct root of a polynomial: a disk certified to contain exactly one
// root, together with that root's multiplicity in the input polynomial.
struct RootCluster {
    Ball disk;
    int multiplicity = 1;
};

// Certified isolation of all distinct complex roots of p (degree >= 1).
//
// Returns one cluster per distinct root; the disks are pairwise disjoint,
// each has radius <= target_radius, and each provably contains exactly one
// root.  Clusters are ordered by descending midpoint modulus, ties by
// ascending principal argument (an exact, deterministic order).
//
// Internally: squarefree (Yun) split, Aberth–Ehrlich iteration on each
// squarefree factor at doubling working precision, and an a posteriori
// inclusion radius d*|g(z)/g'(z)| per approximation, until the disks certify.
// Throws PrecisionExhausted if the cap is reached first.
std::vector<RootCluster> certified_roots(const IntPoly& p, const Dyadic& target_radius,
                                         Prec prec_cap = kDefaultPrecCap);

}  // namespace sunitrec
