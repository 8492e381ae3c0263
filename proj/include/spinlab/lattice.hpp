#pragma once

#include <functional>
#include <vector>

#include "spinlab/arith.hpp"

namespace spinlab {

using IntVec = std::vector<Int>;
using IntMatrix = std::vector<IntVec>;

// Hermite normal form of the full-rank lattice spanned by the rows, n columns.
// Row basis, lower triangular: H[i][j] = 0 for j > i, H[i][i] > 0 and
// 0 <= H[i][j] < H[j][j] for j < i. If D != 0 the lattice must contain D*Z^n
// and entries are reduced modulo D along the way.
IntMatrix hnf(const IntMatrix& rows, int n, const Int& D = 0);
bool hnf_contains(const IntMatrix& H, const IntVec& v);
Int hnf_det(const IntMatrix& H);
// HNF of a lattice intersected with or summed with another, both full rank.
IntMatrix hnf_sum(const IntMatrix& A, const IntMatrix& B);

// Row echelon form with pivots scanned from the left; zero rows dropped,
// pivots positive, entries above each pivot reduced to [0, pivot).
IntMatrix echelon(IntMatrix rows);

// Basis of L1 ∩ L2 for L1 spanned by the rows of A (independent, any rank) and
// L2 a full-rank lattice in HNF.
IntMatrix intersect_with_full(const IntMatrix& A, const IntMatrix& H);

using RealMatrix = std::vector<std::vector<long double>>;

// Quadratic form value x^T G x for an integer coefficient vector.
long double qform(const RealMatrix& G, const IntVec& x);

// LLL reduction of the integer rows under the Gram matrix G (delta = 0.99).
IntMatrix lll(IntMatrix basis, const RealMatrix& G);

// Fincke-Pohst: visit every nonzero integer combination x of the rows of B
// with value(x B) <= R, up to sign (first nonzero coefficient positive).
// The callback receives the lattice vector and its form value and returns
// false to stop. Returns false if stopped early.
bool enumerate_short(const IntMatrix& B, const RealMatrix& G, long double R,
                     const std::function<bool(const IntVec&, long double)>& visit);

}  // namespace spinlab
