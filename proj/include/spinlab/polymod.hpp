#pragma once

#include <utility>
#include <vector>

#include "spinlab/arith.hpp"

namespace spinlab {

// Dense polynomials over F_p, ascending coefficients, no trailing zeros.
using Poly = std::vector<u64>;

namespace fp {

void trim(Poly& a);
inline int deg(const Poly& a) { return (int)a.size() - 1; }
Poly add(const Poly& a, const Poly& b, u64 p);
Poly sub(const Poly& a, const Poly& b, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
Poly scale(const Poly& a, u64 c, u64 p);
// Quotient and remainder of a by b (b nonzero).
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 p);
Poly rem(const Poly& a, const Poly& b, u64 p);
Poly monic(const Poly& a, u64 p);
Poly gcd(Poly a, Poly b, u64 p);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p);
Poly powmod(const Poly& a, const Int& e, const Poly& m, u64 p);
Poly derivative(const Poly& a, u64 p);
u64 eval(const Poly& a, u64 x, u64 p);

// Squarefree decomposition: pairs (g, e) with a = lc * prod g^e, g squarefree monic.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& a, u64 p);
// Complete factorization into monic irreducibles with multiplicity, sorted by
// (degree, coefficients from the top). Deterministic: the splitting randomness
// is seeded from p.
std::vector<std::pair<Poly, int>> factor(const Poly& a, u64 p);
// Number of distinct roots in F_p, via gcd(x^p - x, a).
int count_roots(const Poly& a, u64 p);
// Sorted distinct roots of a squarefree polynomial.
std::vector<u64> roots(const Poly& a, u64 p);

}  // namespace fp
}  // namespace spinlab
