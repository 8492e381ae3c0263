#pragma once

#include <map>
#include <vector>

#include "spinlab/algebra.hpp"
#include "spinlab/lattice.hpp"
#include "spinlab/primes.hpp"

namespace spinlab {

struct IdealLattice {
    IntMatrix hnf;
    Int norm;
    std::string key() const;
    bool operator==(const IdealLattice& o) const { return hnf == o.hnf; }
};

IdealLattice ideal_from_rows(const IntMatrix& rows, int n, const Int& multiple);
IdealLattice principal_ideal(const FieldElement& a, const Field& K);
IdealLattice prime_ideal_lattice(const PrimeIdealData& P);
IdealLattice ideal_mul(const IdealLattice& A, const IdealLattice& B, const Field& K);
bool ideal_contains(const IdealLattice& L, const FieldElement& a);

// a / b when the quotient is integral.
bool exact_quotient(const FieldElement& a, const FieldElement& b, const Field& K, FieldElement& out);
FieldElement unit_inverse(int j, const Field& K);

// Generator of a principal ideal via LLL under T2 and Fincke-Pohst with a
// radius doubled `rounds` times. Throws GeneratorNotFound.
FieldElement short_generator(const IdealLattice& L, const Field& K, int rounds = 6);

// u * a totally positive for a unit u from the sign table (identity preferred).
FieldElement make_totally_positive(const FieldElement& a, const Field& K);

struct DomainReducedElement {
    FieldElement element;
    std::vector<double> log_vector;
};

// Multiplies by units so the log vector lies in [0,1)^r in coordinates of the
// lattice spanned by m * log(eps_j): m = 2 for totally real fields (so total
// positivity is kept), m = 1 otherwise.
DomainReducedElement reduce_to_domain(const FieldElement& a, const Field& K);
DomainReducedElement reduce_with_multiplier(const FieldElement& a, const Field& K, int m);

// Every reduced generator (m = 1) of norm <= X satisfies T2 <= radius and
// |a_i| <= C X^{1/n}.
long double enumeration_radius(const Field& K, long double X);
long double box_constant(const Field& K);

struct PrincipalIdeal {
    IdealLattice ideal;
    FieldElement generator;
};

// Principal odd ideals 1 < N <= X, each once, sorted by (norm, key). The
// generator is the reduce_to_domain representative.
std::vector<PrincipalIdeal> enumerate_principal_odd_ideals(u64 X, const Field& K, u64 ceiling = 200000);

// Ideal-side oracle: all odd ideals of norm <= X as products of prime ideal
// lattices, each tested for principality with short_generator.
std::vector<PrincipalIdeal> principal_ideals_bruteforce(u64 X, const Field& K);

}  // namespace spinlab
