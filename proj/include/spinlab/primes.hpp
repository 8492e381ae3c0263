#pragma once

#include <functional>
#include <vector>

#include "spinlab/algebra.hpp"
#include "spinlab/lattice.hpp"

namespace spinlab {

struct PrimeIdealData {
    u64 p = 0;
    int f = 1;
    int e = 1;
    Poly g;        // monic irreducible factor of the defining polynomial mod p
    u64 root = 0;  // f == 1: g = x - root
    IntMatrix hnf;
    int orbit_index = 0;

    // omega_i reduced into F_p[x]/(g); for f == 1 only basis_res1 is filled.
    std::vector<Poly> basis_res;
    std::vector<u64> basis_res1;
    // tau * P is contained in p O_K and v_P(tau) = e - 1.
    FieldElement tau;

    Int norm() const;
    bool operator==(const PrimeIdealData& o) const { return p == o.p && g == o.g; }
};

struct ResidueFieldElement {
    u64 p = 0;
    int f = 1;
    Poly g;
    Poly value;  // degree < f

    bool is_zero() const { return value.empty(); }
    ResidueFieldElement operator*(const ResidueFieldElement& o) const;
    ResidueFieldElement operator+(const ResidueFieldElement& o) const;
    ResidueFieldElement pow(const Int& e) const;
    bool operator==(const ResidueFieldElement& o) const { return p == o.p && value == o.value; }
};

// Odd, unramified p. Errors: EvenPrime, RamifiedPrime.
std::vector<PrimeIdealData> factor_rational_prime(u64 p, const Field& K);
// Any odd p not dividing the polynomial index, ramified primes included.
std::vector<PrimeIdealData> prime_decomposition(u64 p, const Field& K);

ResidueFieldElement residue_map(const FieldElement& a, const PrimeIdealData& P);
// f == 1 fast path.
u64 residue_f1(const FieldElement& a, const PrimeIdealData& P);
bool in_prime(const FieldElement& a, const PrimeIdealData& P);
int valuation(FieldElement a, const PrimeIdealData& P, const Field& K);

// Index j with sigma_s(orbit[i]) = orbit[j].
int conjugate_index(const std::vector<PrimeIdealData>& orbit, int s, int i, const Field& K);

bool splits_completely(u64 p, const Field& K);

struct SplitPrime {
    u64 p = 0;
    // orbit[s] = sigma_s(orbit[0]) with orbit[0] the prime of the smallest root.
    std::vector<PrimeIdealData> orbit;
};

// All odd unramified completely split p <= X in increasing order.
class SplitPrimeStream {
public:
    SplitPrimeStream(FieldPtr K, u64 X, u64 lo = 3);
    bool next(SplitPrime& out);

private:
    FieldPtr K_;
    std::vector<u64> primes_;
    size_t pos_ = 0;
};

std::vector<SplitPrime> split_primes(const Field& K, u64 lo, u64 hi);
SplitPrime split_prime_data(u64 p, const Field& K);

}  // namespace spinlab
