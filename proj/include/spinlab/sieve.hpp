#pragma once

#include <string>
#include <vector>

#include "spinlab/spin.hpp"

namespace spinlab {

struct SqfFactorization {
    Int n = 1;
    Int q = 1;  // squarefree part coprime to mF
    Int g = 1;  // squarefull part coprime to mF
    Int r = 1;  // part supported on primes dividing mF
};

SqfFactorization sqf(const Int& n, const Int& mF, const FactorBudget& budget = {});

// Prime ideals of norm <= X not dividing `exclude`, with generators
// (totally positive for real K), sorted by norm. Requires h = 1.
struct PrimeTable {
    std::vector<PrimeIdealData> primes;
    std::vector<FieldElement> generators;
    std::vector<u64> norms;
    std::vector<std::vector<int>> conj;  // conj[s][i] = index of sigma_s(P_i), -1 if not in table
    std::vector<UnitSymbols> unit_syms;
    int find(const PrimeIdealData& P) const;
};
PrimeTable build_prime_table(const Field& K, u64 X, const Int& exclude, int threads = 1);

struct Checkpoint {
    u64 X = 0;
    long value = 0;  // A(X)
    long count = 0;  // ideals summed
};

enum class Type1Method { PrimeProducts, Enumeration };

struct Type1Options {
    std::vector<u64> checkpoints;
    FieldElement m;  // generator of the modulus ideal; empty means O_K
    Type1Method method = Type1Method::PrimeProducts;
    int threads = 1;
};

// Sum of s_a over principal ideals a coprime to F with m | a and N(a) <= X,
// for every checkpoint X. Errors: ConfigError (m not coprime to F or to its
// S-conjugates, empty S), CeilingExceeded (enumeration method).
std::vector<Checkpoint> type1_sum(const Type1Options& opt, const SpinConfig& cfg, const Field& K);

// Odd ideals of norm <= x with generators (h = 1), sorted by (norm, key).
std::vector<PrincipalIdeal> odd_ideals(u64 x, const Field& K);
// Seeded sequence of +-1 values.
std::vector<int> unimodular_sequence(size_t count, u64 seed);

struct Type2Result {
    long value = 0;
    long pairs = 0;
    long max_abs_s = 0;
};

// B(x, y) = sum v_a w_b s_{ab} with v, w indexed like odd_ideals(x), odd_ideals(y).
// Throws CeilingExceeded when x y > ceiling.
Type2Result type2_sum(u64 x, u64 y, const std::vector<int>& v, const std::vector<int>& w, const SpinConfig& cfg,
                      const Field& K, int threads = 1, u64 ceiling = 10000000);

// a = first coordinate, beta = the rest.
std::pair<Int, FieldElement> decompose_a_beta(const FieldElement& alpha, const Field& K);
// spin(sigma, alpha) against ((beta - sigma beta) / (a + sigma beta)); both
// symbols computed independently. Returns true on agreement.
bool check_spin_decomposition(const FieldElement& alpha, int sigma, const Field& K);

struct SieveLatticeProbe {
    int sigma = 0;
    int r = 0;
    IntMatrix eta;         // basis of the image of beta -> beta - sigma(beta), rows in omega coordinates
    IdealLattice g;        // the ideal
    IntMatrix lambda;      // basis of Lambda_g in eta coordinates
};

SieveLatticeProbe make_lattice_probe(int sigma, const IdealLattice& g, const Field& K);

struct LatticeCount {
    long count = 0;
    double bound = 0;  // x^{r/n} / g^{r/n}
    double ratio = 0;
    double lambda1 = 0;      // first minimum of Lambda_g (euclidean, eta coordinates)
    double lambda1_ratio = 0;  // lambda1 / g^{1/n}
};

// Exact |Lambda_g cap T_x| with T_x = {|a_i| <= x^{1/n}}. Throws CeilingExceeded
// beyond max_points box points.
LatticeCount lattice_count_probe(const SieveLatticeProbe& probe, double x, const Field& K, long max_points = 1000000);

struct GcdStatistics {
    long box = 0;
    long count = 0;          // gcd(f1, f2) > Z
    long zeros = 0;          // f1 = f2 = 0
    bool proportional = false;  // f1, f2 proportional on every sampled pair
};

// Over beta = sum_{i >= 1} a_i omega_i with |a_i| <= x^{1/n}.
GcdStatistics gcd_statistics(double x, const Int& Z, int sigma, int tau, const Field& K, long max_points = 1000000);
// gcd values for the same box, for sweeping Z without recomputation.
std::vector<Int> gcd_values(double x, int sigma, int tau, const Field& K, long max_points = 1000000);

struct CharSumScanConfig {
    u64 q = 3;
    int n = 3;
    u64 k = 1;
    u64 l = 0;
};

struct CharSumReport {
    u64 q = 0, N = 0, k = 1, l = 0;
    long max = 0;
    double exponent = 0;
};

// Max over M of |sum_{M < m <= M + N, m = l mod k} (m/q)| with N = floor(q^{1/n}).
// Throws BadModulus.
CharSumReport charsum_scan(const CharSumScanConfig& cfg);
// Same maximum by summing every window directly.
long charsum_naive_max(const CharSumScanConfig& cfg);
u64 charsum_window(u64 q, int n);

}  // namespace spinlab
