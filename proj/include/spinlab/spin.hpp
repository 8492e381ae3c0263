#pragma once

#include <map>
#include <string>
#include <vector>

#include "spinlab/generators.hpp"
#include "spinlab/symbols.hpp"

namespace spinlab {

// Class function on residues mod F. A table is keyed by the coordinates of
// the argument reduced into [0, modulus) and its modulus must divide F.
// Arguments not coprime to the modulus get 0, unlisted residues get
// default_value.
struct Psi {
    bool trivial = true;
    Int modulus = 1;
    int default_value = 0;
    std::map<std::vector<Int>, int> entries;

    int operator()(const FieldElement& a, const Field& K) const;
    std::vector<Int> reduce(const FieldElement& a) const;

    static Psi make_trivial() { return Psi{}; }
    // {"modulus": "M", "default": d, "entries": [{"residue": ["r0", ...], "value": v}, ...]}
    static Psi from_json(const std::string& text, int n);
    std::string to_json() const;
};

struct SpinConfig {
    std::vector<int> S;
    Psi psi;
    BigFConstant F;
};

// sigma in S implies sigma^{-1} not in S; S non-empty and duplicate-free.
bool check_S_valid(const std::vector<int>& S, const Field& K);
// Validates S and psi (unit-square invariance by sampling). Throws ConfigError.
SpinConfig make_spin_config(const Field& K, std::vector<int> S, Psi psi = Psi::make_trivial(), u64 seed = 1);
// First automorphism index of order n (cyclic fields) or of the given order.
int automorphism_of_order(const Field& K, int order);

// (a / sigma_i(a)). a odd; totally positive when K is totally real.
// Errors: EvenArgument, ConfigError (not totally positive).
int spin_sigma(int i, const FieldElement& a, const Field& K);
int joint_spin_element(const FieldElement& a, const SpinConfig& cfg, const Field& K);

// Sum over t in T_K and v in V_K/V_K^2 of r_+(tva) psi(tva) prod_S spin(sigma, tva).
long s_of_generator(const FieldElement& a, const SpinConfig& cfg, const Field& K);
// 0 for even ideals, otherwise s_of_generator of a short generator.
long s_of_ideal(const IdealLattice& L, const SpinConfig& cfg, const Field& K);

// Symbols of the torsion elements and of eps_j at one prime ideal.
struct UnitSymbols {
    std::vector<int> torsion;
    std::vector<int> units;
};
UnitSymbols unit_symbols_at(const PrimeIdealData& Q, const Field& K);

// The double sum for a when, for each sigma in S (k-th entry), the symbol of
// a on sigma((a)) is chi_a[k] and the unit symbols on that ideal are
// unit_chi[k]. a_mask is the sign mask of a.
long s_from_symbols(const FieldElement& a, unsigned a_mask, const std::vector<int>& chi_a,
                    const std::vector<UnitSymbols>& unit_chi, const SpinConfig& cfg, const Field& K);

struct SpinRecord {
    u64 p = 0;
    int orbit_index = 0;
    std::string ideal_key;
    FieldElement generator;
    std::vector<int> spins;  // spin(sigma, generator) for sigma in S
    long s = 0;
    int b16 = -1;  // filled by experiments, -1 when unset
};

// One record per prime ideal above each completely split p <= X, ordered by
// p then orbit index. The orbit generator is the domain-reduced (totally
// positive for real K) short generator of the first prime, and record i
// carries its conjugate sigma_i(generator).
std::vector<SpinRecord> spin_stream(u64 X, const SpinConfig& cfg, const FieldPtr& K, int threads = 1, u64 lo = 3);
std::string spin_csv_header(const SpinConfig& cfg);
std::string spin_csv_row(const SpinRecord& r);

// phi(a, b) = prod_S (a / sigma(b) sigma^{-1}(b)).
int phi(const FieldElement& a, const FieldElement& b, const std::vector<int>& S, const Field& K);
// phi(b) = prod_S sigma(b) sigma^{-1}(b).
FieldElement phi_element(const FieldElement& b, const std::vector<int>& S, const Field& K);

// spin(sigma, ab/g) times the right side of the factorization formula
// without delta, i.e. the value of delta(sigma; a, b). A and B generate the
// class representatives (both 1 in the degenerate case) and g = A B.
// Errors: ZeroSymbolEncountered, ConfigError (divisibility).
int factorization_identity_probe(const FieldElement& a, const FieldElement& b, const FieldElement& g, int sigma,
                                 const Field& K, const FieldElement& A, const FieldElement& B);

// Sum over xi mod N(b) O_K of (xi / phi(b)), computed prime by prime. Each
// local factor is summed exhaustively over O_K / P.
Int phi_character_sum(const FieldElement& b, const std::vector<int>& S, const Field& K);
// Same sum by brute force over all N(b)^n residues; small N only.
Int phi_character_sum_bruteforce(const FieldElement& b, const std::vector<int>& S, const Field& K);
// Representatives of O_K / P.
std::vector<FieldElement> residue_representatives(const PrimeIdealData& P, const Field& K);

struct CellProbeOptions {
    int cell_pairs = 40;
    int samples_per_cell = 20;
    u64 seed = 1;
};

// Random odd class mod 8.
Modulus8Class random_odd_class(const Field& K, Rng& rng);
// Element of the class c, shifted by 8 * (small) and, for totally real K,
// kept totally positive by adding a large multiple of 8.
FieldElement sample_in_cell(const Modulus8Class& c, const Field& K, Rng& rng);

// delta(sigma; a, b) per (a mod 8, b mod 8) cell from the factorization
// probe. With use_reps the preset class representatives play A and B,
// otherwise A = B = g = 1. Throws InconsistentCell.
ReciprocityTable derive_delta_table(int sigma, const Field& K, bool use_reps, const CellProbeOptions& opt);
// phi(a, b) phi(b, a) per cell (symmetry sign). Throws InconsistentCell.
ReciprocityTable derive_phi_symmetry_table(const std::vector<int>& S, const Field& K, const CellProbeOptions& opt);

struct BimultiplicativityReport {
    long triples = 0;
    long failures = 0;
};
// phi(a, b1 b2) = phi(a, b1) phi(a, b2) and phi(a1 a2, b) = phi(a1, b) phi(a2, b).
BimultiplicativityReport check_phi_bimultiplicative(const std::vector<int>& S, const Field& K, int triples, u64 seed);

struct VanishingReport {
    long ideals = 0;         // odd principal ideals examined
    long not_squarefull = 0;
    long nonzero = 0;        // not squarefull but the sum is non-zero
    long divisibility_failures = 0;  // phi(b) does not divide N(b)
    long brute_checked = 0;
    long brute_mismatch = 0;
};
// Character sums of phi over every odd principal ideal of norm <= X;
// brute force cross-check when N(b)^n <= brute_cells.
VanishingReport check_phi_vanishing(const std::vector<int>& S, const Field& K, u64 X, long brute_cells = 2000000);

}  // namespace spinlab
