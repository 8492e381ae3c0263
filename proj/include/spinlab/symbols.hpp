#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spinlab/algebra.hpp"
#include "spinlab/primes.hpp"

namespace spinlab {

// Cached prime_decomposition, shared across threads.
std::shared_ptr<const std::vector<PrimeIdealData>> cached_primes_above(u64 p, const Field& K);

struct IdealFactor {
    PrimeIdealData prime;
    int exponent = 0;
};

// Prime ideal factorization of (b) for odd b, via |N(b)|.
// Errors: EvenArgument, FactoringBudgetExceeded.
std::vector<IdealFactor> factor_principal(const FieldElement& b, const Field& K, const FactorBudget& budget = {});

// a^{(N P - 1)/2} in the residue field, as -1, 0 or 1.
int residue_symbol_prime(const FieldElement& a, const PrimeIdealData& P);
// (a / (b)) = prod over P^e || (b) of (a/P)^e. Errors: EvenArgument,
// FactoringBudgetExceeded.
int residue_symbol(const FieldElement& a, const FieldElement& b, const Field& K, const FactorBudget& budget = {});
int residue_symbol_factored(const FieldElement& a, const std::vector<IdealFactor>& b);
// Product over real places of (a, b)_v; always +1 when K has no real place.
int hilbert_infinity(const FieldElement& a, const FieldElement& b, const Field& K);

using CellKey = std::pair<Modulus8Class, Modulus8Class>;

struct CellEntry {
    int value = 0;
    long samples = 0;
};

// Cell table keyed by (a mod 8, b mod 8). Used for mu_2 and for the other
// sign tables that only depend on residues mod 8.
class ReciprocityTable {
public:
    // Adds one observation. Throws InconsistentCell on disagreement.
    void record(const FieldElement& a, const FieldElement& b, int value);
    void record(const CellKey& key, int value);
    // Throws UnpopulatedCell if the cell has fewer than min_samples observations.
    int lookup(const FieldElement& a, const FieldElement& b) const;
    bool populated(const CellKey& key) const;
    const std::map<CellKey, CellEntry>& cells() const { return cells_; }
    std::vector<CellKey> populated_cells() const;
    long min_samples = 20;

    std::string to_json() const;
    static ReciprocityTable from_json(const std::string& text);

private:
    std::map<CellKey, CellEntry> cells_;
};

struct Mu2Options {
    int cell_pairs = 100;         // random (a mod 8, b mod 8) pairs to populate
    int samples_per_cell = 20;    // must be >= 20
    u64 seed = 1;
    bool rational_cells = false;  // draw a, b from Z instead of O_K
};

// m(a, b) = (a/b)(b/a) mu_inf(a, b) for random coprime odd pairs, recorded per
// mod-8 cell. Throws InconsistentCell.
ReciprocityTable derive_mu2_table(const Field& K, const Mu2Options& opt);
// Random odd element congruent to base mod 8 (coordinates in [-12, 11]).
FieldElement random_in_class(const Modulus8Class& base, const Field& K, Rng& rng);
// Random element with N(a) odd.
FieldElement random_odd_element(const Field& K, Rng& rng, long bound);

// (a/b) == mu_2 mu_inf (b/a). Throws UnpopulatedCell, ZeroSymbolEncountered.
bool check_reciprocity(const FieldElement& a, const FieldElement& b, const ReciprocityTable& table, const Field& K);

}  // namespace spinlab
