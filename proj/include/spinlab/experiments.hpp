#pragma once

#include <map>
#include <string>
#include <vector>

#include "spinlab/classgroup.hpp"
#include "spinlab/sieve.hpp"

namespace spinlab {

struct DensityReport {
    std::vector<int> S;
    long records = 0;
    long signed_records = 0;  // records with no vanishing symbol
    // Pattern string over S, '+' / '-' per automorphism ('0' for a vanishing symbol).
    std::map<std::string, long> counts;
    double chi_square = 0;  // against 1/2^t on the sign patterns
    int dof = 0;
};

// Sign-pattern frequencies of spin_stream(X). When records is non-null the
// stream is handed back.
DensityReport run_density(u64 X, const SpinConfig& cfg, const FieldPtr& K, int threads = 1,
                          std::vector<SpinRecord>* records = nullptr);
std::string density_csv(const DensityReport& r);
// Frequency of a pattern among records with no vanishing symbol.
double pattern_frequency(const DensityReport& r, const std::string& pattern);

// Primes p <= X splitting completely in E with 16 | h(-4p) as 0/1.
struct ESplitPrime {
    u64 p = 0;
    u64 h = 0;
    int b16 = 0;
};
std::vector<ESplitPrime> e_split_b16(u64 X, const Field& E, int threads = 1);

// Index of the order-4 automorphism used for (r(pi)/pi); choice 0 is the
// lower of the two indices, 1 the higher. Throws ConfigError when the field
// has no suitable element.
int order4_automorphism(const Field& E, int choice = 0);

struct Govern16Options {
    u64 X = 100000;
    int r_choice = 0;
    std::vector<Int> moduli{8, 16};
    int min_samples = 2;  // cells with fewer samples are reported as insufficient
    int threads = 1;
};

struct Govern16Row {
    u64 p = 0;
    std::string pi;    // generator coordinates
    std::string cell;  // pi mod 8
    int s = 0;         // (r(pi) / pi)
    int b16 = 0;
};

struct CellConstancy {
    Int modulus;
    long cells = 0;
    long insufficient = 0;  // fewer than min_samples
    long constant = 0;      // sufficient and b16 s constant
    long inconsistent = 0;  // sufficient and both values seen
};

struct Govern16Report {
    int r_index = 0;
    long split = 0;
    long b16_count = 0;
    double density = 0;
    bool eight_rank_ok = true;  // every scanned p has 8 | h(-4p)
    std::vector<Govern16Row> rows;
    std::vector<CellConstancy> probes;
};

Govern16Report run_govern16(const Govern16Options& opt, const Field& E);
std::string govern16_csv_header();
std::string govern16_csv_row(const Govern16Row& r);

struct WitnessPair {
    u64 p = 0, q = 0;
    int b16p = 0, b16q = 0;
};
// Pairs p < q, p = q mod M, both E-split, with different 16-rank: every pair
// of neighbours within a residue class whose ranks differ, ordered by q.
// Throws InsufficientWitnesses when fewer than `wanted` exist and
// ConfigError when M < 8.
std::vector<WitnessPair> run_nogoverning_witness(u64 M, u64 X, size_t wanted, const Field& E, int threads = 1);

}  // namespace spinlab
