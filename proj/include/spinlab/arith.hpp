#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace spinlab {

using Int = mpz_class;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

static_assert(sizeof(unsigned long) == 8, "LP64 platform required");

inline Int to_int(u64 v) { return Int((unsigned long)v); }
inline Int to_int(i64 v) { return Int((long)v); }

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }
u64 powmod(u64 b, u64 e, u64 m);
u64 powmod(u64 b, const Int& e, u64 m);
// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);

// Residue of a in [0, m).
u64 mod_u64(const Int& a, u64 m);
inline u64 mod_i64(i64 a, u64 m) {
    i64 r = a % (i64)m;
    return (u64)(r < 0 ? r + (i64)m : r);
}

Int parse_int(const std::string& s);
bool fits_u64(const Int& a);
u64 to_u64(const Int& a);

bool is_prime_u64(u64 n);
bool is_prime(const Int& n);

// Primes up to limit (inclusive).
std::vector<u64> primes_up_to(u64 limit);
// Smallest prime factor table for 0..limit.
std::vector<std::uint32_t> spf_table(std::uint32_t limit);

struct FactorBudget {
    u64 trial_divisions = 1000000;
    int rho_rounds = 30;
};

// Factorization of |n| (n != 0) into primes with exponents, ascending.
std::vector<std::pair<Int, int>> factor_int(const Int& n, const FactorBudget& budget = {});
std::vector<std::pair<u64, int>> factor_u64(u64 n);

bool is_squarefree(const Int& n);
bool is_squarefull(const Int& n);

// Legendre symbol (a/p) for an odd prime p.
int legendre(const Int& a, u64 p);
int legendre_u64(u64 a, u64 p);
// Jacobi symbol (a/m) for odd positive m, binary reciprocity iteration.
int jacobi(const Int& a, const Int& m);
int jacobi_i64(i64 a, i64 m);

// mt19937_64 with a portable bounded draw (std distributions are
// implementation-defined, so seeded outputs would differ across libraries).
class Rng {
public:
    explicit Rng(u64 seed) : eng_(seed) {}
    u64 next() { return eng_(); }
    // Uniform in [0, n).
    u64 below(u64 n);
    // Uniform in [lo, hi].
    i64 range(i64 lo, i64 hi) { return lo + (i64)below((u64)(hi - lo + 1)); }

private:
    std::mt19937_64 eng_;
};

}  // namespace spinlab
