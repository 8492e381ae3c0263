#include "spinlab/arith.hpp"

#include <algorithm>
#include <map>

#include "spinlab/error.hpp"

namespace spinlab {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::StructuralFailure: return "StructuralFailure";
        case ErrorKind::UnitConditionFailed: return "UnitConditionFailed";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::FNotSquarefree: return "FNotSquarefree";
        case ErrorKind::RamifiedPrime: return "RamifiedPrime";
        case ErrorKind::EvenPrime: return "EvenPrime";
        case ErrorKind::GeneratorNotFound: return "GeneratorNotFound";
        case ErrorKind::NotAchievable: return "NotAchievable";
        case ErrorKind::CeilingExceeded: return "CeilingExceeded";
        case ErrorKind::EvenModulus: return "EvenModulus";
        case ErrorKind::FactoringBudgetExceeded: return "FactoringBudgetExceeded";
        case ErrorKind::EvenArgument: return "EvenArgument";
        case ErrorKind::InconsistentCell: return "InconsistentCell";
        case ErrorKind::UnpopulatedCell: return "UnpopulatedCell";
        case ErrorKind::NotFundamental: return "NotFundamental";
        case ErrorKind::DiscriminantMismatch: return "DiscriminantMismatch";
        case ErrorKind::WrongResidueClass: return "WrongResidueClass";
        case ErrorKind::BadModulus: return "BadModulus";
        case ErrorKind::ZeroSymbolEncountered: return "ZeroSymbolEncountered";
        case ErrorKind::InsufficientWitnesses: return "InsufficientWitnesses";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

u64 powmod(u64 b, const Int& e, u64 m) {
    if (fits_u64(e)) return powmod(b, to_u64(e), m);
    u64 r = 1 % m;
    b %= m;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, m);
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    i128 t = 0, nt = 1;
    i128 r = m, nr = a % m;
    while (nr != 0) {
        i128 q = r / nr;
        i128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::invalid_argument("invmod: not invertible");
    if (t < 0) t += m;
    return (u64)t;
}

u64 mod_u64(const Int& a, u64 m) { return mpz_fdiv_ui(a.get_mpz_t(), m); }

Int parse_int(const std::string& s) {
    Int r;
    if (r.set_str(s, 10) != 0) throw Error(ErrorKind::ConfigError, "bad integer '" + s + "'");
    return r;
}

bool fits_u64(const Int& a) {
    return sgn(a) >= 0 && mpz_sizeinbase(a.get_mpz_t(), 2) <= 64;
}

u64 to_u64(const Int& a) {
    if (!fits_u64(a)) throw std::overflow_error("to_u64: out of range");
    return (u64)a.get_ui();
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    static const u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

bool is_prime(const Int& n) {
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
    }
    return out;
}

std::vector<std::uint32_t> spf_table(std::uint32_t limit) {
    std::vector<std::uint32_t> spf(limit + 1, 0);
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf[i]) continue;
        for (u64 j = i; j <= limit; j += i)
            if (!spf[j]) spf[j] = i;
    }
    return spf;
}

namespace {

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Brent's cycle finding; returns a nontrivial factor or 0.
u64 rho_u64(u64 n, u64 c, u64 max_iter) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    const u64 m = 128;
    u64 iters = 0;
    auto f = [&](u64 v) { return (u64)(((u128)v * v + c) % n); };
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        u64 k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (u64 i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = gcd_u64(q, n);
            k += m;
        }
        r <<= 1;
        iters += r;
        if (iters > max_iter) return 0;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd_u64(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

Int rho_mpz(const Int& n, unsigned long c, u64 max_iter) {
    Int x = 2, y = 2, g = 1, q = 1, ys = 2;
    u64 r = 1, iters = 0;
    const u64 m = 128;
    auto f = [&](Int& v) {
        v = v * v + c;
        v %= n;
    };
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) f(y);
        u64 k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (u64 i = 0; i < std::min(m, r - k); ++i) {
                f(y);
                Int d = abs(x - y);
                q = (q * d) % n;
            }
            g = gcd(q, n);
            k += m;
        }
        r <<= 1;
        iters += r;
        if (iters > max_iter) return 0;
    }
    if (g == n) {
        do {
            f(ys);
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    return g == n ? Int(0) : g;
}

void split_rec(const Int& n, std::map<Int, int>& out, const FactorBudget& budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = 0;
    for (int round = 0; round < budget.rho_rounds && d == 0; ++round) {
        const u64 max_iter = 1u << 22;
        if (fits_u64(n)) {
            u64 f = rho_u64(to_u64(n), 1 + (u64)round, max_iter);
            if (f) d = to_int(f);
        } else {
            d = rho_mpz(n, 1 + (unsigned long)round, max_iter);
        }
    }
    if (d == 0) throw Error(ErrorKind::FactoringBudgetExceeded, "cannot split " + n.get_str());
    split_rec(d, out, budget);
    split_rec(n / d, out, budget);
}

}  // namespace

std::vector<std::pair<Int, int>> factor_int(const Int& n0, const FactorBudget& budget) {
    if (n0 == 0) throw std::invalid_argument("factor_int: zero");
    Int n = abs(n0);
    std::map<Int, int> out;
    if (fits_u64(n)) {
        for (auto& [p, e] : factor_u64(to_u64(n))) out[to_int(p)] += e;
    } else {
        u64 divs = 0;
        for (u64 p = 2; divs < budget.trial_divisions; p += (p == 2 ? 1 : 2), ++divs) {
            if (to_int(p * p) > n) break;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                out[to_int(p)] += 1;
                n /= (unsigned long)p;
            }
            if (p > 10000 && fits_u64(n)) break;
        }
        if (fits_u64(n)) {
            for (auto& [p, e] : factor_u64(to_u64(n))) out[to_int(p)] += e;
        } else {
            split_rec(n, out, budget);
        }
    }
    return {out.begin(), out.end()};
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
    std::map<u64, int> out;
    for (u64 p : {2ULL, 3ULL, 5ULL}) {
        while (n % p == 0) {
            out[p]++;
            n /= p;
        }
    }
    static const u64 wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    u64 p = 7;
    int wi = 0;
    while (p <= 50000 && p * p <= n) {
        while (n % p == 0) {
            out[p]++;
            n /= p;
        }
        p += wheel[wi];
        wi = (wi + 1) & 7;
    }
    std::vector<u64> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        u64 m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime_u64(m)) {
            out[m]++;
            continue;
        }
        u64 d = 0;
        for (u64 c = 1; d == 0; ++c) {
            d = rho_u64(m, c, 1ULL << 26);
            if (c > 60) throw Error(ErrorKind::FactoringBudgetExceeded, "cannot split " + std::to_string(m));
        }
        stack.push_back(d);
        stack.push_back(m / d);
    }
    return {out.begin(), out.end()};
}

bool is_squarefree(const Int& n) {
    for (auto& [p, e] : factor_int(n))
        if (e > 1) return false;
    return true;
}

bool is_squarefull(const Int& n) {
    for (auto& [p, e] : factor_int(n))
        if (e < 2) return false;
    return true;
}

int legendre_u64(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    return jacobi_i64((i64)a, (i64)p);
}

int legendre(const Int& a, u64 p) { return legendre_u64(mod_u64(a, p), p); }

int jacobi_i64(i64 a, i64 m) {
    if (m <= 0 || (m & 1) == 0) throw Error(ErrorKind::EvenModulus, "jacobi modulus must be odd positive");
    a %= m;
    if (a < 0) a += m;
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            i64 r = m & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, m);
        if ((a & 3) == 3 && (m & 3) == 3) t = -t;
        a %= m;
    }
    return m == 1 ? t : 0;
}

int jacobi(const Int& a, const Int& m) {
    if (sgn(m) <= 0 || mpz_even_p(m.get_mpz_t()))
        throw Error(ErrorKind::EvenModulus, "jacobi modulus must be odd positive");
    return mpz_jacobi(a.get_mpz_t(), m.get_mpz_t());
}

u64 Rng::below(u64 n) {
    if (n == 0) return 0;
    u64 lim = ~0ULL - (~0ULL % n);
    u64 x;
    do {
        x = next();
    } while (x >= lim);
    return x % n;
}

}  // namespace spinlab
