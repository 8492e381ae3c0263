#include "spinlab/sieve.hpp"

#include "spinlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spinlab {

namespace {

int symbol_at(const FieldElement& a, const PrimeIdealData& Q) {
    if (Q.f == 1) return legendre_u64(residue_f1(a, Q), Q.p);
    return residue_symbol_prime(a, Q);
}

FieldElement normalized_generator(const IdealLattice& L, const Field& K) {
    FieldElement g = short_generator(L, K);
    if (K.totally_real()) g = make_totally_positive(g, K);
    return reduce_to_domain(g, K).element;
}

}  // namespace

SqfFactorization sqf(const Int& n, const Int& mF, const FactorBudget& budget) {
    if (n < 1) throw Error(ErrorKind::ConfigError, "sqf needs n >= 1");
    SqfFactorization s;
    s.n = n;
    if (n == 1) return s;
    for (auto& [p, e] : factor_int(n, budget)) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), (unsigned long)e);
        if (mF != 0 && mF % p == 0)
            s.r *= pe;
        else if (e == 1)
            s.q *= p;
        else
            s.g *= pe;
    }
    return s;
}

int PrimeTable::find(const PrimeIdealData& P) const {
    for (size_t i = 0; i < primes.size(); ++i)
        if (primes[i] == P) return (int)i;
    return -1;
}

PrimeTable build_prime_table(const Field& K, u64 X, const Int& exclude, int threads) {
    if (K.spec().class_number != 1) throw Error(ErrorKind::ConfigError, "prime products need class number 1");
    int n = K.n();
    struct Local {
        std::vector<PrimeIdealData> primes;
        std::vector<FieldElement> gens;
        std::vector<std::vector<int>> conj;  // conj[i][s], local positions
    };
    std::vector<u64> ps;
    for (u64 p : primes_up_to(X))
        if (p != 2 && (exclude == 0 || !mpz_divisible_ui_p(exclude.get_mpz_t(), p))) ps.push_back(p);
    std::vector<Local> loc(ps.size());
    parallel_for(ps.size(), threads, [&](size_t idx) {
        u64 p = ps[idx];
        Local& L = loc[idx];
        if ((u128)p * p > X) {
            if (!splits_completely(p, K)) return;
            SplitPrime sp = split_prime_data(p, K);
            FieldElement pi = normalized_generator(prime_ideal_lattice(sp.orbit[0]), K);
            for (int i = 0; i < n; ++i) {
                L.primes.push_back(sp.orbit[i]);
                L.gens.push_back(K.apply(i, pi));
                std::vector<int> c(n);
                for (int s = 0; s < n; ++s) c[s] = K.compose(s, i);
                L.conj.push_back(c);
            }
            return;
        }
        for (auto& P : prime_decomposition(p, K))
            if (P.norm() <= to_int(X)) L.primes.push_back(P);
        size_t m = L.primes.size();
        L.gens.assign(m, FieldElement());
        for (size_t i = 0; i < m; ++i) {
            if (L.gens[i].size() != 0) continue;
            FieldElement pi = normalized_generator(prime_ideal_lattice(L.primes[i]), K);
            for (int s = 0; s < n; ++s) {
                FieldElement q = K.apply(s, pi);
                for (size_t j = 0; j < m; ++j)
                    if (L.gens[j].size() == 0 && in_prime(q, L.primes[j])) {
                        L.gens[j] = q;
                        break;
                    }
            }
        }
        L.conj.assign(m, std::vector<int>(n, -1));
        for (size_t i = 0; i < m; ++i)
            for (int s = 0; s < n; ++s) {
                FieldElement q = K.apply(s, L.gens[i]);
                for (size_t j = 0; j < m; ++j)
                    if (in_prime(q, L.primes[j])) {
                        L.conj[i][s] = (int)j;
                        break;
                    }
            }
    });
    struct Entry {
        u64 norm;
        size_t block, pos;
    };
    std::vector<Entry> all;
    for (size_t b = 0; b < loc.size(); ++b)
        for (size_t i = 0; i < loc[b].primes.size(); ++i) all.push_back({to_u64(loc[b].primes[i].norm()), b, i});
    std::stable_sort(all.begin(), all.end(), [](const Entry& x, const Entry& y) { return x.norm < y.norm; });
    std::vector<std::vector<int>> where(loc.size());
    for (size_t b = 0; b < loc.size(); ++b) where[b].assign(loc[b].primes.size(), -1);
    for (size_t k = 0; k < all.size(); ++k) where[all[k].block][all[k].pos] = (int)k;
    PrimeTable T;
    T.conj.assign(n, std::vector<int>(all.size(), -1));
    for (size_t k = 0; k < all.size(); ++k) {
        auto& L = loc[all[k].block];
        size_t i = all[k].pos;
        T.primes.push_back(L.primes[i]);
        T.generators.push_back(L.gens[i]);
        T.norms.push_back(all[k].norm);
        for (int s = 0; s < n; ++s) {
            int j = L.conj[i][s];
            T.conj[s][k] = j < 0 ? -1 : where[all[k].block][j];
        }
    }
    T.unit_syms.resize(T.primes.size());
    parallel_for(T.primes.size(), threads, [&](size_t k) { T.unit_syms[k] = unit_symbols_at(T.primes[k], K); });
    return T;
}

namespace {

struct Type1Accumulator {
    std::vector<long> value, count;
};

class PrimeProductSummer {
public:
    PrimeProductSummer(const PrimeTable& T, const SpinConfig& cfg, const Field& K, std::vector<std::pair<int, int>> base,
                       u64 base_norm, const std::vector<u64>& cps)
        : T_(T), cfg_(cfg), K_(K), base_(std::move(base)), base_norm_(base_norm), cps_(cps) {}

    // All ideals m * b whose smallest prime of b is T.primes[first].
    void run_branch(size_t first, Type1Accumulator& acc) {
        u64 norm = base_norm_ * T_.norms[first];
        if (norm > cps_.back()) return;
        int e = 0;
        for (u128 nn = (u128)base_norm_ * T_.norms[first]; nn <= cps_.back(); nn *= T_.norms[first]) {
            ++e;
            std::vector<std::pair<int, int>> stack{{(int)first, e}};
            visit(stack, (u64)nn, acc);
            dfs(first + 1, stack, (u64)nn, acc);
        }
    }

    void run_base(Type1Accumulator& acc) {
        if (!base_.empty() && base_norm_ <= cps_.back()) {
            std::vector<std::pair<int, int>> empty;
            visit(empty, base_norm_, acc);
        }
    }

private:
    void dfs(size_t start, std::vector<std::pair<int, int>>& stack, u64 norm, Type1Accumulator& acc) {
        u64 X = cps_.back();
        for (size_t i = start; i < T_.norms.size(); ++i) {
            if ((u128)norm * T_.norms[i] > X) break;
            int e = 0;
            for (u128 nn = (u128)norm * T_.norms[i]; nn <= X; nn *= T_.norms[i]) {
                ++e;
                stack.push_back({(int)i, e});
                visit(stack, (u64)nn, acc);
                dfs(i + 1, stack, (u64)nn, acc);
                stack.pop_back();
            }
        }
    }

    void visit(const std::vector<std::pair<int, int>>& stack, u64 norm, Type1Accumulator& acc) {
        std::vector<std::pair<int, int>> fac = base_;
        for (auto& [i, e] : stack) {
            bool merged = false;
            for (auto& f : fac)
                if (f.first == i) {
                    f.second += e;
                    merged = true;
                }
            if (!merged) fac.push_back({i, e});
        }
        if (fac.empty()) return;
        long s = evaluate(fac);
        size_t c = std::lower_bound(cps_.begin(), cps_.end(), norm) - cps_.begin();
        acc.value[c] += s;
        acc.count[c] += 1;
    }

    long evaluate(const std::vector<std::pair<int, int>>& fac) {
        std::vector<int> chi;
        std::vector<UnitSymbols> uc;
        for (int s : cfg_.S) {
            const auto& cj = T_.conj[s];
            for (auto& [i, e] : fac)
                for (auto& [j, f] : fac)
                    if (cj[i] == j) return 0;
            int x = 1;
            UnitSymbols u;
            u.torsion.assign(K_.torsion_elements().size(), 1);
            u.units.assign(K_.units().size(), 1);
            for (auto& [i, e] : fac) {
                if (!(e & 1)) continue;
                int q = cj[i];
                const PrimeIdealData& Q = T_.primes[q];
                for (auto& [j, f] : fac)
                    if (f & 1) x *= symbol_at(T_.generators[j], Q);
                const UnitSymbols& us = T_.unit_syms[q];
                for (size_t t = 0; t < u.torsion.size(); ++t) u.torsion[t] *= us.torsion[t];
                for (size_t t = 0; t < u.units.size(); ++t) u.units[t] *= us.units[t];
            }
            chi.push_back(x);
            uc.push_back(std::move(u));
        }
        FieldElement a = K_.one();
        if (!cfg_.psi.trivial) {
            for (auto& [i, e] : fac)
                for (int k = 0; k < e; ++k) {
                    a = K_.mul(a, T_.generators[i]);
                    for (auto& c : a.coords) c = c % cfg_.psi.modulus;
                }
        }
        return s_from_symbols(a, 0, chi, uc, cfg_, K_);
    }

    const PrimeTable& T_;
    const SpinConfig& cfg_;
    const Field& K_;
    std::vector<std::pair<int, int>> base_;
    u64 base_norm_;
    const std::vector<u64>& cps_;
};

}  // namespace

std::vector<Checkpoint> type1_sum(const Type1Options& opt, const SpinConfig& cfg, const Field& K) {
    if (cfg.S.empty()) throw Error(ErrorKind::ConfigError, "S must be non-empty");
    std::vector<u64> cps = opt.checkpoints;
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    if (cps.empty()) throw Error(ErrorKind::ConfigError, "no checkpoints");
    u64 X = cps.back();
    const Int& F = cfg.F.F;
    FieldElement m = opt.m.size() ? opt.m : K.one();
    Int Nm = abs(K.norm(m));
    if (gcd(Nm, F) != 1) throw Error(ErrorKind::ConfigError, "m is not coprime to F");
    for (int s : cfg.S) {
        FieldElement sm = K.apply(s, m);
        if (Nm != 1 && residue_symbol(m, sm, K) == 0)
            throw Error(ErrorKind::ConfigError, "m is not coprime to its S-conjugates");
    }
    Type1Accumulator total;
    total.value.assign(cps.size(), 0);
    total.count.assign(cps.size(), 0);
    if (opt.method == Type1Method::Enumeration) {
        for (auto& I : enumerate_principal_odd_ideals(X, K)) {
            Int N = I.ideal.norm;
            if (gcd(N, F) != 1) continue;
            FieldElement q;
            if (Nm != 1 && !exact_quotient(I.generator, m, K, q)) continue;
            size_t c = std::lower_bound(cps.begin(), cps.end(), to_u64(N)) - cps.begin();
            total.value[c] += s_of_generator(I.generator, cfg, K);
            total.count[c] += 1;
        }
    } else if (Nm <= to_int(X)) {
        PrimeTable T = build_prime_table(K, X, F, opt.threads);
        std::vector<std::pair<int, int>> base;
        if (Nm != 1) {
            for (auto& [P, e] : factor_principal(m, K)) {
                int i = T.find(P);
                if (i < 0) throw Error(ErrorKind::ConfigError, "prime of m missing from the table");
                base.push_back({i, e});
            }
        }
        u64 base_norm = to_u64(Nm);
        std::vector<Type1Accumulator> parts(T.primes.size() + 1);
        for (auto& a : parts) {
            a.value.assign(cps.size(), 0);
            a.count.assign(cps.size(), 0);
        }
        PrimeProductSummer summer(T, cfg, K, base, base_norm, cps);
        summer.run_base(parts.back());
        parallel_for(T.primes.size(), opt.threads, [&](size_t i) { summer.run_branch(i, parts[i]); });
        for (auto& a : parts)
            for (size_t c = 0; c < cps.size(); ++c) {
                total.value[c] += a.value[c];
                total.count[c] += a.count[c];
            }
    }
    std::vector<Checkpoint> out;
    long v = 0, n = 0;
    for (size_t c = 0; c < cps.size(); ++c) {
        v += total.value[c];
        n += total.count[c];
        out.push_back({cps[c], v, n});
    }
    return out;
}

std::vector<PrincipalIdeal> odd_ideals(u64 x, const Field& K) {
    if (K.spec().class_number != 1) throw Error(ErrorKind::ConfigError, "odd_ideals needs class number 1");
    return enumerate_principal_odd_ideals(x, K);
}

std::vector<int> unimodular_sequence(size_t count, u64 seed) {
    Rng rng(seed);
    std::vector<int> v(count);
    for (auto& x : v) x = rng.below(2) ? 1 : -1;
    return v;
}

Type2Result type2_sum(u64 x, u64 y, const std::vector<int>& v, const std::vector<int>& w, const SpinConfig& cfg,
                      const Field& K, int threads, u64 ceiling) {
    if ((u128)x * y > ceiling) throw Error(ErrorKind::CeilingExceeded, "x y beyond the type II ceiling");
    auto A = odd_ideals(x, K), B = odd_ideals(y, K);
    if (v.size() != A.size() || w.size() != B.size())
        throw Error(ErrorKind::ConfigError, "sequence lengths do not match the ideal counts");
    std::vector<long> row(A.size(), 0), rowmax(A.size(), 0);
    parallel_for(A.size(), threads, [&](size_t i) {
        if (v[i] == 0) return;
        long acc = 0, mx = 0;
        for (size_t j = 0; j < B.size(); ++j) {
            if (w[j] == 0) continue;
            long s = s_of_generator(K.mul(A[i].generator, B[j].generator), cfg, K);
            acc += w[j] * s;
            mx = std::max(mx, std::labs(s));
        }
        row[i] = v[i] * acc;
        rowmax[i] = mx;
    });
    Type2Result r;
    for (size_t i = 0; i < A.size(); ++i) {
        r.value += row[i];
        r.max_abs_s = std::max(r.max_abs_s, rowmax[i]);
    }
    r.pairs = (long)(A.size() * B.size());
    return r;
}

std::pair<Int, FieldElement> decompose_a_beta(const FieldElement& alpha, const Field& K) {
    FieldElement beta = alpha;
    beta[0] = 0;
    (void)K;
    return {alpha[0], beta};
}

bool check_spin_decomposition(const FieldElement& alpha, int sigma, const Field& K) {
    auto [a, beta] = decompose_a_beta(alpha, K);
    int lhs = residue_symbol(alpha, K.apply(sigma, alpha), K);
    FieldElement sb = K.apply(sigma, beta);
    int rhs = residue_symbol(K.sub(beta, sb), K.add(K.from_int(a), sb), K);
    return lhs == rhs;
}

namespace {

// Coordinates of v in the echelon basis E (rows), assuming v lies in its span.
IntVec echelon_coords(const IntMatrix& E, IntVec v) {
    IntVec x(E.size(), 0);
    for (size_t i = 0; i < E.size(); ++i) {
        size_t piv = 0;
        while (E[i][piv] == 0) ++piv;
        if (v[piv] % E[i][piv] != 0) throw Error(ErrorKind::StructuralFailure, "vector outside the lattice");
        x[i] = v[piv] / E[i][piv];
        for (size_t j = 0; j < v.size(); ++j) v[j] -= x[i] * E[i][j];
    }
    for (auto& c : v)
        if (c != 0) throw Error(ErrorKind::StructuralFailure, "vector outside the span");
    return x;
}

u64 int_root(u64 q, int n) {
    u64 r = (u64)std::floor(std::pow((long double)q, 1.0L / n));
    auto pw = [&](u64 b) {
        u128 v = 1;
        for (int i = 0; i < n; ++i) {
            v *= b;
            if (v > q) return (u128)q + 1;
        }
        return v;
    };
    while (r > 0 && pw(r) > q) --r;
    while (pw(r + 1) <= q) ++r;
    return r;
}

}  // namespace

SieveLatticeProbe make_lattice_probe(int sigma, const IdealLattice& g, const Field& K) {
    int n = K.n();
    SieveLatticeProbe pr;
    pr.sigma = sigma;
    pr.g = g;
    IntMatrix rows;
    for (int i = 0; i < n; ++i) {
        FieldElement w = K.zero();
        w[i] = 1;
        rows.push_back(K.sub(w, K.apply(sigma, w)).coords);
    }
    pr.eta = echelon(rows);
    pr.r = (int)pr.eta.size();
    if (pr.r != n - n / K.order(sigma)) throw Error(ErrorKind::StructuralFailure, "rank of the image is not n(1 - 1/ord)");
    for (auto& v : intersect_with_full(pr.eta, g.hnf)) pr.lambda.push_back(echelon_coords(pr.eta, v));
    return pr;
}

LatticeCount lattice_count_probe(const SieveLatticeProbe& pr, double x, const Field& K, long max_points) {
    int n = K.n(), r = pr.r;
    long B = (long)std::floor(std::pow(x, 1.0 / n) + 1e-12);
    long side = 2 * B + 1;
    long total = 1;
    for (int i = 0; i < r; ++i) {
        total *= side;
        if (total > max_points) throw Error(ErrorKind::CeilingExceeded, "lattice probe box too large");
    }
    LatticeCount res;
    std::vector<long> a(r, -B);
    for (long k = 0; k < total; ++k) {
        IntVec v(n, 0);
        for (int i = 0; i < r; ++i)
            if (a[i])
                for (int j = 0; j < n; ++j) v[j] += a[i] * pr.eta[i][j];
        if (hnf_contains(pr.g.hnf, v)) ++res.count;
        for (int i = 0; i < r && ++a[i] > B; ++i) a[i] = -B;
    }
    double g = to_ld(pr.g.norm);
    res.bound = std::pow(x, (double)r / n) / std::pow(g, (double)r / n);
    res.ratio = res.count / res.bound;
    RealMatrix I(r, std::vector<long double>(r, 0));
    for (int i = 0; i < r; ++i) I[i][i] = 1;
    IntMatrix red = lll(pr.lambda, I);
    long double best = qform(I, red[0]);
    enumerate_short(red, I, best, [&](const IntVec& v, long double q) {
        (void)v;
        if (q > 0.5L) best = std::min(best, q);
        return true;
    });
    res.lambda1 = std::sqrt((double)best);
    res.lambda1_ratio = res.lambda1 / std::pow(g, 1.0 / n);
    return res;
}

std::vector<Int> gcd_values(double x, int sigma, int tau, const Field& K, long max_points) {
    int n = K.n(), d = n - 1;
    long B = (long)std::floor(std::pow(x, 1.0 / n) + 1e-12);
    long side = 2 * B + 1, total = 1;
    for (int i = 0; i < d; ++i) {
        total *= side;
        if (total > max_points) throw Error(ErrorKind::CeilingExceeded, "gcd statistics box too large");
    }
    std::vector<Int> out;
    out.reserve(total);
    std::vector<long> a(d, -B);
    for (long k = 0; k < total; ++k) {
        FieldElement beta = K.zero();
        for (int i = 0; i < d; ++i) beta[i + 1] = a[i];
        Int f1 = K.norm(K.sub(K.apply(sigma, beta), beta));
        Int f2 = K.norm(K.sub(K.apply(tau, beta), beta));
        out.push_back(gcd(f1, f2));
        for (int i = 0; i < d && ++a[i] > B; ++i) a[i] = -B;
    }
    return out;
}

GcdStatistics gcd_statistics(double x, const Int& Z, int sigma, int tau, const Field& K, long max_points) {
    if (sigma == tau) throw Error(ErrorKind::ConfigError, "sigma and tau must differ");
    GcdStatistics st;
    auto vals = gcd_values(x, sigma, tau, K, max_points);
    st.box = (long)vals.size();
    for (auto& g : vals) {
        if (g == 0) ++st.zeros;
        if (g > Z) ++st.count;
    }
    Rng rng(17);
    st.proportional = true;
    auto f = [&](const FieldElement& b, int s) { return K.norm(K.sub(K.apply(s, b), b)); };
    for (int i = 0; i < 50 && st.proportional; ++i) {
        FieldElement v = K.zero(), w = K.zero();
        for (int j = 1; j < K.n(); ++j) {
            v[j] = (long)rng.range(-9, 9);
            w[j] = (long)rng.range(-9, 9);
        }
        if (f(v, sigma) * f(w, tau) != f(w, sigma) * f(v, tau)) st.proportional = false;
    }
    return st;
}

u64 charsum_window(u64 q, int n) { return int_root(q, n); }

namespace {

void check_charsum(const CharSumScanConfig& c) {
    if (c.q < 3 || c.q % 2 == 0 || !is_squarefree(to_int(c.q)))
        throw Error(ErrorKind::BadModulus, "q must be odd, squarefree and > 1");
    if (c.k == 0 || c.k % c.q == 0) throw Error(ErrorKind::BadModulus, "q must not divide k");
    if (c.n < 1) throw Error(ErrorKind::BadModulus, "n must be positive");
}

}  // namespace

CharSumReport charsum_scan(const CharSumScanConfig& c) {
    check_charsum(c);
    CharSumReport r;
    r.q = c.q;
    r.k = c.k;
    r.l = c.l % c.k;
    r.N = charsum_window(c.q, c.n);
    u64 L = std::lcm(c.q, c.k);
    std::vector<long> pre(L + r.N + 1, 0);
    for (u64 m = 1; m < pre.size(); ++m) {
        long t = (m % c.k == r.l) ? jacobi_i64((i64)(m % c.q), (i64)c.q) : 0;
        pre[m] = pre[m - 1] + t;
    }
    for (u64 M = 0; M < L; ++M) r.max = std::max(r.max, std::labs(pre[M + r.N] - pre[M]));
    r.exponent = r.max > 0 ? std::log((double)r.max) / std::log((double)c.q) : -INFINITY;
    return r;
}

long charsum_naive_max(const CharSumScanConfig& c) {
    check_charsum(c);
    u64 N = charsum_window(c.q, c.n), L = std::lcm(c.q, c.k), l = c.l % c.k;
    long best = 0;
    for (u64 M = 0; M < L; ++M) {
        long s = 0;
        for (u64 m = M + 1; m <= M + N; ++m)
            if (m % c.k == l) s += jacobi_i64((i64)(m % c.q), (i64)c.q);
        best = std::max(best, std::labs(s));
    }
    return best;
}

}  // namespace spinlab
