#include "spinlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <set>

namespace spinlab {

using cld = std::complex<long double>;

std::string IdealLattice::key() const {
    std::string s;
    for (size_t i = 0; i < hnf.size(); ++i)
        for (size_t j = 0; j <= i; ++j) {
            if (!s.empty()) s += ' ';
            s += hnf[i][j].get_str();
        }
    return s;
}

IdealLattice ideal_from_rows(const IntMatrix& rows, int n, const Int& multiple) {
    IdealLattice L;
    L.hnf = hnf(rows, n, multiple);
    L.norm = hnf_det(L.hnf);
    return L;
}

IdealLattice principal_ideal(const FieldElement& a, const Field& K) {
    if (a.is_zero()) throw Error(ErrorKind::ConfigError, "ideal of zero");
    return ideal_from_rows(K.mult_matrix(a), K.n(), abs(K.norm(a)));
}

IdealLattice prime_ideal_lattice(const PrimeIdealData& P) {
    IdealLattice L;
    L.hnf = P.hnf;
    L.norm = hnf_det(P.hnf);
    return L;
}

IdealLattice ideal_mul(const IdealLattice& A, const IdealLattice& B, const Field& K) {
    int n = K.n();
    IntMatrix rows;
    for (auto& a : A.hnf)
        for (auto& b : B.hnf) rows.push_back(K.mul(FieldElement(a), FieldElement(b)).coords);
    return ideal_from_rows(rows, n, A.norm * B.norm);
}

bool ideal_contains(const IdealLattice& L, const FieldElement& a) { return hnf_contains(L.hnf, a.coords); }

bool exact_quotient(const FieldElement& a, const FieldElement& b, const Field& K, FieldElement& out) {
    FieldElement conj = K.one();
    for (int s = 0; s < K.n(); ++s)
        if (s != K.identity_index()) conj = K.mul(conj, K.apply(s, b));
    Int N = K.norm(b);
    if (N == 0) throw Error(ErrorKind::ConfigError, "division by zero");
    FieldElement q = K.mul(a, conj);
    if (!K.divide_exact(q, N)) return false;
    out = std::move(q);
    return true;
}

FieldElement unit_inverse(int j, const Field& K) {
    const FieldElement& e = K.units()[j];
    FieldElement inv = K.one();
    for (int s = 0; s < K.n(); ++s)
        if (s != K.identity_index()) inv = K.mul(inv, K.apply(s, e));
    if (K.norm(e) < 0) inv = K.neg(inv);
    return inv;
}

namespace {

// LLL-reduced basis eta_j of the unit log lattice; the fundamental domain is
// the parallelepiped on this basis centred at the origin.
struct DomainBasis {
    std::vector<FieldElement> eta, eta_inv;
    std::vector<std::vector<long double>> logs;
};

const DomainBasis& domain_basis(const Field& K) {
    static std::mutex mu;
    static std::map<const Field*, std::unique_ptr<DomainBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(&K);
    if (it != cache.end()) return *it->second;
    int r = K.unit_rank();
    std::vector<std::vector<long double>> b = K.unit_logs();
    std::vector<std::vector<long>> U(r, std::vector<long>(r, 0));
    for (int i = 0; i < r; ++i) U[i][i] = 1;
    auto dot = [](const std::vector<long double>& x, const std::vector<long double>& y) {
        long double s = 0;
        for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
        return s;
    };
    for (int iter = 0, k = 1; k < r && iter < 10000; ++iter) {
        std::vector<std::vector<long double>> bs(r);
        std::vector<long double> B(r);
        std::vector<std::vector<long double>> mu_(r, std::vector<long double>(r, 0));
        for (int i = 0; i < r; ++i) {
            bs[i] = b[i];
            for (int j = 0; j < i; ++j) {
                mu_[i][j] = dot(b[i], bs[j]) / B[j];
                for (size_t t = 0; t < bs[i].size(); ++t) bs[i][t] -= mu_[i][j] * bs[j][t];
            }
            B[i] = dot(bs[i], bs[i]);
        }
        bool changed = false;
        for (int j = k - 1; j >= 0; --j) {
            long q = std::lround(mu_[k][j]);
            if (q == 0) continue;
            for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= q * b[j][t];
            for (int t = 0; t < r; ++t) U[k][t] -= q * U[j][t];
            changed = true;
        }
        if (changed) continue;
        if (B[k] < (0.99L - mu_[k][k - 1] * mu_[k][k - 1]) * B[k - 1]) {
            std::swap(b[k], b[k - 1]);
            std::swap(U[k], U[k - 1]);
            k = std::max(1, k - 1);
        } else {
            ++k;
        }
    }
    auto D = std::make_unique<DomainBasis>();
    std::vector<FieldElement> inv;
    for (int j = 0; j < r; ++j) inv.push_back(unit_inverse(j, K));
    for (int i = 0; i < r; ++i) {
        FieldElement e = K.one(), ei = K.one();
        for (int j = 0; j < r; ++j) {
            long x = U[i][j];
            if (x > 0) {
                e = K.mul(e, K.pow(K.units()[j], (unsigned)x));
                ei = K.mul(ei, K.pow(inv[j], (unsigned)x));
            } else if (x < 0) {
                e = K.mul(e, K.pow(inv[j], (unsigned)-x));
                ei = K.mul(ei, K.pow(K.units()[j], (unsigned)-x));
            }
        }
        D->eta.push_back(e);
        D->eta_inv.push_back(ei);
        D->logs.push_back(K.log_places_ld(e));
    }
    auto& ref = *D;
    cache[&K] = std::move(D);
    return ref;
}

}  // namespace

FieldElement short_generator(const IdealLattice& L, const Field& K, int rounds) {
    int n = K.n();
    const auto& G = K.t2_gram();
    IntMatrix B = lll(L.hnf, G);
    long double N = to_ld(L.norm);
    long double R = 1.5L * n * std::pow(N, 2.0L / n);
    for (int round = 0; round <= rounds; ++round, R *= 2) {
        bool found = false;
        FieldElement best;
        long double best_t2 = 0;
        enumerate_short(B, G, R, [&](const IntVec& v, long double t2) {
            FieldElement x(v);
            auto emb = K.embed_ld(x);
            long double prod = 1;
            for (auto& z : emb) prod *= std::abs(z);
            if (std::fabs(prod - N) > 1e-6L * N) return true;
            if (abs(K.norm(x)) != L.norm) return true;
            bool better = !found || t2 < best_t2 * (1 - 1e-12L) ||
                          (t2 <= best_t2 * (1 + 1e-12L) && x < best);
            if (better) {
                best = x;
                best_t2 = t2;
                found = true;
            }
            return true;
        });
        if (found) return best;
    }
    throw Error(ErrorKind::GeneratorNotFound, "no generator within budget for ideal of norm " + L.norm.get_str());
}

FieldElement make_totally_positive(const FieldElement& a, const Field& K) {
    if (a.is_zero()) throw Error(ErrorKind::ConfigError, "zero has no sign");
    if (!K.totally_real()) return a;
    unsigned mask = K.sign_mask(a);
    const FieldElement* u = K.positivity_unit(mask);
    if (!u) throw Error(ErrorKind::NotAchievable, "no unit with sign pattern " + std::to_string(mask));
    if (mask == 0) return a;
    return K.mul(*u, a);
}

namespace {

// Row j: m * log-vector of eps_j restricted to the first r places; inverse in long double.
struct LogBasis {
    int r = 0;
    std::vector<std::vector<long double>> inv;
};

std::vector<std::vector<long double>> invert_ld(std::vector<std::vector<long double>> a) {
    int r = (int)a.size();
    std::vector<std::vector<long double>> inv(r, std::vector<long double>(r, 0));
    for (int i = 0; i < r; ++i) inv[i][i] = 1;
    for (int c = 0; c < r; ++c) {
        int p = c;
        for (int i = c + 1; i < r; ++i)
            if (std::fabs(a[i][c]) > std::fabs(a[p][c])) p = i;
        std::swap(a[c], a[p]);
        std::swap(inv[c], inv[p]);
        long double d = a[c][c];
        for (int j = 0; j < r; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (int i = 0; i < r; ++i) {
            if (i == c) continue;
            long double f = a[i][c];
            for (int j = 0; j < r; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

// Solve c * M = y for row vector c, M r x r, in MPFR.
std::vector<Real> solve_row_mp(std::vector<std::vector<Real>> M, std::vector<Real> y) {
    // c M = y  <=>  M^T c^T = y^T
    int r = (int)M.size();
    std::vector<std::vector<Real>> A(r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) A[i].push_back(M[j][i]);
    for (int c = 0; c < r; ++c) {
        int p = c;
        for (int i = c + 1; i < r; ++i)
            if (A[i][c].abs() > A[p][c].abs()) p = i;
        std::swap(A[c], A[p]);
        std::swap(y[c], y[p]);
        for (int i = c + 1; i < r; ++i) {
            Real f = A[i][c] / A[c][c];
            for (int j = c; j < r; ++j) A[i][j] -= f * A[c][j];
            y[i] -= f * y[c];
        }
    }
    std::vector<Real> x(r, Real(y[0].prec()));
    for (int i = r - 1; i >= 0; --i) {
        Real s = y[i];
        for (int j = i + 1; j < r; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

std::vector<Real> log_places_mp(const FieldElement& a, const Field& K, mpfr_prec_t prec) {
    auto v = K.embed_mp(a, prec);
    std::vector<Real> out;
    for (int j = 0; j < K.r1() + K.r2(); ++j) {
        Real l = v[j].norm2().log();  // 2 log|a_j|
        if (K.place_weight(j) == 1) {
            Real half(0.5, prec);
            l = l * half;
        }
        out.push_back(l);
    }
    return out;
}

// Coordinates c (r entries) of the trace-zero part of log(a) in the basis m * log(eps_j).
// Returns false if the evaluation is not accurate enough at this precision.
bool log_coords(const FieldElement& a, const Field& K, int m, mpfr_prec_t prec, std::vector<long double>& c_ld,
                std::vector<Real>& c_mp, bool& near_boundary) {
    const DomainBasis& D = domain_basis(K);
    int r = K.unit_rank();
    int places = K.r1() + K.r2();
    long double nrm = std::fabs(to_ld(K.norm(a)));
    near_boundary = false;
    if (prec <= 64) {
        std::vector<long double> err;
        auto emb = K.embed_ld(a, &err);
        for (int j = 0; j < places; ++j)
            if (!(err[j] < std::ldexp(1.0L, -40) * std::abs(emb[j]))) return false;
        std::vector<long double> l(places);
        for (int j = 0; j < places; ++j) l[j] = K.place_weight(j) * std::log(std::abs(emb[j]));
        long double ln = std::log(nrm) / K.n();
        std::vector<std::vector<long double>> M(r, std::vector<long double>(r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) M[i][j] = m * D.logs[i][j];
        auto inv = invert_ld(M);
        c_ld.assign(r, 0);
        for (int j = 0; j < r; ++j) {
            long double y = l[j] - K.place_weight(j) * ln;
            for (int i = 0; i < r; ++i) c_ld[i] += y * inv[j][i];
        }
        for (auto& x : c_ld) x += 0.5L;
        for (int i = 0; i < r; ++i) {
            long double fr = c_ld[i] - std::floor(c_ld[i]);
            if (fr < std::ldexp(1.0L, -20) || fr > 1 - std::ldexp(1.0L, -20)) near_boundary = true;
        }
        return true;
    }
    auto v = K.embed_mp(a, prec);
    // accuracy check: absolute error about 2^-prec * sum |a_i| |omega_ij|
    long double mag = 0;
    for (size_t i = 0; i < a.size(); ++i) mag = std::max(mag, std::fabs(to_ld(a[i])));
    for (int j = 0; j < places; ++j) {
        long double aj = std::sqrt(v[j].norm2().to_ld());
        if (!(aj > mag * 64 * std::ldexp(1.0L, -(int)prec / 2))) return false;
    }
    auto l = log_places_mp(a, K, prec);
    Real ln = Real(Int(abs(K.norm(a))), prec).log() / Real((long double)K.n(), prec);
    std::vector<std::vector<Real>> M(r);
    std::vector<std::vector<Real>> ulog;
    for (int i = 0; i < r; ++i) ulog.push_back(log_places_mp(D.eta[i], K, prec));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) M[i].push_back(ulog[i][j] * Real((long double)m, prec));
    std::vector<Real> y;
    for (int j = 0; j < r; ++j) y.push_back(l[j] - ln * Real((long double)K.place_weight(j), prec));
    c_mp = solve_row_mp(M, y);
    for (auto& x : c_mp) x += Real(0.5, prec);
    c_ld.clear();
    Real tol(std::ldexp(1.0L, -(int)prec / 2), prec);
    for (int i = 0; i < r; ++i) {
        Real fr = c_mp[i] - c_mp[i].floor();
        Real one(1.0, prec);
        if (fr < tol || fr > one - tol) near_boundary = true;
        c_ld.push_back(c_mp[i].to_ld());
    }
    return true;
}

FieldElement unit_power_product(const std::vector<Int>& k, int m, const Field& K) {
    const DomainBasis& D = domain_basis(K);
    FieldElement u = K.one();
    for (size_t j = 0; j < k.size(); ++j) {
        if (k[j] == 0) continue;
        Int e = k[j] * m;
        FieldElement base = e > 0 ? D.eta_inv[j] : D.eta[j];
        Int ae = abs(e);
        if (!ae.fits_ulong_p() || ae > 100000) throw Error(ErrorKind::PrecisionExhausted, "unit exponent too large");
        u = K.mul(u, K.pow(base, (unsigned)ae.get_ui()));
    }
    return u;
}

}  // namespace

DomainReducedElement reduce_with_multiplier(const FieldElement& a, const Field& K, int m) {
    if (a.is_zero()) throw Error(ErrorKind::ConfigError, "reduce_to_domain of zero");
    int r = K.unit_rank();
    DomainReducedElement out;
    if (r == 0) {
        out.element = a;
        return out;
    }
    // Exact shortcut: a rational multiple of a unit has c integral.
    const mpfr_prec_t ladder[] = {64, 128, 256, 512, 1024};
    FieldElement cur = a;
    for (int pass = 0; pass < 8; ++pass) {
        std::vector<long double> c;
        std::vector<Real> cmp;
        bool boundary = false;
        mpfr_prec_t used = 0;
        bool ok = false;
        for (mpfr_prec_t prec : ladder) {
            if (!log_coords(cur, K, m, prec, c, cmp, boundary)) continue;
            used = prec;
            ok = true;
            if (!boundary) break;
        }
        if (!ok) throw Error(ErrorKind::PrecisionExhausted, "log embedding of " + a.str());
        std::vector<Int> k(r);
        std::vector<double> frac(r);
        bool all_zero = true;
        for (int i = 0; i < r; ++i) {
            if (used > 64) {
                Real one(1.0, used);
                Real fl = cmp[i].floor();
                Real fr = cmp[i] - fl;
                Real tol(std::ldexp(1.0L, -(int)used / 2), used);
                Int ki = fl.to_mpz();
                if (fr > one - tol) {
                    ki += 1;
                    fr = Real(used);
                } else if (fr < tol) {
                    fr = Real(used);
                }
                k[i] = ki;
                frac[i] = fr.to_double();
            } else {
                long double fl = std::floor(c[i]);
                k[i] = Int((double)fl);
                frac[i] = (double)(c[i] - fl);
            }
            if (k[i] != 0) all_zero = false;
        }
        if (all_zero) {
            out.element = cur;
            out.log_vector = frac;
            return out;
        }
        cur = K.mul(cur, unit_power_product(k, m, K));
    }
    throw Error(ErrorKind::PrecisionExhausted, "domain reduction did not settle for " + a.str());
}

DomainReducedElement reduce_to_domain(const FieldElement& a, const Field& K) {
    return reduce_with_multiplier(a, K, K.totally_real() ? 2 : 1);
}

namespace {

template <class F>
void for_each_vertex(const Field& K, F&& fn) {
    const DomainBasis& D = domain_basis(K);
    int r = K.unit_rank(), places = K.r1() + K.r2();
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        std::vector<long double> v(places, 0);
        for (int j = 0; j < r; ++j)
            for (int t = 0; t < places; ++t) v[t] += (mask >> j & 1 ? 0.5L : -0.5L) * D.logs[j][t];
        fn(v);
    }
}

}  // namespace

long double enumeration_radius(const Field& K, long double X) {
    long double best = 0;
    for_each_vertex(K, [&](const std::vector<long double>& v) {
        long double s = 0;
        for (size_t j = 0; j < v.size(); ++j) {
            int d = K.place_weight((int)j);
            s += d * std::exp(2 * v[j] / d);
        }
        best = std::max(best, s);
    });
    return std::pow(X, 2.0L / K.n()) * best * (1 + 1e-9L);
}

long double box_constant(const Field& K) {
    int n = K.n();
    // Omega^{-1} over C.
    std::vector<std::vector<cld>> a(n, std::vector<cld>(n)), inv(n, std::vector<cld>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = K.omega_ld(i, j);
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int i = c + 1; i < n; ++i)
            if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
        std::swap(a[c], a[p]);
        std::swap(inv[c], inv[p]);
        cld d = a[c][c];
        for (int j = 0; j < n; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c) continue;
            cld f = a[i][c];
            for (int j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    // coords = emb * Omega^{-1}: a_i = sum_j emb_j inv[j][i]
    long double col = 0;
    for (int i = 0; i < n; ++i) {
        long double s = 0;
        for (int j = 0; j < n; ++j) s += std::abs(inv[j][i]);
        col = std::max(col, s);
    }
    long double growth = 0;
    for_each_vertex(K, [&](const std::vector<long double>& v) {
        for (size_t j = 0; j < v.size(); ++j) growth = std::max(growth, std::exp(v[j] / K.place_weight((int)j)));
    });
    return col * growth * (1 + 1e-9L);
}

std::vector<PrincipalIdeal> enumerate_principal_odd_ideals(u64 X, const Field& K, u64 ceiling) {
    if (X > ceiling) throw Error(ErrorKind::CeilingExceeded, std::to_string(X) + " > " + std::to_string(ceiling));
    std::map<std::pair<Int, std::string>, PrincipalIdeal> found;
    if (X < 3) return {};
    long double R = enumeration_radius(K, (long double)X);
    int n = K.n();
    IntMatrix I(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) I[i][i] = 1;
    IntMatrix B = lll(I, K.t2_gram());
    Int Xi = to_int(X);
    enumerate_short(B, K.t2_gram(), R, [&](const IntVec& v, long double) {
        FieldElement x(v);
        Int N = abs(K.norm(x));
        if (N <= 1 || N > Xi || mpz_even_p(N.get_mpz_t())) return true;
        IdealLattice L = principal_ideal(x, K);
        auto key = std::make_pair(L.norm, L.key());
        if (found.count(key)) return true;
        found.emplace(key, PrincipalIdeal{L, reduce_to_domain(K.totally_real() ? make_totally_positive(x, K) : x, K).element});
        return true;
    });
    std::vector<PrincipalIdeal> out;
    for (auto& [k, v] : found) out.push_back(v);
    return out;
}

std::vector<PrincipalIdeal> principal_ideals_bruteforce(u64 X, const Field& K) {
    std::vector<std::pair<u64, IdealLattice>> primes;
    for (u64 p : primes_up_to(X)) {
        if (p == 2) continue;
        for (auto& P : prime_decomposition(p, K)) {
            Int N = P.norm();
            if (N <= to_int(X)) primes.push_back({N.get_ui(), prime_ideal_lattice(P)});
        }
    }
    std::sort(primes.begin(), primes.end(), [](auto& a, auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second.key() < b.second.key();
    });
    std::vector<PrincipalIdeal> out;
    std::function<void(size_t, const IdealLattice&, u64)> dfs = [&](size_t start, const IdealLattice& cur, u64 norm) {
        for (size_t i = start; i < primes.size(); ++i) {
            u64 nn = norm * primes[i].first;
            if (nn > X) break;
            IdealLattice next = norm == 1 ? primes[i].second : ideal_mul(cur, primes[i].second, K);
            FieldElement g;
            try {
                g = short_generator(next, K);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::GeneratorNotFound) throw;
                dfs(i, next, nn);
                continue;
            }
            out.push_back({next, reduce_to_domain(K.totally_real() ? make_totally_positive(g, K) : g, K).element});
            dfs(i, next, nn);
        }
    };
    IdealLattice unit;
    dfs(0, unit, 1);
    std::sort(out.begin(), out.end(), [](const PrincipalIdeal& a, const PrincipalIdeal& b) {
        if (a.ideal.norm != b.ideal.norm) return a.ideal.norm < b.ideal.norm;
        return a.ideal.key() < b.ideal.key();
    });
    return out;
}

}  // namespace spinlab
