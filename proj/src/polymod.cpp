#include "spinlab/polymod.hpp"

#include <algorithm>
#include <stdexcept>

namespace spinlab::fp {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly add(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        u64 s = x + y;
        r[i] = s >= p ? s - p : s;
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = x >= y ? x - y : x + (p - y);
    }
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            u64 t = r[i + j] + spinlab::mulmod(a[i], b[j], p);
            r[i + j] = t >= p ? t - p : t;
        }
    }
    trim(r);
    return r;
}

Poly scale(const Poly& a, u64 c, u64 p) {
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = spinlab::mulmod(a[i], c, p);
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 p) {
    if (b.empty()) throw std::invalid_argument("fp::divmod by zero");
    Poly r = a;
    trim(r);
    if (r.size() < b.size()) return {{}, r};
    Poly q(r.size() - b.size() + 1, 0);
    u64 inv = invmod(b.back(), p);
    for (size_t i = r.size() - 1;; --i) {
        u64 c = spinlab::mulmod(r[i], inv, p);
        q[i - b.size() + 1] = c;
        if (c) {
            for (size_t j = 0; j < b.size(); ++j) {
                size_t k = i - b.size() + 1 + j;
                u64 t = spinlab::mulmod(c, b[j], p);
                r[k] = r[k] >= t ? r[k] - t : r[k] + (p - t);
            }
        }
        if (i == b.size() - 1) break;
    }
    r.resize(b.size() - 1);
    trim(r);
    trim(q);
    return {q, r};
}

Poly rem(const Poly& a, const Poly& b, u64 p) { return divmod(a, b, p).second; }

Poly monic(const Poly& a, u64 p) {
    if (a.empty()) return a;
    return scale(a, invmod(a.back(), p), p);
}

Poly gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) { return rem(mul(a, b, p), m, p); }

Poly powmod(const Poly& a, const Int& e, const Poly& m, u64 p) {
    Poly r{1 % p};
    trim(r);
    if (m.size() == 1) return {};
    Poly base = rem(a, m, p);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (sgn(e) == 0) return r;
    for (size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, base, m, p);
    }
    return r;
}

Poly derivative(const Poly& a, u64 p) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = spinlab::mulmod(a[i], i % p, p);
    trim(r);
    return r;
}

u64 eval(const Poly& a, u64 x, u64 p) {
    u64 r = 0;
    for (size_t i = a.size(); i-- > 0;) {
        u64 t = spinlab::mulmod(r, x, p) + a[i];
        r = t >= p ? t - p : t;
    }
    return r;
}

namespace {

// p-th root of a polynomial whose derivative vanishes: coefficients a_{pk} -> x^k.
// Over F_p the Frobenius on coefficients is the identity.
Poly pth_root(const Poly& a, u64 p) {
    Poly r;
    for (size_t i = 0; i < a.size(); i += p) r.push_back(a[i]);
    trim(r);
    return r;
}

void sqf_rec(const Poly& a, u64 p, int mult, std::vector<std::pair<Poly, int>>& out) {
    if (a.size() <= 1) return;
    Poly d = derivative(a, p);
    if (d.empty()) {
        sqf_rec(pth_root(a, p), p, mult * (int)p, out);
        return;
    }
    Poly c = gcd(a, d, p);
    Poly w = divmod(a, c, p).first;
    int i = 1;
    while (w.size() > 1) {
        Poly y = gcd(w, c, p);
        Poly z = divmod(w, y, p).first;
        if (z.size() > 1) out.push_back({monic(z, p), i * mult});
        ++i;
        w = y;
        c = divmod(c, y, p).first;
    }
    if (c.size() > 1) sqf_rec(pth_root(c, p), p, mult * (int)p, out);
}

// Equal-degree splitting of a squarefree monic product of irreducibles of degree d.
void edf(const Poly& a, int d, u64 p, Rng& rng, std::vector<Poly>& out) {
    int n = deg(a);
    if (n == d) {
        out.push_back(a);
        return;
    }
    Int q = 1;
    for (int i = 0; i < d; ++i) q *= to_int(p);
    Int e = (q - 1) / 2;
    for (;;) {
        Poly r(n);
        for (auto& c : r) c = rng.below(p);
        trim(r);
        if (r.size() <= 1) continue;
        Poly s = powmod(r, e, a, p);
        s = sub(s, Poly{1}, p);
        Poly g = gcd(a, s, p);
        if (g.size() > 1 && g.size() < a.size()) {
            edf(g, d, p, rng, out);
            edf(divmod(a, g, p).first, d, p, rng, out);
            return;
        }
    }
}

bool poly_less(const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& a, u64 p) {
    std::vector<std::pair<Poly, int>> out;
    sqf_rec(monic(a, p), p, 1, out);
    return out;
}

std::vector<std::pair<Poly, int>> factor(const Poly& a, u64 p) {
    std::vector<std::pair<Poly, int>> out;
    Rng rng(p * 0x2545F4914F6CDD1DULL + 17);
    for (auto& [sq, mult] : squarefree_decomposition(a, p)) {
        Poly f = sq;
        Poly h{0, 1};
        Poly x{0, 1};
        for (int d = 1; 2 * d <= deg(f); ++d) {
            h = powmod(h, to_int(p), f, p);
            Poly g = gcd(f, sub(h, x, p), p);
            if (g.size() > 1) {
                std::vector<Poly> parts;
                edf(g, d, p, rng, parts);
                for (auto& q : parts) out.push_back({q, mult});
                f = divmod(f, g, p).first;
                h = rem(h, f, p);
            }
        }
        if (f.size() > 1) out.push_back({monic(f, p), mult});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return poly_less(x.first, y.first); });
    return out;
}

int count_roots(const Poly& a, u64 p) {
    Poly x{0, 1};
    Poly h = powmod(x, to_int(p), a, p);
    Poly g = gcd(a, sub(h, x, p), p);
    return deg(g);
}

std::vector<u64> roots(const Poly& a, u64 p) {
    Poly x{0, 1};
    Poly am = monic(a, p);
    Poly h = powmod(x, to_int(p), am, p);
    Poly g = gcd(am, sub(h, x, p), p);
    std::vector<u64> out;
    if (g.size() <= 1) return out;
    std::vector<Poly> parts;
    Rng rng(p * 0x9E3779B97F4A7C15ULL + 3);
    edf(g, 1, p, rng, parts);
    for (auto& q : parts) out.push_back(q[0] == 0 ? 0 : p - q[0]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace spinlab::fp
