#include "spinlab/primes.hpp"

#include <algorithm>

namespace spinlab {

Int PrimeIdealData::norm() const {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, f);
    return r;
}

ResidueFieldElement ResidueFieldElement::operator*(const ResidueFieldElement& o) const {
    ResidueFieldElement r = *this;
    r.value = f == 1 ? fp::mul(value, o.value, p) : fp::mulmod(value, o.value, g, p);
    return r;
}

ResidueFieldElement ResidueFieldElement::operator+(const ResidueFieldElement& o) const {
    ResidueFieldElement r = *this;
    r.value = fp::add(value, o.value, p);
    return r;
}

ResidueFieldElement ResidueFieldElement::pow(const Int& e) const {
    ResidueFieldElement r = *this;
    r.value = fp::powmod(value, e, g, p);
    return r;
}

namespace {

FieldElement lift_poly(const Poly& h, const Field& K) {
    FieldElement r = K.zero();
    for (size_t k = 0; k < h.size(); ++k)
        if (h[k]) r = K.add(r, K.scale(K.theta_powers()[k], to_int(h[k])));
    return r;
}

void check_p(u64 p, const Field& K) {
    if (p == 2) throw Error(ErrorKind::EvenPrime, "p = 2");
    if (!is_prime_u64(p)) throw Error(ErrorKind::ConfigError, std::to_string(p) + " is not prime");
    if (mpz_divisible_ui_p(K.poly_index().get_mpz_t(), p))
        throw Error(ErrorKind::StructuralFailure, "p divides the index of Z[theta]");
}

PrimeIdealData make_prime(u64 p, const Poly& g, int e, const Poly& fbar, const std::vector<Poly>& bm, const Field& K) {
    int n = K.n();
    PrimeIdealData P;
    P.p = p;
    P.g = g;
    P.f = fp::deg(g);
    P.e = e;
    if (P.f == 1) {
        P.root = (p - g[0]) % p;
        P.basis_res1.resize(n);
        for (int i = 0; i < n; ++i) P.basis_res1[i] = fp::eval(bm[i], P.root, p);
    }
    for (int i = 0; i < n; ++i) P.basis_res.push_back(fp::rem(bm[i], g, p));
    if (P.f == 1 && e == 1) {
        IntMatrix H(n, IntVec(n, 0));
        H[0][0] = to_int(p);
        for (int i = 1; i < n; ++i) {
            H[i][0] = to_int((p - P.basis_res1[i]) % p);
            H[i][i] = 1;
        }
        P.hnf = H;
    } else {
        IntMatrix rows;
        FieldElement gt = lift_poly(g, K);
        for (int i = 0; i < n; ++i) {
            FieldElement w = K.zero();
            w[i] = 1;
            rows.push_back(K.mul(gt, w).coords);
        }
        P.hnf = hnf(rows, n, to_int(p));
    }
    auto [h, r] = fp::divmod(fbar, g, p);
    P.tau = lift_poly(h, K);
    return P;
}

}  // namespace

std::vector<PrimeIdealData> prime_decomposition(u64 p, const Field& K) {
    check_p(p, K);
    Poly fbar = K.poly_mod_p(p);
    auto bm = K.basis_mod_p(p);
    std::vector<PrimeIdealData> out;
    for (auto& [g, e] : fp::factor(fbar, p)) out.push_back(make_prime(p, g, e, fbar, bm, K));
    std::sort(out.begin(), out.end(), [](const PrimeIdealData& a, const PrimeIdealData& b) {
        if (a.f != b.f) return a.f < b.f;
        if (a.f == 1) return a.root < b.root;
        return std::lexicographical_compare(a.g.rbegin(), a.g.rend(), b.g.rbegin(), b.g.rend());
    });
    for (size_t i = 0; i < out.size(); ++i) out[i].orbit_index = (int)i;
    return out;
}

std::vector<PrimeIdealData> factor_rational_prime(u64 p, const Field& K) {
    if (p == 2) throw Error(ErrorKind::EvenPrime, "p = 2");
    if (mpz_divisible_ui_p(K.spec().discriminant.get_mpz_t(), p))
        throw Error(ErrorKind::RamifiedPrime, std::to_string(p) + " divides the discriminant");
    auto v = prime_decomposition(p, K);
    if (v[0].f == 1 && (int)v.size() == K.n()) return split_prime_data(p, K).orbit;
    return v;
}

u64 residue_f1(const FieldElement& a, const PrimeIdealData& P) {
    u64 p = P.p, s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        s = (s + mulmod(mod_u64(a[i], p), P.basis_res1[i], p)) % p;
    }
    return s;
}

ResidueFieldElement residue_map(const FieldElement& a, const PrimeIdealData& P) {
    ResidueFieldElement r;
    r.p = P.p;
    r.f = P.f;
    r.g = P.g;
    if (P.f == 1) {
        u64 v = residue_f1(a, P);
        if (v) r.value = {v};
        return r;
    }
    Poly acc;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        acc = fp::add(acc, fp::scale(P.basis_res[i], mod_u64(a[i], P.p), P.p), P.p);
    }
    r.value = acc;
    return r;
}

bool in_prime(const FieldElement& a, const PrimeIdealData& P) {
    if (P.f == 1) return residue_f1(a, P) == 0;
    return residue_map(a, P).is_zero();
}

int valuation(FieldElement a, const PrimeIdealData& P, const Field& K) {
    if (a.is_zero()) throw Error(ErrorKind::ConfigError, "valuation of zero");
    Int p = to_int(P.p);
    int v = 0;
    while (in_prime(a, P)) {
        FieldElement b = K.mul(a, P.tau);
        if (!K.divide_exact(b, p)) break;
        a = std::move(b);
        ++v;
    }
    return v;
}

int conjugate_index(const std::vector<PrimeIdealData>& orbit, int s, int i, const Field& K) {
    // x in sigma(P) iff sigma^{-1}(x) in P; find the Q containing sigma(g(theta)) ...
    // equivalently Q = sigma(P) contains sigma(t) for every t in P.
    const PrimeIdealData& P = orbit[i];
    int n = K.n();
    std::vector<FieldElement> gens;
    for (int r = 0; r < n; ++r) gens.push_back(K.apply(s, FieldElement(P.hnf[r])));
    for (size_t j = 0; j < orbit.size(); ++j) {
        bool all = true;
        for (auto& x : gens)
            if (!in_prime(x, orbit[j])) {
                all = false;
                break;
            }
        if (all) return (int)j;
    }
    throw Error(ErrorKind::StructuralFailure, "conjugate prime not found");
}

bool splits_completely(u64 p, const Field& K) {
    if (p == 2) throw Error(ErrorKind::EvenPrime, "p = 2");
    if (mpz_divisible_ui_p(K.spec().discriminant.get_mpz_t(), p))
        throw Error(ErrorKind::RamifiedPrime, std::to_string(p) + " divides the discriminant");
    return fp::count_roots(K.poly_mod_p(p), p) == K.n();
}

SplitPrime split_prime_data(u64 p, const Field& K) {
    int n = K.n();
    Poly fbar = K.poly_mod_p(p);
    auto rts = fp::roots(fbar, p);
    std::sort(rts.begin(), rts.end());
    auto bm = K.basis_mod_p(p);
    std::vector<PrimeIdealData> by_root;
    for (u64 c : rts) by_root.push_back(make_prime(p, Poly{(p - c) % p, 1}, 1, fbar, bm, K));
    // sigma_s(P_0) is the prime whose residue map kills sigma_s(x) for x in P_0;
    // its root is the residue at P_0 of sigma_s^{-1}(theta).
    SplitPrime sp;
    sp.p = p;
    const FieldElement& th = K.theta_powers()[1];
    for (int s = 0; s < n; ++s) {
        u64 c = residue_f1(K.apply(K.inverse(s), th), by_root[0]);
        auto it = std::lower_bound(rts.begin(), rts.end(), c);
        if (it == rts.end() || *it != c) throw Error(ErrorKind::StructuralFailure, "Galois orbit mismatch");
        PrimeIdealData P = by_root[it - rts.begin()];
        P.orbit_index = s;
        sp.orbit.push_back(std::move(P));
    }
    return sp;
}

SplitPrimeStream::SplitPrimeStream(FieldPtr K, u64 X, u64 lo) : K_(std::move(K)) {
    for (u64 p : primes_up_to(X))
        if (p >= lo && p > 2) primes_.push_back(p);
}

bool SplitPrimeStream::next(SplitPrime& out) {
    const Field& K = *K_;
    while (pos_ < primes_.size()) {
        u64 p = primes_[pos_++];
        if (mpz_divisible_ui_p(K.spec().discriminant.get_mpz_t(), p)) continue;
        if (mpz_divisible_ui_p(K.poly_index().get_mpz_t(), p)) continue;
        if (fp::count_roots(K.poly_mod_p(p), p) != K.n()) continue;
        out = split_prime_data(p, K);
        return true;
    }
    return false;
}

std::vector<SplitPrime> split_primes(const Field& K, u64 lo, u64 hi) {
    std::vector<SplitPrime> out;
    for (u64 p : primes_up_to(hi)) {
        if (p < lo || p == 2) continue;
        if (mpz_divisible_ui_p(K.spec().discriminant.get_mpz_t(), p)) continue;
        if (mpz_divisible_ui_p(K.poly_index().get_mpz_t(), p)) continue;
        if (fp::count_roots(K.poly_mod_p(p), p) != K.n()) continue;
        out.push_back(split_prime_data(p, K));
    }
    return out;
}

}  // namespace spinlab
