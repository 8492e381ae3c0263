#include "common.hpp"

using namespace spinlab;
using namespace spinlab::testing;

TEST_CASE("sqf") {
    auto a = sqf(1, 7);
    CHECK((a.q == 1 && a.g == 1 && a.r == 1));
    auto b = sqf(360, 1);
    CHECK((b.q == 5 && b.g == 72 && b.r == 1));
    auto c = sqf(360, 2);
    CHECK((c.q == 5 && c.g == 9 && c.r == 8));
    Rng rng(61);
    for (int i = 0; i < 300; ++i) {
        Int n1 = (long)rng.range(1, 100000), n2 = (long)rng.range(1, 100000), mF = 30;
        auto s = sqf(n1 * n2, mF);
        CHECK(s.q * s.g * s.r == n1 * n2);
        CHECK(gcd(s.q, s.g) == 1);
        CHECK(is_squarefree(s.q));
        CHECK(is_squarefull(s.g));
        if (gcd(n1, n2) == 1) CHECK(s.q == sqf(n1, mF).q * sqf(n2, mF).q);
    }
}

TEST_CASE("type I sums") {
    auto K = cubic();
    auto cfg = make_spin_config(*K, default_S(*K));
    Type1Options o;
    o.checkpoints = {10, 1000, 10000};
    auto a = type1_sum(o, cfg, *K);
    CHECK(a[0].value == 0);
    CHECK(a[0].count == 0);
    CHECK(a[2].value == -60);
    CHECK(a[2].count == 1567);
    for (auto& c : a) CHECK(std::labs(c.value) <= c.count);
    o.method = Type1Method::Enumeration;
    auto b = type1_sum(o, cfg, *K);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].value == b[i].value);
        CHECK(a[i].count == b[i].count);
    }
    o.method = Type1Method::PrimeProducts;
    o.threads = 3;
    auto c = type1_sum(o, cfg, *K);
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].value == c[i].value);

    // a modulus m coprime to F and its conjugates
    auto pi = spin_stream(40, cfg, K).back().generator;  // above 37
    o.m = pi;
    o.threads = 1;
    auto d = type1_sum(o, cfg, *K);
    o.method = Type1Method::Enumeration;
    auto e = type1_sum(o, cfg, *K);
    CHECK(d.back().value == e.back().value);
    CHECK(d.back().count == e.back().count);
    CHECK(d.back().count > 0);
    o.m = K->from_int(17);
    CHECK_THROWS_AS(type1_sum(o, cfg, *K), Error);
    o.m = K->from_int(37);
    CHECK_THROWS_AS(type1_sum(o, cfg, *K), Error);
}

TEST_CASE("type I on the other presets") {
    for (auto& K : {quintic(), e8()}) {
        auto cfg = make_spin_config(*K, default_S(*K));
        Type1Options o;
        o.checkpoints = {2000};
        auto a = type1_sum(o, cfg, *K);
        o.method = Type1Method::Enumeration;
        auto b = type1_sum(o, cfg, *K);
        CHECK(a[0].value == b[0].value);
        CHECK(a[0].count == b[0].count);
    }
}

TEST_CASE("type II sums") {
    auto K = cubic();
    auto cfg = make_spin_config(*K, default_S(*K));
    auto A = odd_ideals(120, *K);
    auto v = unimodular_sequence(A.size(), 1);
    std::vector<int> zero(A.size(), 0);
    CHECK(type2_sum(120, 120, v, zero, cfg, *K).value == 0);
    auto w = unimodular_sequence(A.size(), 2);
    auto r = type2_sum(120, 120, v, w, cfg, *K);
    CHECK(r.pairs == (long)(A.size() * A.size()));
    CHECK(std::labs(r.value) <= r.pairs * r.max_abs_s);
    CHECK(type2_sum(120, 120, v, w, cfg, *K, 3).value == r.value);
    long direct = 0;
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A.size(); ++j)
            direct += v[i] * w[j] * s_of_ideal(ideal_mul(A[i].ideal, A[j].ideal, *K), cfg, *K);
    CHECK(direct == r.value);
    CHECK_THROWS_AS(type2_sum(5000, 5000, v, w, cfg, *K), Error);
}

TEST_CASE("a plus beta decomposition") {
    Rng rng(62);
    for (auto& K : {cubic(), quintic()}) {
        auto S = default_S(*K);
        auto r = decompose_a_beta(K->from_int(7), *K);
        CHECK(r.first == 7);
        CHECK(r.second.is_zero());
        int n = 0;
        while (n < 100) {
            auto a = make_totally_positive(random_odd_element(*K, rng, 20), *K);
            auto [c, beta] = decompose_a_beta(a, *K);
            CHECK(K->add(K->from_int(c), beta) == a);
            if (spin_sigma(S[0], a, *K) == 0) continue;
            CHECK(check_spin_decomposition(a, S[0], *K));
            ++n;
        }
    }
}

TEST_CASE("lattice probe") {
    for (auto& K : {cubic(), quintic()}) {
        int s = default_S(*K)[0];
        auto whole = principal_ideal(K->one(), *K);
        auto pr = make_lattice_probe(s, whole, *K);
        CHECK(pr.r == K->n() - 1);
        auto c = lattice_count_probe(pr, 1000, *K);
        long B = (long)std::floor(std::pow(1000.0, 1.0 / K->n()) + 1e-12), box = 1;
        for (int i = 0; i < pr.r; ++i) box *= 2 * B + 1;
        CHECK(c.count == box);
        for (auto& sp : split_primes(*K, 3, 200)) {
            auto g = prime_ideal_lattice(sp.orbit[0]);
            auto q = lattice_count_probe(make_lattice_probe(s, g, *K), 20000, *K);
            CHECK(q.count >= 1);
            CHECK(q.lambda1 > 0);
            // constant calibrated on split primes up to 2000 (largest seen: 10.6)
            CHECK(q.ratio < 16.0);
            CHECK(q.lambda1_ratio > 0.2);
        }
    }
    auto E = e8();
    auto pr = make_lattice_probe(automorphism_of_order(*E, 2), principal_ideal(E->one(), *E), *E);
    CHECK(pr.r == 4);
}

TEST_CASE("gcd statistics") {
    auto K = quintic();
    auto S = default_S(*K);
    auto z = gcd_statistics(4000, 0, S[0], S[1], *K);
    CHECK(z.count == z.box - z.zeros);
    CHECK_FALSE(z.proportional);
    auto vals = gcd_values(4000, S[0], S[1], *K);
    Int mx = 0;
    for (auto& v : vals) mx = std::max(mx, v);
    CHECK(gcd_statistics(4000, mx, S[0], S[1], *K).count == 0);
    long prev = z.count;
    for (long Z : {10, 100, 1000, 10000}) {
        long c = gcd_statistics(4000, Z, S[0], S[1], *K).count;
        CHECK(c <= prev);
        prev = c;
    }
    CHECK_THROWS_AS(gcd_statistics(100, 0, S[0], S[0], *K), Error);
}

TEST_CASE("character sums") {
    CHECK(charsum_window(15, 2) == 3);
    CHECK(charsum_window(1000, 3) == 10);
    CHECK(charsum_window(999, 3) == 9);
    // full period of a non-principal character
    for (u64 q : {15ul, 21ul, 105ul, 101ul}) {
        long s = 0;
        for (u64 m = 0; m < q; ++m) s += jacobi_i64((i64)m, (i64)q);
        CHECK(s == 0);
        auto r = charsum_scan({q, 1, 1, 0});
        CHECK(r.N == q);
        CHECK(r.max == 0);
    }
    auto r = charsum_scan({15, 2, 1, 0});
    CHECK(r.N == 3);
    CHECK(r.max == charsum_naive_max({15, 2, 1, 0}));
    for (u64 q = 3; q <= 300; q += 2) {
        if (!is_squarefree(to_int(q))) continue;
        for (int n : {2, 3})
            for (u64 k : {1ul, 4ul})
                for (u64 l = 0; l < k; ++l) {
                    if (k % q == 0) continue;
                    CHECK(charsum_scan({q, n, k, l}).max == charsum_naive_max({q, n, k, l}));
                }
    }
    CHECK_THROWS_AS(charsum_scan({16, 2, 1, 0}), Error);
    CHECK_THROWS_AS(charsum_scan({45, 2, 1, 0}), Error);
    CHECK_THROWS_AS(charsum_scan({1, 2, 1, 0}), Error);
    CHECK_THROWS_AS(charsum_scan({15, 2, 15, 0}), Error);
}
