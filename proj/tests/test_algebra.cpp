#include "common.hpp"

#include <cmath>

using namespace spinlab;
using namespace spinlab::testing;

TEST_CASE("cubic multiplication and norms") {
    auto K = cubic();
    FieldElement th = K->zero(), th2 = K->zero();
    th[1] = 1;
    th2[2] = 1;
    CHECK(K->mul(th, th2) == element_from_ints({1, 3, 0}));
    CHECK(K->norm(th) == 1);
    CHECK(K->norm(K->one()) == 1);
    for (auto& F : {cubic(), quintic(), e8()}) {
        Int two_n = 1;
        for (int i = 0; i < F->n(); ++i) two_n *= 2;
        CHECK(F->norm(F->from_int(2)) == two_n);
    }
}

TEST_CASE("ring axioms and norm multiplicativity on every preset") {
    Rng rng(3);
    for (auto& K : {cubic(), quintic(), e8()}) {
        for (int i = 0; i < 200; ++i) {
            auto a = random_element(*K, rng, 20), b = random_element(*K, rng, 20), c = random_element(*K, rng, 20);
            CHECK(K->mul(a, b) == K->mul(b, a));
            CHECK(K->mul(K->mul(a, b), c) == K->mul(a, K->mul(b, c)));
            for (int s = 0; s < K->n(); ++s)
                CHECK(K->apply(s, K->mul(a, b)) == K->mul(K->apply(s, a), K->apply(s, b)));
        }
        for (int i = 0; i < 500; ++i) {
            auto a = random_element(*K, rng, 30), b = random_element(*K, rng, 30);
            CHECK(K->norm(K->mul(a, b)) == K->norm(a) * K->norm(b));
        }
    }
}

TEST_CASE("automorphisms form a group and preserve norms") {
    Rng rng(4);
    for (auto& K : {cubic(), quintic(), e8()}) {
        int n = K->n();
        auto a = random_element(*K, rng, 10);
        CHECK(K->apply(K->identity_index(), a) == a);
        for (int s = 0; s < n; ++s) {
            CHECK(n % K->order(s) == 0);
            FieldElement b = a;
            for (int k = 0; k < K->order(s); ++k) b = K->apply(s, b);
            CHECK(b == a);
            CHECK(K->compose(s, K->inverse(s)) == K->identity_index());
        }
        for (int i = 0; i < 100; ++i) {
            auto x = random_element(*K, rng, 50);
            for (int s = 0; s < n; ++s) CHECK(K->norm(K->apply(s, x)) == K->norm(x));
        }
    }
    auto K = cubic();
    int s = automorphism_of_order(*K, 3);
    FieldElement th = K->zero();
    th[1] = 1;
    // sigma(theta) = 2 - theta^2
    CHECK(K->apply(s, th) == element_from_ints({2, 0, -1}));
}

TEST_CASE("validation rejects a non-unit and decides the unit condition") {
    FieldSpec spec = parse_field_spec(preset_json("cubic9"));
    spec.units[0] = element_from_ints({2, 0, 0});
    try {
        Field::create(spec);
        FAIL("accepted a non-unit");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::StructuralFailure);
    }

    // independent sign enumeration over +-eps1^a eps2^b
    auto K = cubic();
    int positive = 0;
    for (int sgn : {1, -1})
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                FieldElement u = K->from_int(sgn);
                if (a) u = K->mul(u, K->units()[0]);
                if (b) u = K->mul(u, K->units()[1]);
                auto emb = embeddings(u, *K);
                bool pos = true;
                for (auto& z : emb) pos = pos && z.real() > 0;
                positive += pos;
            }
    CHECK(K->report().unit_condition_verdict == (positive == 1));
    CHECK(K->report().unit_condition_verdict);
    CHECK(e8()->report().unit_condition_verdict);
    CHECK(e8()->report().ok());
    CHECK(quintic()->report().ok());
}

TEST_CASE("embeddings") {
    Rng rng(8);
    for (auto& K : {cubic(), quintic(), e8()}) {
        for (auto& z : embeddings(K->one(), *K)) {
            CHECK(std::abs(z.real() - 1) < 1e-12);
            CHECK(std::abs(z.imag()) < 1e-12);
        }
        for (int i = 0; i < 50; ++i) {
            auto a = random_element(*K, rng, 9);
            if (a.is_zero()) continue;
            auto emb = embeddings(a, *K);
            std::complex<double> prod = 1;
            for (auto& z : emb) prod *= z;
            double N = K->norm(a).get_d();
            CHECK(std::abs(prod.real() - N) <= 1e-9 * std::max(1.0, std::abs(N)));
        }
    }
    for (auto& z : embeddings(element_from_ints({0, 1, 0}), *cubic())) CHECK(std::abs(z.imag()) < 1e-15);
}

TEST_CASE("big F constant") {
    auto F = compute_bigF(*cubic());
    CHECK(F.abs_disc == 81);
    CHECK(F.f == 17 * 19);
    CHECK(F.two_power == 32);
    CHECK(F.F == Int(32) * 17 * 19 * 81);
    for (auto& K : {cubic(), quintic(), e8()}) {
        auto G = compute_bigF(*K);
        CHECK(G.F % 32 == 0);
        CHECK(G.F == G.two_power * G.f * G.abs_disc);
        CHECK(is_squarefree(G.f));
    }
}

TEST_CASE("reduction mod 8 is a ring map") {
    Rng rng(9);
    auto K = quintic();
    for (int i = 0; i < 100; ++i) {
        auto a = random_element(*K, rng, 100), b = random_element(*K, rng, 100);
        auto ab = K->mul(a, b);
        FieldElement a8 = K->zero(), b8 = K->zero();
        for (int j = 0; j < K->n(); ++j) {
            a8[j] = mod8(a).residues[j];
            b8[j] = mod8(b).residues[j];
        }
        CHECK(mod8(K->mul(a8, b8)) == mod8(ab));
        CHECK(mod8(K->add(a8, b8)) == mod8(K->add(a, b)));
    }
}
