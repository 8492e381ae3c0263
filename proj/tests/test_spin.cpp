#include "common.hpp"

using namespace spinlab;
using namespace spinlab::testing;

TEST_CASE("S validity") {
    auto C = cubic(), Q = quintic();
    int s3 = automorphism_of_order(*C, 3), s5 = automorphism_of_order(*Q, 5);
    CHECK(check_S_valid({s3}, *C));
    CHECK_FALSE(check_S_valid({s3, C->inverse(s3)}, *C));
    CHECK_FALSE(check_S_valid({s3, C->compose(s3, s3)}, *C));
    CHECK(check_S_valid({s5, Q->compose(s5, s5)}, *Q));
    CHECK_FALSE(check_S_valid({}, *C));
    CHECK_FALSE(check_S_valid({s3, s3}, *C));
    CHECK_THROWS_AS(make_spin_config(*C, {s3, C->inverse(s3)}), Error);
}

TEST_CASE("spin of one generator") {
    auto K = cubic();
    int s = automorphism_of_order(*K, 3);
    CHECK(spin_sigma(s, K->one(), *K) == 1);
    CHECK(spin_sigma(s, K->from_int(15), *K) == 0);
    CHECK_THROWS_AS(spin_sigma(s, K->from_int(2), *K), Error);
    CHECK_THROWS_AS(spin_sigma(s, K->from_int(-3), *K), Error);

    Rng rng(41);
    int done = 0;
    for (auto& I : enumerate_principal_odd_ideals(3000, *K)) {
        if (done == 300) break;
        auto a = I.generator;
        auto u = random_unit(*K, rng, 3);
        auto b = K->mul(K->mul(u, u), a);
        CHECK(spin_sigma(s, b, *K) == spin_sigma(s, a, *K));
        ++done;
    }
}

TEST_CASE("pinned spins") {
    auto C = cubic();
    auto cfg = make_spin_config(*C, default_S(*C));
    auto recs = spin_stream(20, cfg, C);
    REQUIRE(recs.size() == 6);
    CHECK(recs[0].p == 17);
    CHECK(recs[0].generator == element_from_ints({3, -1, 0}));
    CHECK(recs[0].spins == std::vector<int>{1});
    CHECK(recs[0].s == 1);
    CHECK(recs[3].p == 19);
    CHECK(recs[3].s == -1);
    CHECK(spin_sigma(cfg.S[0], recs[0].generator, *C) == 1);

    auto Q = quintic();
    auto qcfg = make_spin_config(*Q, default_S(*Q));
    auto qr = spin_stream(25, qcfg, Q);
    REQUIRE(qr.size() == 5);
    CHECK(qr[0].p == 23);
    CHECK(qr[0].spins == std::vector<int>{-1, 1});
    CHECK(qr[0].s == -1);
    CHECK(joint_spin_element(qr[0].generator, qcfg, *Q) == -1);
}

TEST_CASE("joint spin and s on ideals") {
    Rng rng(42);
    for (auto& K : {cubic(), quintic(), e8()}) {
        auto cfg = make_spin_config(*K, default_S(*K));
        CHECK(s_of_ideal(principal_ideal(K->from_int(6), *K), cfg, *K) == 0);
        long bound = (long)K->torsion_elements().size() << K->units().size();
        auto ideals = enumerate_principal_odd_ideals(1500, *K);
        for (size_t i = 0; i < ideals.size() && i < 60; ++i) {
            auto g = ideals[i].generator;
            long s = s_of_generator(g, cfg, *K);
            CHECK(std::labs(s) <= bound);
            CHECK(s_of_ideal(ideals[i].ideal, cfg, *K) == s);
            if (K->totally_real()) CHECK(s == joint_spin_element(g, cfg, *K));
            if (cfg.S.size() == 1 && K->totally_real()) CHECK(joint_spin_element(g, cfg, *K) == spin_sigma(cfg.S[0], g, *K));
            for (int k = 0; k < 20; ++k) {
                auto u = random_unit(*K, rng, 3);
                CHECK(s_of_generator(K->mul(u, g), cfg, *K) == s);
            }
        }
    }
}

TEST_CASE("stream shape") {
    for (auto& K : {cubic(), quintic(), e8()}) {
        auto cfg = make_spin_config(*K, default_S(*K));
        u64 X = K->n() == 8 ? 3000 : 5000;
        auto serial = spin_stream(X, cfg, K, 1);
        auto par = spin_stream(X, cfg, K, 3);
        REQUIRE(serial.size() == par.size());
        for (size_t i = 0; i < serial.size(); ++i) {
            CHECK(serial[i].ideal_key == par[i].ideal_key);
            CHECK(serial[i].s == par[i].s);
        }
        long split = 0;
        for (u64 p : primes_up_to(X))
            if (p > 2 && compute_bigF(*K).abs_disc % p != 0 && splits_completely(p, *K)) ++split;
        CHECK((long)serial.size() == split * K->n());
        CHECK(spin_stream(10, cfg, K).empty());
    }
}

TEST_CASE("psi tables") {
    auto K = cubic();
    auto S = default_S(*K);
    auto triv = Psi::make_trivial();
    CHECK(triv(K->from_int(5), *K) == 1);
    // a -> (N(a) / 17) is a class function mod 17 | F, invariant under units
    Psi psi;
    psi.trivial = false;
    psi.modulus = 17;
    for (int a = 0; a < 17; ++a)
        for (int b = 0; b < 17; ++b)
            for (int c = 0; c < 17; ++c) {
                FieldElement x = element_from_ints({a, b, c});
                Int N = K->norm(x);
                int v = legendre(N, 17);
                if (v) psi.entries[psi.reduce(x)] = v;
            }
    auto cfg = make_spin_config(*K, S, psi);
    auto back = Psi::from_json(psi.to_json(), 3);
    CHECK(back.entries == psi.entries);
    CHECK(psi(K->from_int(17), *K) == 0);
    // a table breaking unit-square invariance
    Psi bad;
    bad.trivial = false;
    bad.modulus = 17;
    for (int a = 0; a < 17; ++a)
        for (int b = 0; b < 17; ++b)
            for (int c = 0; c < 17; ++c) bad.entries[{a, b, c}] = a < 9 ? 1 : -1;
    CHECK_THROWS_AS(make_spin_config(*K, S, bad), Error);
    Psi wrong;
    wrong.trivial = false;
    wrong.modulus = 13;
    CHECK_THROWS_AS(make_spin_config(*K, S, wrong), Error);
    CHECK_THROWS_AS(Psi::from_json("{\"entries\": []}", 3), Error);
}

TEST_CASE("delta and symmetry tables are cell constant") {
    CellProbeOptions opt;
    opt.cell_pairs = 10;
    for (auto& K : {cubic(), quintic()}) {
        auto S = default_S(*K);
        auto T = derive_delta_table(S[0], *K, false, opt);
        CHECK(T.populated_cells().size() >= 5);
        auto P = derive_phi_symmetry_table(S, *K, opt);
        CHECK(P.populated_cells().size() >= 5);
        auto rep = check_phi_bimultiplicative(S, *K, 200, 7);
        CHECK(rep.triples == 200);
        CHECK(rep.failures == 0);
    }
}

TEST_CASE("phi divides the norm and its character sums") {
    auto K = cubic();
    auto S = default_S(*K);
    Rng rng(43);
    for (int i = 0; i < 100; ++i) {
        auto b = random_odd_element(*K, rng, 8);
        auto ph = phi_element(b, S, *K);
        FieldElement q;
        CHECK(exact_quotient(K->from_int(K->norm(b)), ph, *K, q));
    }
    // the local-product sum agrees with brute force on small norms
    for (auto& I : enumerate_principal_odd_ideals(60, *K))
        CHECK(phi_character_sum(I.generator, S, *K) == phi_character_sum_bruteforce(I.generator, S, *K));
}

TEST_CASE("vanishing sums away from ramified primes") {
    auto K = cubic();
    auto S = default_S(*K);
    Int D = compute_bigF(*K).abs_disc;
    for (auto& I : enumerate_principal_odd_ideals(400, *K)) {
        if (is_squarefull(I.ideal.norm) || gcd(I.ideal.norm, D) != 1) continue;
        CHECK(phi_character_sum(I.generator, S, *K) == 0);
    }
    // N(b) = 3: the ramified prime is fixed by every automorphism
    FieldElement t = K->zero();
    bool found = false;
    for (auto& I : enumerate_principal_odd_ideals(10, *K))
        if (I.ideal.norm == 3) {
            t = I.generator;
            found = true;
        }
    REQUIRE(found);
    CHECK(phi_character_sum(t, S, *K) != 0);
}
