#include "common.hpp"

#include <algorithm>
#include <set>

using namespace spinlab;
using namespace spinlab::testing;

TEST_CASE("generators of rational and prime ideals") {
    for (auto& K : {cubic(), quintic(), e8()}) {
        auto g = short_generator(principal_ideal(K->from_int(15), *K), *K);
        CHECK(abs(K->norm(g)) == abs(K->norm(K->from_int(15))));
        FieldElement q;
        CHECK(exact_quotient(g, K->from_int(15), *K, q));
        CHECK(abs(K->norm(q)) == 1);
    }
    auto E = e8();
    for (auto& sp : split_primes(*E, 3, 10000))
        for (auto& P : sp.orbit) {
            auto L = prime_ideal_lattice(P);
            auto pi = short_generator(L, *E);
            CHECK(abs(E->norm(pi)) == Int((unsigned long)sp.p));
            CHECK(ideal_contains(L, pi));
            CHECK(principal_ideal(pi, *E) == L);
        }
}

TEST_CASE("lattice that is not an ideal has no generator") {
    auto K = cubic();
    // index-2 sublattice not stable under multiplication by theta
    IntMatrix rows{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    IdealLattice L = ideal_from_rows(rows, 3, 0);
    CHECK_THROWS_AS(short_generator(L, *K, 2), Error);
}

TEST_CASE("total positivity") {
    auto K = cubic();
    Rng rng(2);
    for (int i = 0; i < 500; ++i) {
        auto a = random_element(*K, rng, 30);
        if (a.is_zero()) continue;
        auto b = make_totally_positive(a, *K);
        CHECK(K->sign_mask(b) == 0u);
        FieldElement q;
        CHECK(exact_quotient(b, a, *K, q));
        CHECK(abs(K->norm(q)) == 1);
        CHECK(make_totally_positive(b, *K) == b);
    }
    auto one = K->one();
    CHECK(make_totally_positive(K->neg(one), *K) == one);
}

TEST_CASE("domain reduction") {
    Rng rng(6);
    for (auto& K : {cubic(), quintic(), e8()}) {
        for (int i = 0; i < 200; ++i) {
            auto a = random_element(*K, rng, 20);
            if (a.is_zero()) continue;
            if (K->totally_real()) a = make_totally_positive(a, *K);
            auto r = reduce_to_domain(a, *K);
            for (double v : r.log_vector) {
                CHECK(v >= 0.0);
                CHECK(v < 1.0);
            }
            CHECK(reduce_to_domain(r.element, *K).element == r.element);
            // u^2 a reduces to the same element
            auto u = random_unit(*K, rng, 2, false);
            auto b = K->mul(K->mul(u, u), a);
            CHECK(reduce_to_domain(b, *K).element == r.element);
        }
        // units land on torsion, at the centre of the domain
        const auto& tors = K->torsion_elements();
        for (auto& u : K->units()) {
            auto w = K->totally_real() ? K->mul(u, u) : u;
            auto r = reduce_to_domain(w, *K);
            CHECK(std::find(tors.begin(), tors.end(), r.element) != tors.end());
            for (double v : r.log_vector) CHECK(v == doctest::Approx(0.5));
        }
    }
}

TEST_CASE("enumeration matches the ideal-side oracle") {
    for (auto& K : {cubic(), quintic(), e8()}) {
        auto a = enumerate_principal_odd_ideals(1000, *K);
        auto b = principal_ideals_bruteforce(1000, *K);
        REQUIRE(a.size() == b.size());
        std::set<std::string> keys;
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].ideal == b[i].ideal);
            CHECK(principal_ideal(a[i].generator, *K) == a[i].ideal);
            CHECK(keys.insert(a[i].ideal.key()).second);
            CHECK(a[i].ideal.norm % 2 == 1);
        }
        CHECK(enumerate_principal_odd_ideals(1, *K).empty());
    }
    CHECK(enumerate_principal_odd_ideals(1000, *cubic()).size() == 336);
    CHECK_THROWS_AS(enumerate_principal_odd_ideals(300000, *cubic(), 200000), Error);
}
