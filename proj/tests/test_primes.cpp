#include "common.hpp"

using namespace spinlab;
using namespace spinlab::testing;

namespace {

int count_roots(const Field& K, u64 p) {
    int c = 0;
    for (u64 x = 0; x < p; ++x) {
        Int v = 0;
        for (int i = K.n(); i >= 0; --i) v = v * (long)x + K.spec().poly[i];
        if (mod_u64(v, p) == 0) ++c;
    }
    return c;
}

}  // namespace

TEST_CASE("cubic decomposition types") {
    auto K = cubic();
    auto inert = factor_rational_prime(5, *K);
    REQUIRE(inert.size() == 1);
    CHECK(inert[0].f == 3);
    CHECK(hnf_det(inert[0].hnf) == 125);
    for (u64 p : primes_up_to(600)) {
        if (p <= 3) continue;
        auto P = factor_rational_prime(p, *K);
        bool split = p % 9 == 1 || p % 9 == 8;
        CHECK(split == (P.size() == 3));
        CHECK(count_roots(*K, p) == (split ? 3 : 0));
        Int prod = 1;
        for (auto& Q : P) {
            CHECK(hnf_det(Q.hnf) == Q.norm());
            prod *= Q.norm();
        }
        CHECK(prod == Int((unsigned long)(p * p * p)));
    }
    CHECK_THROWS_AS(factor_rational_prime(3, *K), Error);
    CHECK_THROWS_AS(factor_rational_prime(2, *K), Error);
}

TEST_CASE("residue maps") {
    Rng rng(21);
    for (auto& K : {cubic(), quintic(), e8()}) {
        for (u64 p : {41ul, 43ul, 89ul, 113ul}) {
            if (compute_bigF(*K).abs_disc % p == 0) continue;
            for (auto& P : factor_rational_prime(p, *K)) {
                auto x = random_element(*K, rng, 50);
                CHECK(residue_map(K->scale(x, Int((unsigned long)p)), P).is_zero());
                for (int i = 0; i < 100; ++i) {
                    FieldElement m = K->zero();
                    for (auto& row : P.hnf) {
                        long c = (long)rng.range(-5, 5);
                        for (int j = 0; j < K->n(); ++j) m[j] += c * row[j];
                    }
                    CHECK(residue_map(m, P).is_zero());
                    CHECK(in_prime(m, P));
                }
                for (int i = 0; i < 50; ++i) {
                    auto a = random_element(*K, rng, 40), b = random_element(*K, rng, 40);
                    CHECK(residue_map(K->mul(a, b), P) == residue_map(a, P) * residue_map(b, P));
                }
                if (P.f == 1) CHECK(residue_f1(K->theta_powers()[1], P) == P.root);
            }
        }
    }
}

TEST_CASE("split primes of E") {
    auto E = e8();
    CHECK_FALSE(splits_completely(17, *E));
    long split = 0, total = 0;
    for (u64 p : primes_up_to(1000000)) {
        if (p == 2) continue;
        ++total;
        if (splits_completely(p, *E)) {
            ++split;
            CHECK(p % 8 == 1);
        }
    }
    double d = (double)split / total;
    CHECK(d > 0.125 * 0.95);
    CHECK(d < 0.125 * 1.05);
}

TEST_CASE("split prime stream") {
    auto K = cubic();
    SplitPrimeStream st(K, 100000);
    SplitPrime sp;
    long count = 0;
    u64 last = 0;
    while (st.next(sp)) {
        CHECK(sp.orbit.size() == 3);
        CHECK(sp.p > last);
        last = sp.p;
        ++count;
    }
    long expect = 0;
    for (u64 p : primes_up_to(100000))
        if (p > 3 && count_roots(*K, p) == 3) ++expect;
    CHECK(count == expect);
    SplitPrimeStream empty(K, 16);
    CHECK_FALSE(empty.next(sp));
}

TEST_CASE("Galois action permutes each orbit") {
    for (auto& K : {cubic(), quintic(), e8()}) {
        auto sps = split_primes(*K, 3, 400);
        REQUIRE_FALSE(sps.empty());
        for (auto& sp : sps) {
            for (int s = 0; s < K->n(); ++s)
                for (int i = 0; i < K->n(); ++i) {
                    int j = K->compose(s, i);
                    // the image of every lattice row lies in orbit[j]
                    for (auto& row : sp.orbit[i].hnf) CHECK(in_prime(K->apply(s, FieldElement(row)), sp.orbit[j]));
                    CHECK(conjugate_index(sp.orbit, s, i, *K) == j);
                }
        }
    }
}
