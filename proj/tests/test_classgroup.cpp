#include "common.hpp"

#include <set>

using namespace spinlab;
using namespace spinlab::testing;

TEST_CASE("class numbers") {
    CHECK(class_number(-4) == 1);
    CHECK(class_number(-20) == 2);
    CHECK(class_number(-23) == 3);
    CHECK(class_number(-56) == 4);
    CHECK_THROWS_AS(class_number(-12), Error);
    CHECK_THROWS_AS(class_number(-16), Error);
    auto spf = spf_table(20000);
    for (u64 p : primes_up_to(15000)) {
        if (p % 4 != 1) continue;
        u64 h = class_number(-4 * (i64)p);
        CHECK(h % 2 == 0);
        CHECK(class_number_minus4p(p, spf) == h);
    }
    auto hs = class_numbers_minus4p({5, 13, 17, 41}, 2);
    CHECK(hs == std::vector<u64>{2, 2, 4, 8});
}

TEST_CASE("group law") {
    Rng rng(51);
    for (i64 D : {-20L, -56L, -4L * 1009, -4L * 7001, -3299L, -9956L}) {
        if (!is_fundamental_discriminant(D)) continue;
        auto forms = reduced_forms(D);
        u64 h = class_number(D);
        CHECK(forms.size() == h);
        QuadForm e = identity_form(D);
        for (int i = 0; i < 200; ++i) {
            auto f = forms[rng.below(h)], g = forms[rng.below(h)], k = forms[rng.below(h)];
            CHECK(compose(compose(f, g), k) == compose(f, compose(g, k)));
            CHECK(compose(e, f) == f);
            CHECK(compose(f, inverse(f)) == e);
            CHECK(compose(f, g) == compose(g, f));
            CHECK(h % form_order(f, h) == 0);
        }
        // the small forms generate the whole group
        std::set<QuadForm> seen{e};
        std::vector<QuadForm> frontier{e};
        while (!frontier.empty()) {
            auto x = frontier.back();
            frontier.pop_back();
            for (auto& g : forms)
                if (g.a <= 12 && seen.insert(compose(x, g)).second) frontier.push_back(compose(x, g));
        }
        CHECK(seen.size() == h);
    }
    CHECK_THROWS_AS(compose(identity_form(-20), identity_form(-56)), Error);
}

TEST_CASE("two-power ranks") {
    CHECK(two_power_rank(5, 1) == 1);
    CHECK(two_power_rank(5, 2) == 0);
    CHECK(two_power_rank(17, 2) == 1);
    CHECK(two_power_rank(41, 3) == 1);
    CHECK_THROWS_AS(two_power_rank(7, 1), Error);
    for (u64 p : primes_up_to(5000)) {
        if (p % 4 != 1) continue;
        auto d = class_data(p, class_number(-4 * (i64)p));
        CHECK(d.rk[1] == 1);
        for (int k = 1; k < 4; ++k) CHECK(d.rk[k + 1] <= d.rk[k]);
        for (int k = 1; k <= 4; ++k) CHECK(d.rk[k] == two_power_rank(p, k));
        if (p < 1500) {
            QuadForm w;
            CHECK(two_sylow_generator_order(p, &w) == d.two_part);
        }
    }
}

TEST_CASE("8-rank against splitting in E") {
    auto E = e8();
    auto five = eight_rank_governing_check(5, *E);
    CHECK_FALSE(five.split_in_E);
    CHECK_FALSE(five.eight_divides);
    for (u64 p : primes_up_to(20000)) {
        if (p % 4 != 1) continue;
        auto b = eight_rank_governing_check(p, *E);
        CHECK(b.split_in_E == b.eight_divides);
        if (p % 8 != 1) CHECK_FALSE(b.split_in_E);
    }
}

TEST_CASE("class csv") {
    auto d = class_data(41, 8);
    d.split_in_E = 1;
    CHECK(class_csv_header() == "p,h,two_part,rk2,rk4,rk8,rk16,split_in_E");
    CHECK(class_csv_row(d) == "41,8,8,1,1,1,0,1");
}
