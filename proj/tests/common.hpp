#pragma once

#include <doctest.h>

#include "spinlab/experiments.hpp"

namespace spinlab::testing {

inline FieldPtr cubic() {
    static FieldPtr K = load_preset("cubic9");
    return K;
}
inline FieldPtr quintic() {
    static FieldPtr K = load_preset("quintic11");
    return K;
}
inline FieldPtr e8() {
    static FieldPtr K = load_preset("E8");
    return K;
}

// S = {sigma} for the cubic field, {sigma, sigma^2} for the quintic, {r} for E.
inline std::vector<int> default_S(const Field& K) {
    if (K.n() == 3) return {automorphism_of_order(K, 3)};
    if (K.n() == 5) {
        int s = automorphism_of_order(K, 5);
        return {s, K.compose(s, s)};
    }
    return {automorphism_of_order(K, 4)};
}

inline FieldElement random_element(const Field& K, Rng& rng, long bound) {
    FieldElement a = K.zero();
    for (int i = 0; i < K.n(); ++i) a[i] = (long)rng.range(-bound, bound);
    return a;
}

// Random unit; with torsion = false a product of fundamental units only.
inline FieldElement random_unit(const Field& K, Rng& rng, int max_exp = 3, bool torsion = true) {
    const auto& tors = K.torsion_elements();
    FieldElement u = torsion ? tors[rng.below(tors.size())] : K.one();
    for (size_t j = 0; j < K.units().size(); ++j) {
        int e = (int)rng.range(-max_exp, max_exp);
        FieldElement b = e >= 0 ? K.units()[j] : unit_inverse((int)j, K);
        for (int q = 0; q < std::abs(e); ++q) u = K.mul(u, b);
    }
    return u;
}

}  // namespace spinlab::testing
