#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinlab/algebra.hpp"

namespace spinlab {

// Positive definite binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
    i64 a = 1, b = 0, c = 1;
    i64 disc() const { return b * b - 4 * a * c; }
    bool is_reduced() const;
    bool is_primitive() const;
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const;
    std::string str() const;
};

QuadForm reduce(QuadForm f);
QuadForm identity_form(i64 D);
QuadForm inverse(const QuadForm& f);
// Dirichlet composition followed by reduction. Throws DiscriminantMismatch.
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm form_pow(const QuadForm& f, u64 e);
u64 form_order(const QuadForm& f, u64 bound);

bool is_fundamental_discriminant(i64 D);
// All reduced primitive forms of discriminant D < 0.
std::vector<QuadForm> reduced_forms(i64 D);
// Number of reduced primitive forms, looping a <= sqrt(|D|/3). Throws
// NotFundamental.
u64 class_number(i64 D);

// h(-4p) for p = 1 mod 4 by writing the reduced forms (a, 2b', c) as
// a c = b'^2 + p and counting divisors; spf must cover p + p/3.
u64 class_number_minus4p(u64 p, const std::vector<std::uint32_t>& spf);

struct ClassData {
    u64 p = 0;
    i64 D = 0;
    u64 h = 0;
    u64 two_part = 1;
    int rk[5] = {0, 0, 0, 0, 0};  // rk[k] for 2^k, k = 1..4
    int split_in_E = -1;          // -1 when not computed
};

ClassData class_data(u64 p, u64 h);
// Throws WrongResidueClass unless p = 1 mod 4; ConfigError unless p prime.
int two_power_rank(u64 p, int k);
// The 2-Sylow subgroup of Cl(-4p) is cyclic: some form has order equal to
// the 2-part of h. Returns that form's order.
u64 two_sylow_generator_order(u64 p, QuadForm* witness = nullptr);

struct EightRankBits {
    bool split_in_E = false;
    bool eight_divides = false;
};
// E is the preset field used for the splitting test.
EightRankBits eight_rank_governing_check(u64 p, const Field& E);

// h(-4p) for each p (each p = 1 mod 4), in parallel.
std::vector<u64> class_numbers_minus4p(const std::vector<u64>& primes, int threads = 1);

std::string class_csv_header();
std::string class_csv_row(const ClassData& d);

}  // namespace spinlab
