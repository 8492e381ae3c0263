#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "spinlab/arith.hpp"
#include "spinlab/error.hpp"
#include "spinlab/mpreal.hpp"
#include "spinlab/polymod.hpp"

namespace spinlab {

// Coordinates with respect to the integral basis omega_0 = 1, omega_1, ...
struct FieldElement {
    std::vector<Int> coords;

    FieldElement() = default;
    explicit FieldElement(std::vector<Int> c) : coords(std::move(c)) {}
    size_t size() const { return coords.size(); }
    const Int& operator[](size_t i) const { return coords[i]; }
    Int& operator[](size_t i) { return coords[i]; }
    bool is_zero() const;
    std::string str() const;  // "a0 a1 ... a_{n-1}"
    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.coords == b.coords; }
    friend bool operator<(const FieldElement& a, const FieldElement& b);
};

FieldElement element_from_ints(const std::vector<long>& c);

// Residues of the coordinates in [0, 8).
struct Modulus8Class {
    std::vector<int> residues;
    std::string key() const;
    friend bool operator<(const Modulus8Class& a, const Modulus8Class& b) { return a.residues < b.residues; }
    friend bool operator==(const Modulus8Class& a, const Modulus8Class& b) { return a.residues == b.residues; }
};
Modulus8Class mod8(const FieldElement& a);

struct ClassRep {
    Int norm;
    FieldElement generator;
};

struct FieldSpec {
    std::string name;
    int degree = 0;
    std::vector<Int> poly;                      // ascending, monic
    std::vector<std::vector<mpq_class>> basis;  // omega_i in powers of theta; empty means power basis
    std::vector<Int> mult_table;                // index (i * n + j) * n + k
    std::vector<std::vector<std::vector<Int>>> automorphisms;  // [s][i] = coords of s(omega_i)
    int r1 = 0, r2 = 0;
    int torsion_order = 2;
    FieldElement torsion_generator;
    std::vector<FieldElement> units;
    Int class_number = 1;
    Int discriminant = 0;
    bool unit_condition = false;
    std::vector<ClassRep> class_reps;
};

FieldSpec parse_field_spec(const std::string& json_text);
FieldSpec load_field_spec_file(const std::string& path);

struct BigFConstant {
    Int F;
    Int two_power;
    Int f;
    Int abs_disc;
};

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool unit_condition_verdict = false;
    int totally_positive_classes = 0;
    bool units_two_saturated = false;
    double regulator = 0;
    bool ok() const;
    const ValidationCheck* find(const std::string& name) const;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
    // Validates the spec and builds the derived caches. Throws StructuralFailure
    // or UnitConditionFailed.
    static FieldPtr create(FieldSpec spec);

    const FieldSpec& spec() const { return spec_; }
    const std::string& name() const { return spec_.name; }
    int n() const { return n_; }
    int r1() const { return spec_.r1; }
    int r2() const { return spec_.r2; }
    int unit_rank() const { return spec_.r1 + spec_.r2 - 1; }
    bool totally_real() const { return spec_.r2 == 0; }
    bool totally_complex() const { return spec_.r1 == 0; }
    const ValidationReport& report() const { return report_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(const Int& m) const;
    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement scale(const FieldElement& a, const Int& m) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement pow(const FieldElement& a, unsigned e) const;
    // Row i = coordinates of a * omega_i.
    std::vector<std::vector<Int>> mult_matrix(const FieldElement& a) const;
    Int norm(const FieldElement& a) const;
    Int trace(const FieldElement& a) const;
    // Exact division by a rational integer; false if some coordinate is not divisible.
    bool divide_exact(FieldElement& a, const Int& m) const;

    FieldElement apply(int s, const FieldElement& a) const;
    int identity_index() const { return identity_; }
    // Index of s o t.
    int compose(int s, int t) const { return compose_[s][t]; }
    int inverse(int s) const { return inverse_[s]; }
    int order(int s) const { return order_[s]; }

    const std::vector<std::vector<mpq_class>>& basis() const { return basis_; }
    // theta^j in omega coordinates, 0 <= j <= n.
    const std::vector<FieldElement>& theta_powers() const { return theta_pow_; }
    const Int& poly_index() const { return index_; }
    // omega_i reduced modulo p as polynomials in theta; p must not divide the
    // basis denominators.
    std::vector<Poly> basis_mod_p(u64 p) const;
    Poly poly_mod_p(u64 p) const;

    const FieldElement& torsion_generator() const { return spec_.torsion_generator; }
    int torsion_order() const { return spec_.torsion_order; }
    const std::vector<FieldElement>& units() const { return spec_.units; }
    const std::vector<FieldElement>& torsion_elements() const { return torsion_elems_; }
    // prod_j eps_j^{b_j} for the bitmask b, 2^{r_K} entries.
    const std::vector<FieldElement>& unit_square_classes() const { return usq_classes_; }

    // --- numerics -------------------------------------------------------
    // Embedding j of omega_i in long double, all n embeddings: real roots
    // ascending, then complex roots with positive imaginary part, then their
    // conjugates in the same order.
    const std::complex<long double>& omega_ld(int i, int j) const { return omega_ld_[i][j]; }
    // Values of a at all n embeddings with a rigorous-enough absolute error bound.
    std::vector<std::complex<long double>> embed_ld(const FieldElement& a, std::vector<long double>* err = nullptr) const;
    // Values at a given MPFR precision (bits).
    std::vector<Complex> embed_mp(const FieldElement& a, mpfr_prec_t prec) const;
    // Bitmask of real places where a is negative.
    unsigned sign_mask(const FieldElement& a) const;
    // Minkowski T2 Gram matrix on the integral basis.
    const std::vector<std::vector<long double>>& t2_gram() const { return t2_; }
    long double t2(const FieldElement& a) const;
    // log |a|^{d_j} at the r1 + r2 places, long double.
    std::vector<long double> log_places_ld(const FieldElement& a) const;
    // Unit log rows, r_K x (r1 + r2).
    const std::vector<std::vector<long double>>& unit_logs() const { return unit_logs_; }
    int place_weight(int j) const { return j < spec_.r1 ? 1 : 2; }

    // Sign-mask -> unit class representative making a totally positive
    // (totally real with unit condition only).
    const FieldElement* positivity_unit(unsigned mask) const;

private:
    explicit Field(FieldSpec spec);
    void build();

    FieldSpec spec_;
    int n_ = 0;
    ValidationReport report_;
    std::vector<std::vector<mpq_class>> basis_;
    std::vector<FieldElement> theta_pow_;
    Int index_ = 1;
    std::vector<std::vector<std::pair<int, Int>>> mult_sparse_;  // [(i*n+j)] -> (k, c)
    std::vector<std::vector<std::vector<Int>>> aut_;
    int identity_ = 0;
    std::vector<std::vector<int>> compose_;
    std::vector<int> inverse_, order_;
    std::vector<FieldElement> torsion_elems_, usq_classes_;
    std::vector<std::vector<std::complex<long double>>> omega_ld_;
    std::vector<std::vector<long double>> t2_;
    std::vector<std::vector<long double>> unit_logs_;
    std::map<unsigned, FieldElement> positivity_;

    mutable std::mutex mp_mutex_;
    mutable std::map<mpfr_prec_t, std::shared_ptr<std::vector<std::vector<Complex>>>> omega_mp_;
    std::shared_ptr<std::vector<std::vector<Complex>>> omega_at(mpfr_prec_t prec) const;

    friend ValidationReport validate_field_spec(const FieldSpec& spec);
};

FieldElement element_mul(const FieldElement& a, const FieldElement& b, const Field& K);
Int norm(const FieldElement& a, const Field& K);
FieldElement apply_automorphism(int i, const FieldElement& a, const Field& K);
// Runs every FieldSpec invariant. Throws StructuralFailure naming the first
// violated invariant, or UnitConditionFailed.
ValidationReport validate_field_spec(const FieldSpec& spec);
// Embeddings at the requested precision (bits, >= 53); escalates until the
// product matches the exact norm. Throws PrecisionExhausted.
std::vector<std::complex<double>> embeddings(const FieldElement& a, const Field& K, int precision = 53);
BigFConstant compute_bigF(const Field& K);

// Shipped presets: "cubic9", "quintic11", "E8".
std::vector<std::string> preset_names();
const std::string& preset_json(const std::string& name);
FieldPtr load_preset(const std::string& name);

long double to_ld(const Int& z);

}  // namespace spinlab
