#include "spinlab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace spinlab {

using json = nlohmann::json;
using cld = std::complex<long double>;

// ---------------------------------------------------------------------------
// elements

bool FieldElement::is_zero() const {
    for (auto& c : coords)
        if (c != 0) return false;
    return true;
}

std::string FieldElement::str() const {
    std::string s;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ' ';
        s += coords[i].get_str();
    }
    return s;
}

bool operator<(const FieldElement& a, const FieldElement& b) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
}

FieldElement element_from_ints(const std::vector<long>& c) {
    FieldElement e;
    for (long v : c) e.coords.emplace_back(v);
    return e;
}

std::string Modulus8Class::key() const {
    std::string s;
    for (int r : residues) s += char('0' + r);
    return s;
}

Modulus8Class mod8(const FieldElement& a) {
    Modulus8Class m;
    for (auto& c : a.coords) m.residues.push_back((int)mod_u64(c, 8));
    return m;
}

long double to_ld(const Int& z) {
    if (z.fits_slong_p()) return (long double)z.get_si();
    long e;
    double d = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::ldexp((long double)d, (int)e);
}

// ---------------------------------------------------------------------------
// small exact linear algebra

namespace {

Int bareiss_det(std::vector<std::vector<Int>> m) {
    int n = (int)m.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

bool invert_rational(std::vector<std::vector<mpq_class>> a, std::vector<std::vector<mpq_class>>& inv) {
    int n = (int)a.size();
    inv.assign(n, std::vector<mpq_class>(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (a[r][c] != 0) {
                p = r;
                break;
            }
        if (p < 0) return false;
        std::swap(a[c], a[p]);
        std::swap(inv[c], inv[p]);
        mpq_class piv = a[c][c];
        for (int j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            mpq_class k = a[r][c];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= k * a[c][j];
                inv[r][j] -= k * inv[c][j];
            }
        }
    }
    return true;
}

mpq_class det_rational(std::vector<std::vector<mpq_class>> a) {
    int n = (int)a.size();
    mpq_class d = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (a[r][c] != 0) {
                p = r;
                break;
            }
        if (p < 0) return 0;
        if (p != c) {
            std::swap(a[c], a[p]);
            d = -d;
        }
        d *= a[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            mpq_class k = a[r][c] / a[c][c];
            for (int j = c; j < n; ++j) a[r][j] -= k * a[c][j];
        }
    }
    return d;
}

// Polynomial product modulo the monic defining polynomial, rational coefficients.
std::vector<mpq_class> polymul_mod(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                                   const std::vector<Int>& f) {
    int n = (int)f.size() - 1;
    std::vector<mpq_class> r(2 * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i + j] += a[i] * b[j];
    for (int d = 2 * n - 1; d >= n; --d) {
        if (r[d] == 0) continue;
        mpq_class c = r[d];
        for (int k = 0; k <= n; ++k) r[d - n + k] -= c * mpq_class(f[k]);
    }
    r.resize(n);
    return r;
}

[[noreturn]] void structural(const std::string& what) { throw Error(ErrorKind::StructuralFailure, what); }

Int json_int(const json& v) {
    if (v.is_string()) return parse_int(v.get<std::string>());
    if (v.is_number_integer()) return Int((long)v.get<long long>());
    throw Error(ErrorKind::ConfigError, "expected integer, got " + v.dump());
}

mpq_class json_rat(const json& v) {
    if (v.is_string()) {
        mpq_class q;
        if (q.set_str(v.get<std::string>(), 10) != 0) throw Error(ErrorKind::ConfigError, "bad rational " + v.dump());
        q.canonicalize();
        return q;
    }
    return mpq_class(json_int(v));
}

FieldElement json_elem(const json& v) {
    FieldElement e;
    for (auto& c : v) e.coords.push_back(json_int(c));
    return e;
}

// --- numeric roots ---------------------------------------------------------

std::vector<cld> durand_kerner(const std::vector<Int>& f) {
    int n = (int)f.size() - 1;
    std::vector<long double> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = to_ld(f[i]);
    auto eval = [&](cld z) {
        cld r = 0;
        for (int i = n; i >= 0; --i) r = r * z + c[i];
        return r;
    };
    long double bound = 1;
    for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::fabs(c[i]));
    std::vector<cld> z(n);
    cld seed(0.4L, 0.9L);
    cld w = 1;
    for (int k = 0; k < n; ++k) {
        z[k] = w * (bound / 2);
        w *= seed;
    }
    for (int it = 0; it < 2000; ++it) {
        long double change = 0;
        for (int k = 0; k < n; ++k) {
            cld den = 1;
            for (int j = 0; j < n; ++j)
                if (j != k) den *= (z[k] - z[j]);
            cld step = eval(z[k]) / den;
            z[k] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-17L) break;
    }
    // Newton polish in long double.
    for (auto& r : z) {
        for (int it = 0; it < 5; ++it) {
            cld v = 0, d = 0;
            for (int i = n; i >= 0; --i) {
                d = d * r + v;
                v = v * r + c[i];
            }
            if (std::abs(d) == 0) break;
            r -= v / d;
        }
    }
    return z;
}

Complex polish_mp(const std::vector<Int>& f, const cld& start, bool real, mpfr_prec_t prec) {
    int n = (int)f.size() - 1;
    Complex z(Real(start.real(), prec), Real(real ? 0.0L : start.imag(), prec));
    for (int it = 0; it < 64; ++it) {
        Complex v(prec), d(prec);
        for (int i = n; i >= 0; --i) {
            d = d * z + v;
            v = v * z + Complex(Real(f[i], prec), Real(prec));
        }
        Complex step = v / d;
        if (real) step.im = Real(prec);
        z = z - step;
        Real sz = step.abs();
        Real zz = z.abs();
        Real one(1.0, prec);
        if (zz < one) zz = one;
        // Converged once the step is below 2^(-prec + 8) relative.
        Real thr(std::ldexp(1.0, -(int)prec + 8), prec);
        if (sz < zz * thr) break;
    }
    return z;
}

}  // namespace

// ---------------------------------------------------------------------------
// JSON

FieldSpec parse_field_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("field spec JSON: ") + e.what());
    }
    FieldSpec s;
    try {
        s.name = j.value("name", std::string("custom"));
        s.degree = j.at("degree").get<int>();
        for (auto& c : j.at("poly")) s.poly.push_back(json_int(c));
        if (j.contains("basis"))
            for (auto& row : j["basis"]) {
                std::vector<mpq_class> r;
                for (auto& c : row) r.push_back(json_rat(c));
                s.basis.push_back(r);
            }
        int n = s.degree;
        auto& mt = j.at("mult_table");
        s.mult_table.assign((size_t)n * n * n, 0);
        if ((int)mt.size() != n) structural("mult_table shape");
        for (int a = 0; a < n; ++a) {
            if ((int)mt[a].size() != n) structural("mult_table shape");
            for (int b = 0; b < n; ++b) {
                if ((int)mt[a][b].size() != n) structural("mult_table shape");
                for (int k = 0; k < n; ++k) s.mult_table[((size_t)a * n + b) * n + k] = json_int(mt[a][b][k]);
            }
        }
        for (auto& m : j.at("automorphisms")) {
            std::vector<std::vector<Int>> mat;
            for (auto& row : m) {
                std::vector<Int> r;
                for (auto& c : row) r.push_back(json_int(c));
                mat.push_back(r);
            }
            s.automorphisms.push_back(mat);
        }
        s.r1 = j.at("signature").at(0).get<int>();
        s.r2 = j.at("signature").at(1).get<int>();
        auto& t = j.at("torsion");
        s.torsion_order = t.at("order").get<int>();
        s.torsion_generator = json_elem(t.at("generator"));
        for (auto& u : j.at("units")) s.units.push_back(json_elem(u));
        s.class_number = json_int(j.at("class_number"));
        s.discriminant = json_int(j.at("discriminant"));
        s.unit_condition = j.at("unit_condition").get<bool>();
        if (j.contains("class_reps"))
            for (auto& r : j["class_reps"]) s.class_reps.push_back({json_int(r.at("norm")), json_elem(r.at("generator"))});
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("field spec: ") + e.what());
    }
    return s;
}

FieldSpec load_field_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot open field spec " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_field_spec(ss.str());
}

// ---------------------------------------------------------------------------
// Field construction

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {}

bool ValidationReport::ok() const {
    for (auto& c : checks)
        if (!c.passed) return false;
    return true;
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
    for (auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

FieldElement Field::zero() const { return FieldElement(std::vector<Int>(n_, 0)); }
FieldElement Field::one() const {
    auto e = zero();
    e[0] = 1;
    return e;
}
FieldElement Field::from_int(const Int& m) const {
    auto e = zero();
    e[0] = m;
    return e;
}
FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = a;
    for (int i = 0; i < n_; ++i) r[i] += b[i];
    return r;
}
FieldElement Field::sub(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = a;
    for (int i = 0; i < n_; ++i) r[i] -= b[i];
    return r;
}
FieldElement Field::neg(const FieldElement& a) const {
    FieldElement r = a;
    for (auto& c : r.coords) c = -c;
    return r;
}
FieldElement Field::scale(const FieldElement& a, const Int& m) const {
    FieldElement r = a;
    for (auto& c : r.coords) c *= m;
    return r;
}

FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = zero();
    Int t;
    for (int i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (b[j] == 0) continue;
            t = a[i] * b[j];
            for (auto& [k, c] : mult_sparse_[i * n_ + j]) mpz_addmul(r[k].get_mpz_t(), t.get_mpz_t(), c.get_mpz_t());
        }
    }
    return r;
}

FieldElement Field::pow(const FieldElement& a, unsigned e) const {
    FieldElement r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

std::vector<std::vector<Int>> Field::mult_matrix(const FieldElement& a) const {
    std::vector<std::vector<Int>> m(n_, std::vector<Int>(n_, 0));
    for (int j = 0; j < n_; ++j) {
        for (int i = 0; i < n_; ++i) {
            if (a[i] == 0) continue;
            for (auto& [k, c] : mult_sparse_[i * n_ + j]) m[j][k] += a[i] * c;
        }
    }
    return m;
}

Int Field::norm(const FieldElement& a) const { return bareiss_det(mult_matrix(a)); }

Int Field::trace(const FieldElement& a) const {
    auto m = mult_matrix(a);
    Int t = 0;
    for (int i = 0; i < n_; ++i) t += m[i][i];
    return t;
}

bool Field::divide_exact(FieldElement& a, const Int& m) const {
    for (auto& c : a.coords)
        if (!mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t())) return false;
    for (auto& c : a.coords) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    return true;
}

FieldElement Field::apply(int s, const FieldElement& a) const {
    FieldElement r = zero();
    const auto& M = aut_[s];
    for (int i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n_; ++j)
            if (M[i][j] != 0) mpz_addmul(r[j].get_mpz_t(), a[i].get_mpz_t(), M[i][j].get_mpz_t());
    }
    return r;
}

std::vector<Poly> Field::basis_mod_p(u64 p) const {
    std::vector<Poly> out(n_);
    for (int i = 0; i < n_; ++i) {
        Poly q(n_, 0);
        for (int j = 0; j < n_; ++j) {
            const mpq_class& c = basis_[i][j];
            if (c == 0) continue;
            u64 num = mod_u64(c.get_num(), p), den = mod_u64(c.get_den(), p);
            q[j] = mulmod(num, invmod(den, p), p);
        }
        fp::trim(q);
        out[i] = q;
    }
    return out;
}

Poly Field::poly_mod_p(u64 p) const {
    Poly f(n_ + 1);
    for (int i = 0; i <= n_; ++i) f[i] = mod_u64(spec_.poly[i], p);
    fp::trim(f);
    return f;
}

std::vector<cld> Field::embed_ld(const FieldElement& a, std::vector<long double>* err) const {
    std::vector<cld> v(n_, 0);
    if (err) err->assign(n_, 0);
    for (int i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        long double x = to_ld(a[i]);
        for (int j = 0; j < n_; ++j) {
            v[j] += x * omega_ld_[i][j];
            if (err) (*err)[j] += std::fabs(x) * std::abs(omega_ld_[i][j]);
        }
    }
    if (err)
        for (auto& e : *err) e *= (n_ + 4) * std::ldexp(1.0L, -60);
    return v;
}

std::shared_ptr<std::vector<std::vector<Complex>>> Field::omega_at(mpfr_prec_t prec) const {
    std::lock_guard<std::mutex> lock(mp_mutex_);
    auto it = omega_mp_.find(prec);
    if (it != omega_mp_.end()) return it->second;
    std::vector<Complex> roots;
    // Recover theta at each embedding from the long double basis data:
    // theta = sum_i t_i omega_i with t = theta_pow_[1].
    std::vector<cld> theta_ld(n_, 0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) theta_ld[j] += to_ld(theta_pow_[1][i]) * omega_ld_[i][j];
    int r1 = spec_.r1, r2 = spec_.r2;
    for (int j = 0; j < n_; ++j) {
        if (j < r1) {
            roots.push_back(polish_mp(spec_.poly, theta_ld[j], true, prec));
        } else if (j < r1 + r2) {
            roots.push_back(polish_mp(spec_.poly, theta_ld[j], false, prec));
        } else {
            const Complex& u = roots[j - r2];
            roots.push_back(Complex(u.re, -u.im));
        }
    }
    auto tab = std::make_shared<std::vector<std::vector<Complex>>>();
    for (int i = 0; i < n_; ++i) {
        std::vector<Complex> row;
        for (int j = 0; j < n_; ++j) {
            Complex acc(prec), pw(Real(1.0, prec), Real(prec));
            for (int k = 0; k < n_; ++k) {
                if (basis_[i][k] != 0) {
                    Real c(basis_[i][k], prec);
                    acc = acc + Complex(pw.re * c, pw.im * c);
                }
                pw = pw * roots[j];
            }
            row.push_back(acc);
        }
        tab->push_back(row);
    }
    omega_mp_[prec] = tab;
    return tab;
}

std::vector<Complex> Field::embed_mp(const FieldElement& a, mpfr_prec_t prec) const {
    auto tab = omega_at(prec);
    std::vector<Complex> v;
    for (int j = 0; j < n_; ++j) v.emplace_back(prec);
    for (int i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        Real x(a[i], prec);
        for (int j = 0; j < n_; ++j) {
            v[j].re += x * (*tab)[i][j].re;
            v[j].im += x * (*tab)[i][j].im;
        }
    }
    return v;
}

unsigned Field::sign_mask(const FieldElement& a) const {
    std::vector<long double> err;
    auto v = embed_ld(a, &err);
    unsigned mask = 0;
    bool ambiguous = false;
    for (int j = 0; j < spec_.r1; ++j) {
        if (std::fabs(v[j].real()) <= err[j]) ambiguous = true;
        if (v[j].real() < 0) mask |= 1u << j;
    }
    if (!ambiguous) return mask;
    long double scale = 0;
    for (int j = 0; j < spec_.r1; ++j) scale = std::max(scale, err[j]);
    for (mpfr_prec_t prec = 128; prec <= 4096; prec *= 2) {
        auto w = embed_mp(a, prec);
        Real thr(scale * std::ldexp(1.0L, 60 - (int)prec + 16), prec);
        mask = 0;
        ambiguous = false;
        for (int j = 0; j < spec_.r1; ++j) {
            if (w[j].re.abs() < thr) ambiguous = true;
            if (w[j].re.sign() < 0) mask |= 1u << j;
        }
        if (!ambiguous) return mask;
    }
    throw Error(ErrorKind::PrecisionExhausted, "sign of " + a.str());
}

long double Field::t2(const FieldElement& a) const {
    auto v = embed_ld(a);
    long double s = 0;
    for (auto& z : v) s += std::norm(z);
    return s;
}

std::vector<long double> Field::log_places_ld(const FieldElement& a) const {
    auto v = embed_ld(a);
    std::vector<long double> out;
    for (int j = 0; j < spec_.r1 + spec_.r2; ++j) out.push_back(place_weight(j) * std::log(std::abs(v[j])));
    return out;
}

const FieldElement* Field::positivity_unit(unsigned mask) const {
    auto it = positivity_.find(mask);
    return it == positivity_.end() ? nullptr : &it->second;
}

void Field::build() {
    const FieldSpec& s = spec_;
    n_ = s.degree;
    int n = n_;
    if (n < 1 || (int)s.poly.size() != n + 1 || s.poly[n] != 1) structural("defining polynomial must be monic of degree n");
    if ((int)s.mult_table.size() != n * n * n) structural("mult_table shape");
    if ((int)s.automorphisms.size() != n) structural("automorphism count must equal n (Galois)");
    for (auto& m : s.automorphisms) {
        if ((int)m.size() != n) structural("automorphism matrix shape");
        for (auto& r : m)
            if ((int)r.size() != n) structural("automorphism matrix shape");
    }
    if (s.r1 < 0 || s.r2 < 0 || s.r1 + 2 * s.r2 != n) structural("signature");
    if ((int)s.units.size() != s.r1 + s.r2 - 1) structural("unit count must equal r_K");
    for (auto& u : s.units)
        if ((int)u.size() != n) structural("unit coordinate length");
    if ((int)s.torsion_generator.size() != n) structural("torsion generator length");
    for (auto& r : s.class_reps)
        if ((int)r.generator.size() != n) structural("class rep coordinate length");

    if (s.basis.empty()) {
        basis_.assign(n, std::vector<mpq_class>(n, 0));
        for (int i = 0; i < n; ++i) basis_[i][i] = 1;
    } else {
        basis_ = s.basis;
        if ((int)basis_.size() != n) structural("basis shape");
        for (auto& r : basis_)
            if ((int)r.size() != n) structural("basis shape");
    }
    for (int j = 0; j < n; ++j)
        if (basis_[0][j] != (j == 0 ? 1 : 0)) structural("first basis element must be 1");

    mult_sparse_.assign(n * n, {});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Int& c = s.mult_table[((size_t)i * n + j) * n + k];
                if (c != 0) mult_sparse_[i * n + j].push_back({k, c});
            }

    std::vector<std::vector<mpq_class>> binv;
    if (!invert_rational(basis_, binv)) structural("basis matrix singular");
    theta_pow_.clear();
    for (int j = 0; j < n; ++j) {
        FieldElement e;
        for (int i = 0; i < n; ++i) {
            if (binv[j][i].get_den() != 1) structural("theta is not integral in the given basis");
            e.coords.push_back(binv[j][i].get_num());
        }
        theta_pow_.push_back(e);
    }
    {
        FieldElement e = zero();
        for (int j = 0; j < n; ++j) e = sub(e, scale(theta_pow_[j], s.poly[j]));
        theta_pow_.push_back(e);
    }
    mpq_class d = det_rational(basis_);
    mpq_class inv_d = 1 / abs(d);
    if (inv_d.get_den() != 1) structural("basis determinant inverse is not an integer");
    index_ = inv_d.get_num();

    aut_ = s.automorphisms;
    identity_ = -1;
    for (int a = 0; a < n; ++a) {
        bool id = true;
        for (int i = 0; i < n && id; ++i)
            for (int j = 0; j < n && id; ++j) id = aut_[a][i][j] == (i == j ? 1 : 0);
        if (id) identity_ = a;
    }
    if (identity_ < 0) structural("automorphisms: identity missing");
    compose_.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            // (a o b)(x) = a(b(x)): matrix M_b * M_a.
            std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    if (aut_[b][i][k] != 0)
                        for (int j = 0; j < n; ++j) m[i][j] += aut_[b][i][k] * aut_[a][k][j];
            for (int c = 0; c < n; ++c)
                if (aut_[c] == m) compose_[a][b] = c;
            if (compose_[a][b] < 0) structural("automorphisms: not closed under composition");
        }
    inverse_.assign(n, -1);
    order_.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (compose_[a][b] == identity_) inverse_[a] = b;
        int x = a, k = 1;
        while (x != identity_ && k <= n) {
            x = compose_[a][x];
            ++k;
        }
        order_[a] = k;
        if (inverse_[a] < 0) structural("automorphisms: missing inverse");
    }

    // numerics
    auto roots = durand_kerner(s.poly);
    std::vector<cld> real_roots, upper;
    for (auto& z : roots) {
        long double scale = std::max(1.0L, std::abs(z));
        if (std::fabs(z.imag()) < 1e-9L * scale)
            real_roots.push_back(cld(z.real(), 0));
        else if (z.imag() > 0)
            upper.push_back(z);
    }
    if ((int)real_roots.size() != s.r1 || (int)upper.size() != s.r2) structural("signature does not match numeric roots");
    std::sort(real_roots.begin(), real_roots.end(), [](cld a, cld b) { return a.real() < b.real(); });
    std::sort(upper.begin(), upper.end(), [](cld a, cld b) {
        if (std::fabs(a.real() - b.real()) > 1e-12L) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<cld> ordered = real_roots;
    for (auto& z : upper) ordered.push_back(z);
    for (auto& z : upper) ordered.push_back(std::conj(z));
    omega_ld_.assign(n, std::vector<cld>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cld acc = 0, pw = 1;
            for (int k = 0; k < n; ++k) {
                if (basis_[i][k] != 0) acc += (long double)basis_[i][k].get_d() * pw;
                pw *= ordered[j];
            }
            omega_ld_[i][j] = acc;
        }
    // Refine the long double table from a 192-bit evaluation; the direct
    // sum above loses digits when the basis has large rational entries.
    {
        auto tab = omega_at(192);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) omega_ld_[i][j] = cld((*tab)[i][j].re.to_ld(), (*tab)[i][j].im.to_ld());
    }
    t2_.assign(n, std::vector<long double>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            long double acc = 0;
            for (int j = 0; j < n; ++j) acc += (omega_ld_[i][j] * std::conj(omega_ld_[k][j])).real();
            t2_[i][k] = acc;
        }
    unit_logs_.clear();
    for (auto& u : s.units) unit_logs_.push_back(log_places_ld(u));

    torsion_elems_.clear();
    FieldElement t = one();
    for (int k = 0; k < std::max(1, s.torsion_order); ++k) {
        torsion_elems_.push_back(t);
        t = mul(t, s.torsion_generator);
    }
    int r = unit_rank();
    usq_classes_.clear();
    for (unsigned b = 0; b < (1u << r); ++b) {
        FieldElement e = one();
        for (int j = 0; j < r; ++j)
            if (b >> j & 1) e = mul(e, s.units[j]);
        usq_classes_.push_back(e);
    }
    positivity_.clear();
    if (totally_real()) {
        for (int sgn = 0; sgn < 2; ++sgn)
            for (auto& v : usq_classes_) {
                FieldElement e = sgn ? neg(v) : v;
                unsigned m = sign_mask(e);
                positivity_.emplace(m, e);
            }
    }
}

// ---------------------------------------------------------------------------
// validation

namespace {

struct Checker {
    ValidationReport& rep;
    void add(const std::string& name, bool ok, const std::string& detail = "") {
        rep.checks.push_back({name, ok, detail});
        if (!ok) structural(name + (detail.empty() ? "" : ": " + detail));
    }
};

}  // namespace

static void run_validation(Field& K, ValidationReport& rep) {
    const FieldSpec& s = K.spec();
    int n = K.n();
    Checker ck{rep};
    ck.add("shape", true);

    auto basis_elem = [&](int i) {
        FieldElement e = K.zero();
        e[i] = 1;
        return e;
    };
    bool comm = true, assoc = true;
    std::vector<std::vector<FieldElement>> prod(n, std::vector<FieldElement>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) prod[i][j] = K.mul(basis_elem(i), basis_elem(j));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(prod[i][j] == prod[j][i])) comm = false;
    ck.add("mult_commutative", comm);
    for (int i = 0; i < n && assoc; ++i)
        for (int j = 0; j < n && assoc; ++j)
            for (int k = 0; k < n && assoc; ++k)
                if (!(K.mul(prod[i][j], basis_elem(k)) == K.mul(basis_elem(i), prod[j][k]))) assoc = false;
    ck.add("mult_associative", assoc);
    bool unit_ok = true;
    for (int i = 0; i < n; ++i)
        if (!(prod[0][i] == basis_elem(i))) unit_ok = false;
    ck.add("one_is_identity", unit_ok);

    bool matches = true;
    const auto& B = K.basis();
    for (int i = 0; i < n && matches; ++i)
        for (int j = 0; j < n && matches; ++j) {
            auto lhs = polymul_mod(B[i], B[j], s.poly);
            std::vector<mpq_class> rhs(n, 0);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) rhs[l] += mpq_class(prod[i][j][k]) * B[k][l];
            if (lhs != rhs) matches = false;
        }
    ck.add("mult_matches_basis", matches);

    {
        std::vector<std::vector<Int>> tr(n, std::vector<Int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) tr[i][j] = K.trace(prod[i][j]);
        Int d = bareiss_det(tr);
        ck.add("discriminant", d == s.discriminant, "computed " + d.get_str());
    }

    bool hom = true;
    for (int a = 0; a < n && hom; ++a) {
        if (!(K.apply(a, K.one()) == K.one())) hom = false;
        for (int i = 0; i < n && hom; ++i)
            for (int j = 0; j < n && hom; ++j)
                if (!(K.apply(a, prod[i][j]) == K.mul(K.apply(a, basis_elem(i)), K.apply(a, basis_elem(j))))) hom = false;
    }
    ck.add("automorphisms_ring_maps", hom);
    {
        std::set<std::vector<std::vector<Int>>> distinct(s.automorphisms.begin(), s.automorphisms.end());
        bool ok = (int)distinct.size() == n;
        for (int a = 0; a < n; ++a)
            if (n % K.order(a) != 0) ok = false;
        ck.add("automorphisms_group", ok, "order " + std::to_string(distinct.size()));
    }
    {
        bool ok = true;
        const FieldElement& th = K.theta_powers()[1];
        for (int a = 0; a < n && ok; ++a) {
            FieldElement st = K.apply(a, th), acc = K.zero(), pw = K.one();
            for (int k = 0; k <= n; ++k) {
                acc = K.add(acc, K.scale(pw, s.poly[k]));
                pw = K.mul(pw, st);
            }
            if (!acc.is_zero()) ok = false;
        }
        ck.add("automorphisms_fix_polynomial", ok);
    }

    bool norms = true;
    for (auto& u : s.units) {
        Int nu = K.norm(u);
        if (nu != 1 && nu != -1) norms = false;
    }
    ck.add("units_norm", norms);
    {
        int r = K.unit_rank();
        long double reg = 1;
        if (r > 0) {
            std::vector<std::vector<long double>> m(r, std::vector<long double>(r));
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) m[i][j] = K.unit_logs()[i][j];
            long double det = 1;
            for (int c = 0; c < r; ++c) {
                int p = c;
                for (int i = c + 1; i < r; ++i)
                    if (std::fabs(m[i][c]) > std::fabs(m[p][c])) p = i;
                std::swap(m[c], m[p]);
                if (p != c) det = -det;
                det *= m[c][c];
                if (m[c][c] == 0) break;
                for (int i = c + 1; i < r; ++i) {
                    long double f = m[i][c] / m[c][c];
                    for (int j = c; j < r; ++j) m[i][j] -= f * m[c][j];
                }
            }
            reg = std::fabs(det);
        }
        rep.regulator = (double)reg;
        ck.add("units_independent", reg > 1e-6L, "regulator " + std::to_string((double)reg));
    }
    {
        int w = s.torsion_order;
        bool ok = w >= 2 && w % 2 == 0;
        if (ok) {
            ok = K.pow(s.torsion_generator, w) == K.one();
            for (auto& [q, e] : factor_u64((u64)w))
                if (ok && K.pow(s.torsion_generator, (unsigned)(w / q)) == K.one()) ok = false;
        }
        if (K.totally_real() && w != 2) ok = false;
        ck.add("torsion_order", ok, "w = " + std::to_string(w));
    }
    {
        // Every nontrivial product t^a prod eps_j^{b_j} is shown to be a non-square
        // by a degree-one prime where it is a quadratic non-residue.
        int r = K.unit_rank();
        int classes = 1 << (r + 1);
        std::vector<bool> certified(classes, false);
        certified[0] = true;
        int remaining = classes - 1;
        std::vector<FieldElement> gens;
        gens.push_back(s.torsion_generator);
        for (auto& u : s.units) gens.push_back(u);
        Int bad = K.poly_index() * s.discriminant * 2;
        for (u64 p : primes_up_to(200000)) {
            if (remaining == 0) break;
            if (p == 2 || mpz_divisible_ui_p(bad.get_mpz_t(), p)) continue;
            auto rts = fp::roots(K.poly_mod_p(p), p);
            auto bm = K.basis_mod_p(p);
            for (u64 c : rts) {
                std::vector<int> chi;
                for (auto& g : gens) {
                    u64 v = 0;
                    for (int i = 0; i < n; ++i) v = (v + mulmod(mod_u64(g[i], p), fp::eval(bm[i], c, p), p)) % p;
                    chi.push_back(legendre_u64(v, p));
                }
                for (int m = 1; m < classes; ++m) {
                    if (certified[m]) continue;
                    int prodv = 1;
                    for (int g = 0; g < r + 1; ++g)
                        if (m >> g & 1) prodv *= chi[g];
                    if (prodv == -1) {
                        certified[m] = true;
                        --remaining;
                    }
                }
            }
        }
        rep.units_two_saturated = remaining == 0;
        ck.add("units_two_saturated", remaining == 0, std::to_string(remaining) + " classes without a certificate");
    }
    {
        if (K.totally_real()) {
            int tp = 0;
            std::set<unsigned> masks;
            for (int sg = 0; sg < 2; ++sg)
                for (auto& v : K.unit_square_classes()) {
                    unsigned m = K.sign_mask(sg ? K.neg(v) : v);
                    masks.insert(m);
                    if (m == 0) ++tp;
                }
            rep.totally_positive_classes = tp;
            rep.unit_condition_verdict = tp == 1;
        } else {
            rep.totally_positive_classes = 1 << (K.unit_rank() + 1);
            rep.unit_condition_verdict = true;
        }
        rep.checks.push_back({"unit_condition", rep.unit_condition_verdict || !s.unit_condition,
                              "verdict " + std::string(rep.unit_condition_verdict ? "true" : "false")});
        if (s.unit_condition && !rep.unit_condition_verdict)
            throw Error(ErrorKind::UnitConditionFailed, "a nontrivial totally positive unit class exists");
    }
    {
        bool ok = true;
        std::string detail;
        if (!s.class_reps.empty()) {
            if ((Int)(2 * s.class_number) != (long)s.class_reps.size()) {
                ok = false;
                detail = "expected 2h representatives";
            }
            Int f = 1;
            for (auto& r : s.class_reps) {
                if (r.norm <= 1 || mpz_even_p(r.norm.get_mpz_t())) {
                    ok = false;
                    detail = "representatives must be odd proper ideals";
                }
                if (abs(K.norm(r.generator)) != r.norm) {
                    ok = false;
                    detail = "generator norm mismatch";
                }
                f *= r.norm;
            }
            if (ok && !is_squarefree(f)) {
                ok = false;
                detail = "norm product not squarefree";
            }
        }
        ck.add("class_reps", ok, detail);
    }
}

ValidationReport validate_field_spec(const FieldSpec& spec) {
    Field K(spec);
    K.build();
    ValidationReport rep;
    run_validation(K, rep);
    return rep;
}

FieldPtr Field::create(FieldSpec spec) {
    std::shared_ptr<Field> K(new Field(std::move(spec)));
    K->build();
    run_validation(*K, K->report_);
    return K;
}

FieldElement element_mul(const FieldElement& a, const FieldElement& b, const Field& K) { return K.mul(a, b); }
Int norm(const FieldElement& a, const Field& K) { return K.norm(a); }
FieldElement apply_automorphism(int i, const FieldElement& a, const Field& K) {
    if (i < 0 || i >= K.n()) throw Error(ErrorKind::ConfigError, "automorphism index out of range");
    return K.apply(i, a);
}

std::vector<std::complex<double>> embeddings(const FieldElement& a, const Field& K, int precision) {
    if (precision < 53) throw Error(ErrorKind::ConfigError, "precision must be at least 53 bits");
    Int nm = K.norm(a);
    for (mpfr_prec_t prec = std::max(64, precision); prec <= 8192; prec *= 2) {
        auto v = K.embed_mp(a, prec);
        Complex prod(Real(1.0, prec), Real(prec));
        for (auto& z : v) prod = prod * z;
        Real exact(nm, prec);
        Real diff = (prod.re - exact).abs() + prod.im.abs();
        Real scale = exact.abs();
        Real one(1.0, prec);
        if (scale < one) scale = one;
        Real tol(std::ldexp(1.0, 1 - precision / 2), prec);
        if (!(diff > scale * tol)) {
            std::vector<std::complex<double>> out;
            for (auto& z : v) out.emplace_back(z.re.to_double(), z.im.to_double());
            return out;
        }
    }
    throw Error(ErrorKind::PrecisionExhausted, "embeddings of " + a.str());
}

BigFConstant compute_bigF(const Field& K) {
    const auto& s = K.spec();
    if (s.class_reps.empty()) throw Error(ErrorKind::ConfigError, "class representatives required for F");
    BigFConstant b;
    b.f = 1;
    for (auto& r : s.class_reps) b.f *= r.norm;
    if (!is_squarefree(b.f)) throw Error(ErrorKind::FNotSquarefree, b.f.get_str());
    unsigned long h = s.class_number.get_ui();
    b.two_power = Int(1) << (unsigned)(2 * h + 3);
    b.abs_disc = abs(s.discriminant);
    b.F = b.two_power * b.f * b.abs_disc;
    return b;
}

}  // namespace spinlab
