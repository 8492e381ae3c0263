#pragma once

#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace spinlab {

// Minimal RAII wrapper around mpfr_t; every value carries its own precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(long double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_ld(v_, x, MPFR_RNDN); }
    Real(const mpz_class& z, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
    Real(const mpq_class& q, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_ld() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }

    friend Real operator+(const Real& a, const Real& b) { Real r(a.prec()); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r(a.prec()); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r(a.prec()); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r(a.prec()); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    Real operator-() const { Real r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
    Real& operator+=(const Real& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }

    Real abs() const { Real r(prec()); mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }
    Real log() const { Real r(prec()); mpfr_log(r.v_, v_, MPFR_RNDN); return r; }
    Real exp() const { Real r(prec()); mpfr_exp(r.v_, v_, MPFR_RNDN); return r; }
    Real sqrt() const { Real r(prec()); mpfr_sqrt(r.v_, v_, MPFR_RNDN); return r; }
    Real floor() const { Real r(prec()); mpfr_floor(r.v_, v_); return r; }
    mpz_class to_mpz() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }

private:
    mpfr_t v_;
};

struct Complex {
    Real re, im;
    explicit Complex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Real norm2() const { return re * re + im * im; }
    Real abs() const { return norm2().sqrt(); }
};

}  // namespace spinlab
