#include "spinlab/classgroup.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "spinlab/primes.hpp"

namespace spinlab {

namespace {

i64 floordiv(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 posmod(i128 a, i64 m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return (i64)r;
}

// (g, x, y) with x a + y b = g = gcd(a, b) >= 0.
void ext_gcd(i64 a, i64 b, i64& g, i64& x, i64& y) {
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = floordiv(a, b);
        i64 t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    g = a;
    x = x0;
    y = y0;
}

}  // namespace

bool QuadForm::is_reduced() const {
    if (!(std::llabs(b) <= a && a <= c)) return false;
    if ((std::llabs(b) == a || a == c) && b < 0) return false;
    return true;
}

bool QuadForm::is_primitive() const { return std::gcd(std::gcd(a, std::llabs(b)), c) == 1; }

bool QuadForm::operator<(const QuadForm& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

std::string QuadForm::str() const {
    std::ostringstream o;
    o << "(" << a << "," << b << "," << c << ")";
    return o.str();
}

QuadForm reduce(QuadForm f) {
    i64 D = f.disc();
    for (;;) {
        if (!(-f.a < f.b && f.b <= f.a)) {
            i64 q = floordiv(f.a - f.b, 2 * f.a);
            f.b += 2 * f.a * q;
            f.c = (f.b * f.b - D) / (4 * f.a);
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

QuadForm identity_form(i64 D) {
    i64 b0 = D & 1 ? 1 : 0;
    return QuadForm{1, b0, (b0 * b0 - D) / 4};
}

QuadForm inverse(const QuadForm& f) { return reduce(QuadForm{f.a, -f.b, f.c}); }

QuadForm compose(const QuadForm& f1, const QuadForm& f2) {
    if (f1.disc() != f2.disc()) throw Error(ErrorKind::DiscriminantMismatch, f1.str() + " and " + f2.str());
    QuadForm x = f1, y = f2;
    if (x.a > y.a) std::swap(x, y);
    i64 a1 = x.a, b1 = x.b, a2 = y.a, b2 = y.b, c2 = y.c;
    i64 s = (b1 + b2) / 2, n = b2 - s;
    i64 y1, d;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = a1;
    } else {
        i64 u, v;
        ext_gcd(a2, a1, d, u, v);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        ext_gcd(s, d, d1, x2, y2);
        y2 = -y2;
    }
    i64 v1 = a1 / d1, v2 = a2 / d1;
    i64 r = posmod((i128)y1 * y2 * n - (i128)x2 * c2, v1);
    i64 b3 = b2 + 2 * v2 * r;
    i64 a3 = v1 * v2;
    i64 c3 = (i64)(((i128)c2 * d1 + (i128)r * (b2 + (i128)v2 * r)) / v1);
    return reduce(QuadForm{a3, b3, c3});
}

QuadForm form_pow(const QuadForm& f, u64 e) {
    QuadForm r = identity_form(f.disc()), b = f;
    while (e) {
        if (e & 1) r = compose(r, b);
        b = compose(b, b);
        e >>= 1;
    }
    return r;
}

u64 form_order(const QuadForm& f, u64 bound) {
    QuadForm id = identity_form(f.disc()), g = reduce(f);
    for (u64 k = 1; k <= bound; ++k) {
        if (g == id) return k;
        g = compose(g, f);
    }
    return 0;
}

bool is_fundamental_discriminant(i64 D) {
    auto squarefree = [](i64 m) { return is_squarefree(Int((long)std::llabs(m))); };
    if (D == 0 || D == 1) return false;
    i64 r = ((D % 4) + 4) % 4;
    if (r == 1) return squarefree(D);
    if (r != 0) return false;
    i64 m = D / 4;
    i64 rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && squarefree(m);
}

std::vector<QuadForm> reduced_forms(i64 D) {
    if (D >= 0) throw Error(ErrorKind::NotFundamental, "discriminant must be negative");
    std::vector<QuadForm> out;
    i64 A = (i64)std::sqrt((long double)(-D) / 3) + 1;
    for (i64 a = 1; a <= A; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (((b - D) & 1) != 0) continue;
            i64 num = b * b - D;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            QuadForm f{a, b, c};
            if (f.is_reduced() && f.is_primitive()) out.push_back(f);
        }
    }
    return out;
}

u64 class_number(i64 D) {
    if (!is_fundamental_discriminant(D) || D >= 0)
        throw Error(ErrorKind::NotFundamental, std::to_string(D) + " is not a negative fundamental discriminant");
    return reduced_forms(D).size();
}

u64 class_number_minus4p(u64 p, const std::vector<std::uint32_t>& spf) {
    // Reduced forms of discriminant -4p have b = 2b' even, |b| <= a <= c and
    // a c = b'^2 + p.
    u64 h = 0;
    std::vector<std::pair<u64, int>> fac;
    std::vector<u64> divs;
    for (u64 bp = 0; 3 * bp * bp <= p; ++bp) {
        u64 N = bp * bp + p;
        if (N >= spf.size()) throw Error(ErrorKind::CeilingExceeded, "smallest prime factor table too small");
        fac.clear();
        for (u64 m = N; m > 1;) {
            u64 q = spf[m];
            int e = 0;
            while (m % q == 0) {
                m /= q;
                ++e;
            }
            fac.push_back({q, e});
        }
        divs.assign(1, 1);
        for (auto [q, e] : fac) {
            size_t k = divs.size();
            u64 pw = 1;
            for (int j = 1; j <= e; ++j) {
                pw *= q;
                for (size_t i = 0; i < k; ++i) divs.push_back(divs[i] * pw);
            }
        }
        u64 b = 2 * bp;
        for (u64 a : divs) {
            u64 c = N / a;
            if (a < b || a > c || a == 0) continue;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            ++h;
            if (b > 0 && b != a && a != c) ++h;  // (a, -b, c) is reduced as well
        }
    }
    return h;
}

ClassData class_data(u64 p, u64 h) {
    ClassData d;
    d.p = p;
    d.D = -4 * (i64)p;
    d.h = h;
    while (h % (2 * d.two_part) == 0) d.two_part *= 2;
    for (int k = 1; k <= 4; ++k) d.rk[k] = d.two_part % (1ULL << k) == 0 ? 1 : 0;
    return d;
}

namespace {

void check_minus4p(u64 p) {
    if (!is_prime_u64(p)) throw Error(ErrorKind::ConfigError, std::to_string(p) + " is not prime");
    if (p % 4 != 1) throw Error(ErrorKind::WrongResidueClass, std::to_string(p) + " is not 1 mod 4");
}

}  // namespace

int two_power_rank(u64 p, int k) {
    check_minus4p(p);
    if (k < 1 || k > 4) throw Error(ErrorKind::ConfigError, "k must lie in 1..4");
    u64 h = class_number(-4 * (i64)p);
    return class_data(p, h).rk[k];
}

u64 two_sylow_generator_order(u64 p, QuadForm* witness) {
    check_minus4p(p);
    i64 D = -4 * (i64)p;
    auto forms = reduced_forms(D);
    u64 h = forms.size();
    u64 t = 1;
    while (h % (2 * t) == 0) t *= 2;
    u64 best = 1;
    for (auto& f : forms) {
        QuadForm g = form_pow(f, h / t);
        u64 o = 1;
        QuadForm id = identity_form(D);
        for (QuadForm x = g; !(x == id); x = compose(x, x)) o *= 2;
        if (o > best) {
            best = o;
            if (witness) *witness = g;
        }
        if (best == t) break;
    }
    return best;
}

EightRankBits eight_rank_governing_check(u64 p, const Field& E) {
    check_minus4p(p);
    EightRankBits r;
    r.split_in_E = splits_completely(p, E);
    r.eight_divides = class_number(-4 * (i64)p) % 8 == 0;
    return r;
}

std::vector<u64> class_numbers_minus4p(const std::vector<u64>& primes, int threads) {
    u64 top = 0;
    for (u64 p : primes) {
        check_minus4p(p);
        top = std::max(top, p);
    }
    auto spf = spf_table((std::uint32_t)(top + top / 3 + 2));
    std::vector<u64> out(primes.size());
    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (size_t i; (i = next++) < primes.size();) out[i] = class_number_minus4p(primes[i], spf);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return out;
}

std::string class_csv_header() { return "p,h,two_part,rk2,rk4,rk8,rk16,split_in_E"; }

std::string class_csv_row(const ClassData& d) {
    std::ostringstream o;
    o << d.p << "," << d.h << "," << d.two_part << "," << d.rk[1] << "," << d.rk[2] << "," << d.rk[3] << "," << d.rk[4]
      << ",";
    if (d.split_in_E >= 0) o << d.split_in_E;
    return o.str();
}

}  // namespace spinlab
