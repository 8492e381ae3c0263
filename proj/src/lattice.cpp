#include "spinlab/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "spinlab/error.hpp"

namespace spinlab {

namespace {

void reduce_mod(IntVec& v, const Int& D, int upto) {
    for (int j = 0; j < upto; ++j) mpz_fdiv_r(v[j].get_mpz_t(), v[j].get_mpz_t(), D.get_mpz_t());
}

// a <- a - q b
void axpy(IntVec& a, const Int& q, const IntVec& b) {
    for (size_t j = 0; j < a.size(); ++j)
        if (b[j] != 0) mpz_submul(a[j].get_mpz_t(), q.get_mpz_t(), b[j].get_mpz_t());
}

}  // namespace

IntMatrix hnf(const IntMatrix& rows_in, int n, const Int& D) {
    std::vector<IntVec> rows;
    for (auto& r : rows_in) {
        if ((int)r.size() != n) throw Error(ErrorKind::StructuralFailure, "hnf: row length");
        IntVec v = r;
        if (D != 0) reduce_mod(v, D, n);
        rows.push_back(std::move(v));
    }
    if (D != 0)
        for (int j = 0; j < n; ++j) {
            IntVec v(n, 0);
            v[j] = D;
            rows.push_back(std::move(v));
        }
    IntMatrix H(n);
    for (int k = n - 1; k >= 0; --k) {
        std::vector<size_t> act;
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i][k] != 0) act.push_back(i);
        if (act.empty()) throw Error(ErrorKind::StructuralFailure, "hnf: lattice not of full rank");
        while (act.size() > 1) {
            size_t best = 0;
            for (size_t t = 1; t < act.size(); ++t)
                if (mpz_cmpabs(rows[act[t]][k].get_mpz_t(), rows[act[best]][k].get_mpz_t()) < 0) best = t;
            size_t piv = act[best];
            std::vector<size_t> next{piv};
            Int q;
            for (size_t t = 0; t < act.size(); ++t) {
                if (t == best) continue;
                IntVec& r = rows[act[t]];
                mpz_fdiv_q(q.get_mpz_t(), r[k].get_mpz_t(), rows[piv][k].get_mpz_t());
                axpy(r, q, rows[piv]);
                if (D != 0) reduce_mod(r, D, k);
                if (r[k] != 0) next.push_back(act[t]);
            }
            act = next;
        }
        IntVec p = std::move(rows[act[0]]);
        rows.erase(rows.begin() + act[0]);
        if (p[k] < 0)
            for (auto& x : p) x = -x;
        if (D != 0) reduce_mod(p, D, k);
        H[k] = std::move(p);
    }
    Int q;
    for (int i = 0; i < n; ++i)
        for (int j = i - 1; j >= 0; --j) {
            mpz_fdiv_q(q.get_mpz_t(), H[i][j].get_mpz_t(), H[j][j].get_mpz_t());
            if (q != 0) axpy(H[i], q, H[j]);
        }
    return H;
}

bool hnf_contains(const IntMatrix& H, const IntVec& v) {
    int n = (int)H.size();
    IntVec w = v;
    Int q;
    for (int k = n - 1; k >= 0; --k) {
        if (w[k] == 0) continue;
        if (!mpz_divisible_p(w[k].get_mpz_t(), H[k][k].get_mpz_t())) return false;
        mpz_divexact(q.get_mpz_t(), w[k].get_mpz_t(), H[k][k].get_mpz_t());
        axpy(w, q, H[k]);
    }
    return true;
}

Int hnf_det(const IntMatrix& H) {
    Int d = 1;
    for (size_t i = 0; i < H.size(); ++i) d *= H[i][i];
    return d;
}

IntMatrix hnf_sum(const IntMatrix& A, const IntMatrix& B) {
    IntMatrix rows = A;
    rows.insert(rows.end(), B.begin(), B.end());
    Int D = gcd(hnf_det(A), hnf_det(B));
    return hnf(rows, (int)A.size(), D);
}

IntMatrix echelon(IntMatrix rows) {
    if (rows.empty()) return rows;
    int m = (int)rows[0].size();
    IntMatrix out;
    std::vector<int> pivcol;
    Int q;
    for (int c = 0; c < m && !rows.empty(); ++c) {
        std::vector<size_t> act;
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i][c] != 0) act.push_back(i);
        if (act.empty()) continue;
        while (act.size() > 1) {
            size_t best = 0;
            for (size_t t = 1; t < act.size(); ++t)
                if (mpz_cmpabs(rows[act[t]][c].get_mpz_t(), rows[act[best]][c].get_mpz_t()) < 0) best = t;
            size_t piv = act[best];
            std::vector<size_t> next{piv};
            for (size_t t = 0; t < act.size(); ++t) {
                if (t == best) continue;
                IntVec& r = rows[act[t]];
                mpz_fdiv_q(q.get_mpz_t(), r[c].get_mpz_t(), rows[piv][c].get_mpz_t());
                axpy(r, q, rows[piv]);
                if (r[c] != 0) next.push_back(act[t]);
            }
            act = next;
        }
        IntVec p = std::move(rows[act[0]]);
        rows.erase(rows.begin() + act[0]);
        if (p[c] < 0)
            for (auto& x : p) x = -x;
        out.push_back(std::move(p));
        pivcol.push_back(c);
    }
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t k = 0; k < i; ++k) {
            int c = pivcol[i];
            mpz_fdiv_q(q.get_mpz_t(), out[k][c].get_mpz_t(), out[i][c].get_mpz_t());
            if (q != 0) axpy(out[k], q, out[i]);
        }
    return out;
}

IntMatrix intersect_with_full(const IntMatrix& A, const IntMatrix& H) {
    int r = (int)A.size();
    if (r == 0) return {};
    int n = (int)A[0].size();
    IntMatrix rows;
    for (int i = 0; i < r; ++i) {
        IntVec v = A[i];
        v.resize(n + r, 0);
        v[n + i] = 1;
        rows.push_back(v);
    }
    for (auto& h : H) {
        IntVec v = h;
        v.resize(n + r, 0);
        rows.push_back(v);
    }
    IntMatrix E = echelon(rows);
    IntMatrix out;
    for (auto& e : E) {
        bool zero_head = true;
        for (int j = 0; j < n; ++j)
            if (e[j] != 0) zero_head = false;
        if (!zero_head) continue;
        IntVec x(n, 0);
        for (int i = 0; i < r; ++i)
            if (e[n + i] != 0)
                for (int j = 0; j < n; ++j) x[j] += e[n + i] * A[i][j];
        out.push_back(x);
    }
    return out;
}

long double qform(const RealMatrix& G, const IntVec& x) {
    int n = (int)x.size();
    std::vector<long double> xv(n);
    for (int i = 0; i < n; ++i) xv[i] = x[i].get_d();
    long double s = 0;
    for (int i = 0; i < n; ++i) {
        if (xv[i] == 0) continue;
        long double t = 0;
        for (int j = 0; j < n; ++j) t += G[i][j] * xv[j];
        s += xv[i] * t;
    }
    return s;
}

namespace {

long double bil(const RealMatrix& G, const IntVec& x, const IntVec& y) {
    int n = (int)x.size();
    long double s = 0;
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        long double xi = x[i].get_d(), t = 0;
        for (int j = 0; j < n; ++j)
            if (y[j] != 0) t += G[i][j] * (long double)y[j].get_d();
        s += xi * t;
    }
    return s;
}

}  // namespace

IntMatrix lll(IntMatrix b, const RealMatrix& G) {
    int k = (int)b.size();
    if (k <= 1) return b;
    const long double delta = 0.99L;
    auto gso = [&](std::vector<std::vector<long double>>& mu, std::vector<long double>& B) {
        std::vector<std::vector<long double>> ip(k, std::vector<long double>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j <= i; ++j) ip[i][j] = ip[j][i] = bil(G, b[i], b[j]);
        mu.assign(k, std::vector<long double>(k, 0));
        B.assign(k, 0);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < i; ++j) {
                long double s = ip[i][j];
                for (int l = 0; l < j; ++l) s -= mu[j][l] * mu[i][l] * B[l];
                mu[i][j] = s / B[j];
            }
            long double s = ip[i][i];
            for (int l = 0; l < i; ++l) s -= mu[i][l] * mu[i][l] * B[l];
            B[i] = s;
        }
    };
    std::vector<std::vector<long double>> mu;
    std::vector<long double> B;
    gso(mu, B);
    int i = 1, guard = 0;
    while (i < k && guard++ < 100000) {
        for (int j = i - 1; j >= 0; --j) {
            long double r = std::round(mu[i][j]);
            if (r != 0) {
                Int q((double)r);
                axpy(b[i], q, b[j]);
                gso(mu, B);
            }
        }
        if (B[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * B[i - 1]) {
            std::swap(b[i], b[i - 1]);
            gso(mu, B);
            i = std::max(1, i - 1);
        } else {
            ++i;
        }
    }
    return b;
}

bool enumerate_short(const IntMatrix& Bas, const RealMatrix& G, long double R,
                     const std::function<bool(const IntVec&, long double)>& visit) {
    int k = (int)Bas.size();
    if (k == 0) return true;
    int n = (int)Bas[0].size();
    // Gram of the basis, then Cholesky-style decomposition q_ii, q_ij.
    std::vector<std::vector<long double>> Q(k, std::vector<long double>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j <= i; ++j) Q[i][j] = Q[j][i] = bil(G, Bas[i], Bas[j]);
    std::vector<std::vector<long double>> q(k, std::vector<long double>(k, 0));
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) q[i][j] = Q[i][j];
    }
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for (int l = i + 1; l < k; ++l)
            for (int j = l; j < k; ++j) q[l][j] -= q[l][i] * q[i][j];
    }
    std::vector<long double> T(k + 1), U(k + 1), UB(k + 1);
    std::vector<long double> x(k, 0);
    R *= 1 + 1e-12L;
    int i = k - 1;
    T[i] = R;
    U[i] = 0;
    auto bounds = [&](int l) {
        long double Z = std::sqrt(std::max(0.0L, T[l] / q[l][l]));
        UB[l] = std::floor(Z - U[l]);
        x[l] = std::ceil(-Z - U[l]) - 1;
    };
    bounds(i);
    IntVec coeff(k), vec(n);
    while (true) {
        x[i] += 1;
        if (x[i] > UB[i]) {
            ++i;
            if (i >= k) break;
            continue;
        }
        if (i > 0) {
            long double d = x[i] + U[i];
            T[i - 1] = T[i] - q[i][i] * d * d;
            --i;
            long double s = 0;
            for (int j = i + 1; j < k; ++j) s += q[i][j] * x[j];
            U[i] = s;
            bounds(i);
            continue;
        }
        // i == 0: full vector
        bool allzero = true;
        int first = -1;
        for (int j = 0; j < k; ++j)
            if (x[j] != 0) {
                allzero = false;
                first = j;
                break;
            }
        if (allzero) continue;
        if (x[first] < 0) continue;
        for (int j = 0; j < k; ++j) coeff[j] = Int((double)x[j]);
        for (int c = 0; c < n; ++c) vec[c] = 0;
        for (int j = 0; j < k; ++j)
            if (coeff[j] != 0)
                for (int c = 0; c < n; ++c) vec[c] += coeff[j] * Bas[j][c];
        if (!visit(vec, qform(G, vec))) return false;
    }
    return true;
}

}  // namespace spinlab
