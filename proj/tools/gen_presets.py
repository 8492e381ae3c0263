#!/usr/bin/env python3
"""Generate the shipped field presets (data/presets/*.json).

Run once; the library re-validates every preset at load time.
Exact arithmetic uses fractions; mpmath is used only to search for units
and to cross-check regulators against the analytic class number formula.
"""
import itertools
import json
import sys
from fractions import Fraction as Fr

import mpmath as mp

mp.mp.dps = 50


# ---------------------------------------------------------------- polynomials over Q modulo f
def pmul(a, b, f):
    n = len(f) - 1
    r = [Fr(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            r[i + j] += x * y
    # reduce by monic f (ascending coefficients)
    for d in range(len(r) - 1, n - 1, -1):
        c = r[d]
        if c == 0:
            continue
        for k in range(n + 1):
            r[d - n + k] -= c * f[k]
    r = r[:n] + [Fr(0)] * max(0, n - len(r))
    return r


def ppow(a, e, f):
    n = len(f) - 1
    r = [Fr(1)] + [Fr(0)] * (n - 1)
    for _ in range(e):
        r = pmul(r, a, f)
    return r


def mat_inv(m):
    n = len(m)
    a = [list(row) + [Fr(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                k = a[r][c]
                a[r] = [x - k * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def vec_mat(v, m):
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0]))]


class Field:
    def __init__(self, f, basis):
        self.f = [Fr(c) for c in f]
        self.n = len(f) - 1
        self.B = [[Fr(c) for c in row] for row in basis]  # omega_i in theta powers
        self.Binv = mat_inv(self.B)

    def poly(self, coords):
        return vec_mat([Fr(c) for c in coords], self.B)

    def coords(self, poly):
        c = vec_mat(poly, self.Binv)
        assert all(x.denominator == 1 for x in c), c
        return [int(x) for x in c]

    def mul(self, a, b):
        return self.coords(pmul(self.poly(a), self.poly(b), self.f))

    def roots(self):
        return mp.polyroots([mp.mpf(c) for c in reversed([int(x) for x in self.f])], maxsteps=200, extraprec=200)

    def emb(self, coords, roots):
        p = self.poly(coords)
        return [sum(mp.mpf(c.numerator) / c.denominator * r ** j for j, c in enumerate(p)) for r in roots]

    def norm(self, coords, roots):
        v = mp.mpf(1)
        for r, e in zip(roots, self.emb(coords, roots)):
            v *= e if mp.im(r) == 0 else abs(e) ** 2
        return int(mp.nint(mp.re(v)))

    def aut(self, g):
        """Automorphism theta -> g(theta) as a matrix: row i = coords of sigma(omega_i)."""
        rows = []
        for i in range(self.n):
            acc = [Fr(0)] * self.n
            for j, c in enumerate(self.B[i]):
                if c:
                    t = ppow(g, j, self.f)
                    acc = [x + c * y for x, y in zip(acc, t)]
            rows.append(self.coords(acc))
        return rows


def order_places(roots, r1):
    real = sorted([r for r in roots if abs(mp.im(r)) < 1e-30], key=lambda r: mp.re(r))
    cplx = sorted([r for r in roots if mp.im(r) > 1e-30], key=lambda r: (mp.re(r), mp.im(r)))
    assert len(real) == r1
    return real + cplx


def log_vec(F, coords, places, r1):
    e = F.emb(coords, places)
    return [mp.log(abs(x)) if i < r1 else 2 * mp.log(abs(x)) for i, x in enumerate(e)]


def regulator(F, units, places, r1):
    L = [log_vec(F, u, places, r1)[:-1] for u in units]
    if not L:
        return mp.mpf(1)
    return abs(mp.det(mp.matrix(L)))


def search_units(F, rng, places, r1, limit=None):
    found = []
    n = F.n
    for c in itertools.product(range(-rng, rng + 1), repeat=n):
        if all(x == 0 for x in c):
            continue
        e = F.emb(list(c), places)
        v = mp.mpf(1)
        for i, x in enumerate(e):
            v *= abs(x) if i < r1 else abs(x) ** 2
        if abs(v - 1) < 1e-20:
            found.append(list(c))
    return found


def pick_units(F, cands, places, r1, rank):
    """Greedy: choose an independent subset with minimal |regulator| among candidate triples."""
    best = None
    logs = {tuple(u): log_vec(F, u, places, r1)[:-1] for u in cands}
    uniq = []
    seen = []
    for u in cands:
        lv = logs[tuple(u)]
        if all(abs(x) < 1e-20 for x in lv):
            continue  # torsion
        key = tuple(mp.nstr(abs(x), 12) for x in lv)
        if key in seen:
            continue
        seen.append(key)
        uniq.append(u)
    uniq.sort(key=lambda u: sum(abs(x) for x in logs[tuple(u)]))
    uniq = uniq[:40]
    for combo in itertools.combinations(uniq, rank):
        R = abs(mp.det(mp.matrix([logs[tuple(u)] for u in combo])))
        if R > 1e-10 and (best is None or R < best[0] - 1e-20):
            best = (R, list(combo))
    return best


def search_norm(F, target, rng, places):
    for c in itertools.product(range(-rng, rng + 1), repeat=F.n):
        if abs(F.norm(list(c), places)) == target:
            return list(c)
    raise RuntimeError("no element of norm %d" % target)


def frac_str(x):
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def dump(name, F, autos, r1, r2, torsion_order, torsion_gen, units, disc, unit_condition, reps):
    n = F.n
    mt = [[F.mul([int(i == k) for k in range(n)], [int(j == k) for k in range(n)]) for j in range(n)] for i in range(n)]
    doc = {
        "name": name,
        "degree": n,
        "poly": [str(int(c)) for c in F.f],
        "basis": [[frac_str(c) for c in row] for row in F.B],
        "mult_table": [[[str(c) for c in v] for v in row] for row in mt],
        "automorphisms": [[[str(c) for c in row] for row in a] for a in autos],
        "signature": [r1, r2],
        "torsion": {"order": torsion_order, "generator": [str(c) for c in torsion_gen]},
        "units": [[str(c) for c in u] for u in units],
        "class_number": 1,
        "discriminant": str(disc),
        "unit_condition": unit_condition,
        "class_reps": [{"norm": str(nm), "generator": [str(c) for c in g]} for nm, g in reps],
    }
    with open("data/presets/%s.json" % name, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def analytic_hR(conductor, n, disc):
    """h*R for the degree-n real subfield of Q(zeta_conductor), prime conductor or 9."""
    # even characters of order dividing n on (Z/conductor)^*; generator g
    f = conductor
    units = [a for a in range(1, f) if mp.gcd(a, f) == 1] if False else [a for a in range(1, f) if __import__("math").gcd(a, f) == 1]
    phi = len(units)
    g = next(a for a in units if len({pow(a, k, f) for k in range(phi)}) == phi)
    dlog = {pow(g, k, f): k for k in range(phi)}
    rho = mp.mpf(1)
    for j in range(1, n):
        # chi(g) = exp(2 pi i j / n) ; even since n | phi/2
        def chi(a):
            return mp.exp(2j * mp.pi * j * dlog[a % f] / n)
        tau = sum(chi(a) * mp.exp(2j * mp.pi * a / f) for a in units)
        L = -(tau / f) * sum(mp.conj(chi(a)) * mp.log(abs(1 - mp.exp(2j * mp.pi * a / f))) for a in units)
        rho *= L
    return mp.re(rho) * 2 * mp.sqrt(disc) / 2 ** n


def sign_rank(F, units, places, r1):
    vecs = []
    for u in [[-1] + [0] * (F.n - 1)] + units:
        e = F.emb(u, places)
        vecs.append([1 if mp.re(e[i]) < 0 else 0 for i in range(r1)])
    # rank over F2
    rows = [int("".join(map(str, v)), 2) for v in vecs]
    rank = 0
    for bit in reversed(range(r1)):
        piv = next((i for i, r in enumerate(rows) if r >> bit & 1), None)
        if piv is None:
            continue
        p = rows.pop(piv)
        rows = [r ^ p if r >> bit & 1 else r for r in rows]
        rank += 1
    return rank


def totally_real(name, f, g, conductor, rep_primes):
    n = len(f) - 1
    F = Field(f, [[int(i == j) for j in range(n)] for i in range(n)])
    places = order_places(F.roots(), n)
    sigma = [Fr(c) for c in g] + [Fr(0)] * (n - len(g))
    # sigma^k(theta) = g composed k times
    autos = []
    gk = [Fr(0), Fr(1)] + [Fr(0)] * (n - 2)
    for k in range(n):
        autos.append(F.aut(gk))
        # gk <- sigma(gk) = gk(g(theta))
        acc = [Fr(0)] * n
        for j, c in enumerate(gk):
            if c:
                acc = [x + c * y for x, y in zip(acc, ppow(sigma, j, F.f))]
        gk = acc
    cands = search_units(F, 2, places, n)
    R, units = pick_units(F, cands, places, n, n - 1)
    hR = analytic_hR(conductor, n, conductor ** (n - 1))
    print(name, "regulator", mp.nstr(R, 15), "analytic hR", mp.nstr(hR, 15), "units", units, file=sys.stderr)
    srank = sign_rank(F, units, places, n)
    print(name, "sign rank", srank, "of", n, file=sys.stderr)
    reps = [(p, search_norm(F, p, 2, places)) for p in rep_primes]
    dump(name, F, autos, n, 0, 2, [-1] + [0] * (n - 1), units, conductor ** (n - 1), srank == n, reps)


# ---------------------------------------------------------------- E = Q(zeta_8, sqrt(1+i))
# R-basis: zeta^j (j<4), y*zeta^j with y^2 = 1 + zeta^2.
def qz_mul(a, b):
    r = [Fr(0)] * 4
    for i in range(4):
        for j in range(4):
            k = i + j
            s = 1
            if k >= 4:
                k -= 4
                s = -1
            r[k] += s * a[i] * b[j]
    return r


def r_mul(a, b):
    a0, a1, b0, b1 = a[:4], a[4:], b[:4], b[4:]
    y2 = [Fr(1), Fr(0), Fr(1), Fr(0)]
    c0 = [x + y for x, y in zip(qz_mul(a0, b0), qz_mul(qz_mul(a1, b1), y2))]
    c1 = [x + y for x, y in zip(qz_mul(a0, b1), qz_mul(a1, b0))]
    return c0 + c1


def r_aut(a, k, s):
    """zeta -> zeta^k, y -> s*y_k."""
    def zpow(e):
        e %= 8
        v = [Fr(0)] * 4
        if e < 4:
            v[e] = Fr(1)
        else:
            v[e - 4] = Fr(-1)
        return v
    zk = [zpow(k * j) for j in range(4)]
    if k in (1, 5):
        yk = [Fr(0)] * 4 + [Fr(s), Fr(0), Fr(0), Fr(0)]
    else:
        # (zeta - zeta^3) * y / (1 + zeta^2), 1/(1+i) = (1 - i)/2
        c = qz_mul([Fr(0), Fr(1), Fr(0), Fr(-1)], [Fr(1, 2), Fr(0), Fr(-1, 2), Fr(0)])
        yk = [Fr(0)] * 4 + [s * x for x in c]
    out = [Fr(0)] * 8
    for j in range(4):
        t = zk[j] + [Fr(0)] * 4
        out = [x + a[j] * y for x, y in zip(out, t)]
        t = r_mul(zk[j] + [Fr(0)] * 4, yk)
        out = [x + a[4 + j] * y for x, y in zip(out, t)]
    return out


def field_E(rep_primes):
    h = Fr(1, 2)
    omega_R = [[Fr(int(i == j)) for j in range(8)] for i in range(6)]
    omega_R.append([h, h, h, h, h, Fr(0), h, Fr(0)])
    omega_R.append([h, h, h, h, Fr(0), h, Fr(0), h])
    theta = [Fr(0), Fr(1), Fr(0), Fr(0), Fr(1), Fr(0), Fr(0), Fr(0)]
    pw = [[Fr(1)] + [Fr(0)] * 7]
    for _ in range(8):
        pw.append(r_mul(pw[-1], theta))
    # minimal polynomial: theta^8 = sum c_j theta^j
    T = pw[:8]
    c = vec_mat(pw[8], mat_inv(T))
    f = [-x for x in c] + [Fr(1)]
    assert all(x.denominator == 1 for x in f)
    # omega_i in theta powers: omega_R * T^{-1}
    Tinv = mat_inv(T)
    B = [vec_mat(row, Tinv) for row in omega_R]
    F = Field([int(x) for x in f], B)
    places = order_places(F.roots(), 0)
    omega_Rinv = mat_inv(omega_R)

    def r_to_coords(v):
        cc = vec_mat(v, omega_Rinv)
        assert all(x.denominator == 1 for x in cc)
        return [int(x) for x in cc]

    autos = []
    for k in (1, 3, 5, 7):
        for s in (1, -1):
            autos.append([r_to_coords(r_aut(row, k, s)) for row in omega_R])
    cands = search_units(F, 1, places, 0)
    R, units = pick_units(F, cands, places, 0, 3)
    print("E poly", [int(x) for x in f], "regulator", mp.nstr(R, 15), "units", units, file=sys.stderr)
    reps = [(p, search_norm(F, p, 1, places)) for p in rep_primes]
    zeta = [0, 1, 0, 0, 0, 0, 0, 0]
    dump("E8", F, autos, 0, 4, 8, zeta, units, 2 ** 22, True, reps)


if __name__ == "__main__":
    totally_real("cubic9", [-1, -3, 0, 1], [2, 0, -1], 9, [17, 19])
    totally_real("quintic11", [1, 3, -3, -4, 1, 1], [-2, 0, 1], 11, [23, 43])
    field_E([41, 113])
