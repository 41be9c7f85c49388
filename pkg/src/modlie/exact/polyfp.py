"""Univariate polynomials over F_p as coefficient lists (lowest degree first).

Includes the characteristic polynomial of a matrix (Hessenberg reduction) and
factorisation into distinct irreducible factors (distinct-degree splitting
followed by Cantor-Zassenhaus equal-degree splitting).
"""

from __future__ import annotations

import random

import numpy as np

Poly = list  # list[int], lowest degree first, no trailing zeros


def trim(f: Poly) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f: Poly) -> int:
    return len(f) - 1


def add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def sub(f: Poly, g: Poly, p: int) -> Poly:
    return add(f, [(-c) % p for c in g], p)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def monic(f: Poly, p: int) -> Poly:
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def divmod_poly(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    g = trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k] % p
        if c:
            c = c * inv % p
            q[k - dg] = c
            for j in range(dg + 1):
                r[k - dg + j] = (r[k - dg + j] - c * g[j]) % p
    return trim(q), trim([c % p for c in r[:dg]])


def mod(f: Poly, g: Poly, p: int) -> Poly:
    return divmod_poly(f, g, p)[1]


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    f, g = trim(f), trim(g)
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p)


def powmod(f: Poly, e: int, m: Poly, p: int) -> Poly:
    result = [1]
    base = mod(f, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        e >>= 1
    return result


def charpoly(A, p: int) -> Poly:
    """Monic characteristic polynomial det(xI - A) over F_p."""
    H = [[int(x) % p for x in row] for row in np.asarray(A)]
    n = len(H)
    # reduce to upper Hessenberg form by similarity transforms
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for row in H:
                row[m], row[piv] = row[piv], row[m]
        inv = pow(H[m][m - 1], -1, p)
        for i in range(m + 1, n):
            u = H[i][m - 1] * inv % p
            if u:
                Hi, Hm = H[i], H[m]
                for j in range(n):
                    Hi[j] = (Hi[j] - u * Hm[j]) % p
                for row in H:
                    row[m] = (row[m] + u * row[i]) % p
    # characteristic polynomials of leading principal blocks
    polys: list[Poly] = [[1]]
    for k in range(n):
        nxt = mul([(-H[k][k]) % p, 1], polys[k], p)
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = prod * H[i + 1][i] % p
            if not prod:
                break
            term = [c * (prod * H[i][k] % p) % p for c in polys[i]]
            nxt = sub(nxt, term, p)
        polys.append(nxt)
    return polys[n] if polys[n] else [0]


def _equal_degree_split(f: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    if deg(f) == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(deg(f))])
        if deg(a) < 1:
            continue
        g = gcd(a, f, p)
        if 0 < deg(g) < deg(f):
            break
        b = sub(powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = gcd(b, f, p)
        if 0 < deg(g) < deg(f):
            break
    h = divmod_poly(f, g, p)[0]
    return _equal_degree_split(monic(g, p), d, p, rng) + _equal_degree_split(monic(h, p), d, p, rng)


def irreducible_factors(f: Poly, p: int, seed: int = 0) -> list[Poly]:
    """Distinct monic irreducible factors of ``f``, ordered by (degree, coefficients)."""
    f = monic(trim(f), p)
    if deg(f) < 1:
        return []
    rng = random.Random(seed)
    factors: list[Poly] = []
    rest = f
    h = [0, 1]  # x^(p^d) mod rest
    d = 0
    while deg(rest) >= 1:
        d += 1
        if 2 * d > deg(rest):
            # every factor of rest has degree >= d > deg(rest)/2: rest is irreducible
            factors.append(monic(rest, p))
            break
        h = powmod(h, p, rest, p)
        g = gcd(sub(h, [0, 1], p), rest, p)
        if deg(g) >= 1:
            found = _equal_degree_split(g, d, p, rng)
            factors.extend(found)
            for q in found:
                while True:
                    quo, r = divmod_poly(rest, q, p)
                    if r:
                        break
                    rest = quo
            if deg(rest) >= 1:
                h = mod(h, rest, p)
    return sorted(factors, key=lambda q: (len(q), q))


def evaluate_matrix(f: Poly, A: np.ndarray, p: int) -> np.ndarray:
    """f(A) by Horner's rule, entries reduced mod p."""
    n = A.shape[0]
    out = np.zeros((n, n), dtype=A.dtype)
    eye = np.eye(n, dtype=A.dtype)
    for c in reversed(f):
        out = (out @ A + c * eye) % p
    return out
