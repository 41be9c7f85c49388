"""Degree windows of infinite-dimensional Z-graded Lie algebras over Q.

A ``PartialGradedAlgebra`` keeps the homogeneous basis elements of degree
lo..hi and knows [x, y] only when deg x + deg y also lies in the window.
Statements proved on a window are reported as "window-certified"; they never
stand in for statements about the whole algebra unless a grading argument
says so (see ``degree_derivation_witness``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .exact import QQ, solve
from .exact.fields import Field
from . import forms


class UndefinedBracket(KeyError):
    pass


@dataclass
class PartialGradedAlgebra:
    F: Field
    labels: list[str]
    degrees: list[int]
    T: np.ndarray  # (n, n, n); entries only meaningful on defined pairs
    lo: int
    hi: int
    rule: str
    name: str = "window"
    fields: list = dc_field(default_factory=list)  # PolyDerivation per basis element, if any

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def of_degree(self, d: int) -> list[int]:
        return [i for i, e in enumerate(self.degrees) if e == d]

    def defined(self, i: int, j: int) -> bool:
        return self.lo <= self.degrees[i] + self.degrees[j] <= self.hi

    def bracket(self, i: int, j: int) -> np.ndarray:
        if not self.defined(i, j):
            raise UndefinedBracket(f"[{self.labels[i]}, {self.labels[j]}] leaves the window")
        return self.T[i, j]

    def bracket_vec(self, x, y) -> np.ndarray:
        F = self.F
        out = F.zeros(self.dim)
        for i in np.flatnonzero(np.asarray(x) != 0):
            for j in np.flatnonzero(np.asarray(y) != 0):
                out = F.normalize(out + x[i] * y[j] * self.bracket(i, j))
        return out

    def jacobi_check(self) -> dict:
        """Jacobi identity on every triple whose brackets are all defined."""
        F, deg, n = self.F, self.degrees, self.dim
        sc = {}
        for i in range(n):
            for j in range(n):
                if self.defined(i, j):
                    nz = np.flatnonzero(self.T[i, j] != 0)
                    if nz.size:
                        sc[(i, j)] = [(int(k), self.T[i, j, k]) for k in nz]

        def br2(a, b, c):
            acc = {}
            for l, x in sc.get((b, c), ()):
                for m, y in sc.get((a, l), ()):
                    acc[m] = acc.get(m, 0) + x * y
            return acc

        checked = 0
        for i, j, k in itertools.combinations(range(n), 3):
            if not (self.defined(i, j) and self.defined(j, k) and self.defined(i, k)
                    and self.lo <= deg[i] + deg[j] + deg[k] <= self.hi):
                continue
            checked += 1
            tot = br2(i, j, k)
            for part in (br2(j, k, i), br2(k, i, j)):
                for m, v in part.items():
                    tot[m] = tot.get(m, 0) + v
            if any(F(v) != 0 for v in tot.values()):
                return {"ok": False, "checked": checked, "failure": (i, j, k)}
        return {"ok": True, "checked": checked, "failure": None}


def _window_tensor(F, n):
    return F.zeros((n, n, n))


def witt2_window(N: int) -> PartialGradedAlgebra:
    """d_{-N}..d_N with [d_m, d_n] = (n - m) d_{m+n}."""
    N = _check_window(N)
    F = QQ
    idx = list(range(-N, N + 1))
    pos = {m: t for t, m in enumerate(idx)}
    T = _window_tensor(F, len(idx))
    for m, n in itertools.product(idx, idx):
        if m + n in pos:
            T[pos[m], pos[n], pos[m + n]] = F(n - m)
    return PartialGradedAlgebra(F, [f"d{m}" for m in idx], idx, T, -N, N, "(n-m) d_{m+n}",
                                name=f"witt2_window({N})")


def virasoro_coefficient(m: int, n: int, scale=Fraction(1, 12)) -> Fraction:
    """Coefficient of c in [d_m, d_n]."""
    return scale * (n - 1) * n * (n + 1) if m + n == 0 else Fraction(0)


def virasoro_window(N: int) -> PartialGradedAlgebra:
    """witt2_window(N) plus a central c with the cubic term in degree 0."""
    N = _check_window(N)
    F = QQ
    idx = list(range(-N, N + 1))
    pos = {m: t for t, m in enumerate(idx)}
    n_ = len(idx) + 1
    c = n_ - 1
    T = _window_tensor(F, n_)
    for m, n in itertools.product(idx, idx):
        if m + n in pos:
            T[pos[m], pos[n], pos[m + n]] = F(n - m)
        if m + n == 0:
            T[pos[m], pos[n], c] = virasoro_coefficient(m, n)
    return PartialGradedAlgebra(F, [f"d{m}" for m in idx] + ["c"], idx + [0], T, -N, N,
                                "(n-m) d_{m+n} + delta_{m+n,0} (n-1)n(n+1)/12 c", name=f"virasoro_window({N})")


def _check_window(N) -> int:
    N = int(N)
    if N < 3:
        raise ValueError(f"window size must be at least 3, got {N}")
    return N


def _exponents_of_weight(nv, weights, w):
    """Exponent vectors with weighted degree w, in lexicographic order."""
    out = []

    def rec(i, left, cur):
        if i == nv:
            if left == 0:
                out.append(tuple(cur))
            return
        for e in range(left // weights[i] + 1):
            cur.append(e)
            rec(i + 1, left - e * weights[i], cur)
            cur.pop()

    if w >= 0:
        rec(0, w, [])
    return sorted(out)


def cartan_window(kind: str, r: int, N: int) -> PartialGradedAlgebra:
    """Homogeneous pieces of W_r, S_r, H_2r or K_2r+1 over Q in degrees lo..N.

    Degrees are weighted: for K the last variable has weight 2, so d_{2r+1}
    sits in degree -2.  Membership conditions are homogeneous and are solved
    degree by degree.
    """
    N = _check_window(N)
    F = QQ
    nv = forms.variable_count(kind, r)
    weights = forms.contact_weights(r) if kind == "K" else (1,) * nv
    lo = -max(weights)
    wmax = max(weights)
    trunc = forms.window(N + 2 * wmax + 1, weights if kind == "K" else None)
    fields, degrees, keys = [], [], []
    for d in range(lo, N + 1):
        monos, mkeys = [], []
        for i in range(nv):
            for a in _exponents_of_weight(nv, weights, d + weights[i]):
                mkeys.append((a, i))
        mkeys.sort()
        monos = [forms.PolyDerivation.basis_element(F, nv, trunc, a, i) for a, i in mkeys]
        if not monos:
            continue
        K = forms.solve_membership(kind, monos)
        for row in K:
            fields.append(forms.combine(monos, row))
            degrees.append(d)
        keys.extend(mkeys)
    index = {k: t for t, k in enumerate(keys)}
    piv = [min(index[key] for key, _ in D.terms()) for D in fields]
    n = len(fields)
    pairs = [(a, b) for a, b in itertools.combinations(range(n), 2) if lo <= degrees[a] + degrees[b] <= N]
    T = forms.structure_from_fields(F, fields, index, piv, pairs=pairs)
    names = {"W": f"W_{r}", "S": f"S_{r}", "H": f"H_{2 * r}", "K": f"K_{2 * r + 1}"}
    return PartialGradedAlgebra(F, [D.label() for D in fields], degrees, T, lo, N, f"vector fields ({kind})",
                                name=f"{names[kind]} window [{lo},{N}]", fields=fields)


# -- window certificates --------------------------------------------------------


def degree_solution(A: PartialGradedAlgebra, top: int | None = None):
    """Solve [y, X] = deg(X) X for y in the window, X of degree -1..top.

    Returns (solution vector or None, number of equations).  Only defined
    brackets enter.  Because the algebra is graded, an equation for an output
    coordinate of degree t only involves y-components of degree t - deg X,
    which are all defined when t is in the window; so the system is a subset
    of the equations any solution in the whole algebra must satisfy, and the
    degree-0 part of such a solution would solve it.  No solution here
    therefore means no inner derivation of the whole algebra acts by degree.
    """
    F, n = A.F, A.dim
    top = A.hi - 2 if top is None else top
    rows, rhs = [], []
    for x in range(n):
        dx = A.degrees[x]
        if not -1 <= dx <= top:
            continue
        M = F.zeros((n, n))  # M[k, b] = coefficient of e_k in [e_b, X]
        for b in range(n):
            if A.defined(b, x):
                M[:, b] = A.T[b, x]
        target = F.zeros(n)
        target[x] = F(dx)
        rows.append(M)
        rhs.append(target)
    if not rows:
        return None, 0
    Aeq = np.concatenate(rows)
    beq = np.concatenate(rhs)
    return solve(F, Aeq, beq), Aeq.shape[0]


def degree_derivation_witness(kind: str, r: int, N: int) -> dict:
    """Window certificate that the degree derivation of S or H is outer."""
    if kind not in ("S", "H"):
        raise ValueError("degree derivation witnesses are provided for S and H")
    A = cartan_window(kind, r, N)
    F = A.F
    nv = forms.variable_count(kind, r)
    h = forms.euler_field(F, nv, A.fields[0].trunc)
    bad = [i for i, X in enumerate(A.fields) if forms.vf_bracket(h, X) != X.scale(A.degrees[i])]
    sol, neq = degree_solution(A, N - 2)
    return {
        "algebra": A.name,
        "dim": A.dim,
        "euler_acts_by_degree": not bad,
        "euler_failures": [A.labels[i] for i in bad],
        "equations": neq,
        "inner_solution": None if sol is None else [F.format(v) for v in sol],
        "outer": sol is None and not bad,
        "status": "window-certified" if (sol is None and not bad) else "fail",
    }


def degree_derivation_control(N: int) -> dict:
    """On the two-sided Witt window the degree derivation is ad d_0."""
    A = witt2_window(N)
    sol, neq = degree_solution(A, N - 2)
    d0 = A.index("d0")
    expected = A.F.zeros(A.dim)
    expected[d0] = 1
    found = sol is not None and np.array_equal(sol, expected)
    return {"algebra": A.name, "equations": neq,
            "solution": None if sol is None else {A.labels[i]: A.F.format(sol[i]) for i in np.flatnonzero(sol != 0)},
            "found_d0": found, "status": "window-certified" if found else "fail"}


def cocycle_failures(N: int, omega=None, limit: int = 5):
    """Triples of witt2_window(N) where omega([x,y],z) + cyclic != 0.

    ``omega(m, n)`` gives the value on (d_m, d_n); it should be antisymmetric.
    """
    omega = omega or virasoro_coefficient
    A = witt2_window(N)
    deg = A.degrees
    bad, checked = [], 0
    for i, j, k in itertools.combinations(range(A.dim), 3):
        m, n, l = deg[i], deg[j], deg[k]
        if not (A.defined(i, j) and A.defined(j, k) and A.defined(i, k)):
            continue
        checked += 1
        # [d_m, d_n] = (n - m) d_{m+n}
        tot = (n - m) * omega(m + n, l) + (l - n) * omega(n + l, m) + (m - l) * omega(l + m, n)
        if tot != 0:
            bad.append((m, n, l))
            if len(bad) >= limit:
                break
    return bad, checked


def virasoro_cocycle_checks(N: int) -> dict:
    N = _check_window(N)
    bad, checked = cocycle_failures(N)
    A = witt2_window(N)
    F = A.F
    # f with -f([d_m, d_-m]) = omega(d_m, d_-m) for m = 1, 2
    rows, rhs = [], []
    for m in (1, 2):
        rows.append(F.normalize(-A.bracket(A.index(f"d{m}"), A.index(f"d{-m}"))))
        rhs.append(virasoro_coefficient(m, -m))
    f = solve(F, np.stack(rows), F.array(rhs))
    V = virasoro_window(N)

    def br(m, n):
        return V.bracket(V.index(f"d{m}"), V.index(f"d{n}"))

    def vec(coeffs):
        v = F.zeros(V.dim)
        for lab, x in coeffs.items():
            v[V.index(lab)] = F(x)
        return v

    ident = {
        "[d0,dn] = n dn": all(np.array_equal(br(0, n), vec({f"d{n}": n})) for n in range(-N, N + 1)),
        "[d-1,d1] = 2d0": np.array_equal(br(-1, 1), vec({"d0": 2})),
        "[d-2,d2] = 4d0 + c/2": np.array_equal(br(-2, 2), vec({"d0": 4, "c": Fraction(1, 2)})),
    }
    jac = V.jacobi_check()
    return {
        "window": N,
        "cocycle": {"ok": not bad, "triples": checked, "failures": bad},
        "non_coboundary": {"ok": f is None, "values": {"omega(d1,d-1)": "0", "omega(d2,d-2)": F.format(
            virasoro_coefficient(2, -2))}},
        "identities": ident,
        "jacobi": jac,
        "status": "window-certified" if (not bad and f is None and all(ident.values()) and jac["ok"]) else "fail",
    }
