"""Shared helpers: independent oracles built on sympy, plus small fixtures."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import sympy
from sympy.polys.matrices import DomainMatrix

from modlie.exact import GF, QQ


def sympy_domain(F):
    return sympy.GF(F.p) if F.kind == "prime" else sympy.QQ


def to_domain_matrix(F, A):
    A = np.asarray(A)
    dom = sympy_domain(F)
    rows = [[dom(int(x)) if F.kind == "prime" else dom(Fraction(x).numerator, Fraction(x).denominator)
             for x in row] for row in A]
    return DomainMatrix(rows, A.shape, dom)


def oracle_rank(F, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return to_domain_matrix(F, A).rank()


def oracle_rref(F, A):
    """(R as python ints/Fractions, pivots) computed by sympy."""
    R, piv = to_domain_matrix(F, A).rref()
    out = []
    for row in R.to_Matrix().tolist():
        if F.kind == "prime":
            out.append([int(x) % F.p for x in row])
        else:
            out.append([Fraction(int(x.p), int(x.q)) for x in row])
    return out[:len(piv)], list(piv)


def oracle_lie_rank_h2(L) -> int:
    """dim H^2(L,F) from dense sympy ranks of d1 and d2 written out by hand.

    Cochains are indexed by i<j pairs; d1(f)(a,b) = -f([a,b]) and
    d2(phi)(a,b,c) = -phi([a,b],c) + phi([a,c],b) - phi([b,c],a).
    """
    n, F = L.dim, L.F
    T = L.T
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pidx = {pr: k for k, pr in enumerate(pairs)}

    def phi_col(x, c):
        # row vector (over pair coordinates) of phi(x, e_c) for x given by coefficients
        row = [0] * len(pairs)
        for a in range(n):
            if x[a] == 0 or a == c:
                continue
            i, j, s = (a, c, 1) if a < c else (c, a, -1)
            row[pidx[(i, j)]] += s * x[a]
        return row

    d1 = [[-T[a, b, k] for k in range(n)] for (a, b) in pairs]
    d2 = []
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                r1 = phi_col(T[a, b], c)
                r2 = phi_col(T[a, c], b)
                r3 = phi_col(T[b, c], a)
                d2.append([-x + y - z for x, y, z in zip(r1, r2, r3)])
    r1 = oracle_rank(F, F.array(d1)) if d1 else 0
    r2 = oracle_rank(F, F.array(d2)) if d2 else 0
    return len(pairs) - r2 - r1


@pytest.fixture
def F5():
    return GF(5)


@pytest.fixture
def F7():
    return GF(7)


@pytest.fixture
def Q():
    return QQ


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
