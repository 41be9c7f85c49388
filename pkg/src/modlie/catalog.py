"""Named constructors for the algebras used throughout the package.

``make(name, **params)`` and ``make_builtin("rvirasoro?p=5")`` return either a
``LieAlgebra`` (finite-dimensional, modular or classical) or a
``PartialGradedAlgebra`` (a degree window of an infinite-dimensional graded
algebra over Q).
"""

from __future__ import annotations

from fractions import Fraction
from urllib.parse import parse_qsl

import numpy as np

from .exact import GF, QQ, Subspace
from .exact.fields import Field
from .lie import LieAlgebra, center, derived_subalgebra, quotient, subalgebra

DIMENSION_CAP = 130


class CatalogError(ValueError):
    pass


def _field(p) -> Field:
    if p in (None, 0, "0", "", "Q", "QQ"):
        return QQ
    return GF(int(p))


# -- classical -------------------------------------------------------------


def sl(n: int, p=None) -> LieAlgebra:
    """sl_n with basis E_ij (i != j, row-major) followed by H_k = E_kk - E_{k+1,k+1}."""
    F = _field(p)
    n = int(n)
    if n < 2:
        raise CatalogError("sl(n) needs n >= 2")
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    labels = [f"E{i + 1}{j + 1}" for i, j in off] + [f"H{k + 1}" for k in range(n - 1)]
    dim = len(labels)
    index = {ij: t for t, ij in enumerate(off)}
    mats = []
    for i, j in off:
        M = np.zeros((n, n), dtype=object)
        M[i, j] = 1
        mats.append(M)
    for k in range(n - 1):
        M = np.zeros((n, n), dtype=object)
        M[k, k], M[k + 1, k + 1] = 1, -1
        mats.append(M)

    def coords(M):
        out = {}
        for (i, j), t in index.items():
            if M[i, j]:
                out[t] = M[i, j]
        csum = 0
        for k in range(n - 1):
            csum += M[k, k]
            if csum:
                out[len(off) + k] = csum
        return out

    brackets = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            C = mats[a].dot(mats[b]) - mats[b].dot(mats[a])
            c = coords(C)
            if c:
                brackets[(a, b)] = c
    name = f"sl({n})" if F.kind == "rational" else f"sl({n},{F.p})"
    return LieAlgebra(F, dim, brackets, labels, name=name)


def psl(n: int, p=None) -> LieAlgebra:
    """sl_n modulo its center (the scalar matrices when p divides n)."""
    L = sl(n, p)
    name = "p" + L.name
    Z = center(L)
    if Z.is_zero():
        return LieAlgebra(L.F, L.dim, labels=L.labels, name=name, tensor=L.T)
    Lq, _ = quotient(L, Z, name=name)
    return Lq


# -- rank-one Witt family ----------------------------------------------------


def witt(p: int) -> LieAlgebra:
    """W(1,1): basis e_{-1}, ..., e_{p-2} with [e_m, e_n] = (n - m) e_{m+n}."""
    F = GF(p)
    idx = list(range(-1, p - 1))
    pos = {m: t for t, m in enumerate(idx)}
    brackets = {}
    for a, m in enumerate(idx):
        for b in range(a + 1, len(idx)):
            n_ = idx[b]
            if -1 <= m + n_ <= p - 2 and (n_ - m) % p:
                brackets[(a, b)] = {pos[m + n_]: n_ - m}
    return LieAlgebra(F, p, brackets, [f"e{m}" for m in idx], name=f"witt({p})")


def rvirasoro(p: int) -> LieAlgebra:
    """Restricted Virasoro algebra: W(1,1) plus central z, with
    [e_m, e_n] = (1/6)(n-1)n(n+1) z whenever m + n = p."""
    F = GF(p)
    idx = list(range(-1, p - 1))
    pos = {m: t for t, m in enumerate(idx)}
    z = p
    brackets = {}
    for a, m in enumerate(idx):
        for b in range(a + 1, len(idx)):
            n_ = idx[b]
            if -1 <= m + n_ <= p - 2:
                if (n_ - m) % p:
                    brackets[(a, b)] = {pos[m + n_]: n_ - m}
            elif m + n_ == p:
                c = F(Fraction((n_ - 1) * n_ * (n_ + 1), 6))
                if c:
                    brackets[(a, b)] = {z: c}
    return LieAlgebra(F, p + 1, brackets, [f"e{m}" for m in idx] + ["z"], name=f"rvirasoro({p})")


def abelian(n: int, p=None) -> LieAlgebra:
    return LieAlgebra(_field(p), n, {}, name=f"abelian({n})")


# -- Cartan type via the forms engine ------------------------------------------


def _derived(L: LieAlgebra, times: int, name: str) -> LieAlgebra:
    for _ in range(times):
        D = derived_subalgebra(L)
        L = subalgebra(L, D, name=name) if not D.is_full() else L
    L.name = name
    return L


def jacobson_witt(r: int, p: int, cap: int = DIMENSION_CAP) -> LieAlgebra:
    from .forms import subalgebra_basis

    return subalgebra_basis("W", int(r), GF(p), cap=cap)[1]


def special_d1(r: int, p: int, cap: int = DIMENSION_CAP) -> LieAlgebra:
    from .forms import subalgebra_basis

    L = subalgebra_basis("S", int(r), GF(p), cap=cap)[1]
    return _derived(L, 1, f"S({r},1)^(1) p={p}")


def hamiltonian_d2(r: int, p: int, cap: int = DIMENSION_CAP) -> LieAlgebra:
    from .forms import subalgebra_basis

    L = subalgebra_basis("H", int(r), GF(p), cap=cap)[1]
    return _derived(L, 2, f"H({2 * int(r)},1)^(2) p={p}")


def contact_d1(r: int, p: int, cap: int = DIMENSION_CAP) -> LieAlgebra:
    from .forms import subalgebra_basis

    L = subalgebra_basis("K", int(r), GF(p), cap=cap)[1]
    return _derived(L, 1, f"K({2 * int(r) + 1},1)^(1) p={p}")


def melikian(p: int = 5):
    raise CatalogError("melikian is an optional constructor and is not implemented")


# -- registry -----------------------------------------------------------------


def _windows():
    from . import graded

    return {
        "witt2_window": lambda N: graded.witt2_window(int(N)),
        "virasoro_window": lambda N: graded.virasoro_window(int(N)),
        "onesided_witt_window": lambda r=1, N=4: graded.cartan_window("W", int(r), int(N)),
        "special_window": lambda r=2, N=4: graded.cartan_window("S", int(r), int(N)),
        "hamiltonian_window": lambda r=1, N=4: graded.cartan_window("H", int(r), int(N)),
        "contact_window": lambda r=1, N=4: graded.cartan_window("K", int(r), int(N)),
    }


_MODULAR = {
    "sl": lambda n, p=None: sl(int(n), p),
    "psl": lambda n, p=None: psl(int(n), p),
    "witt": lambda p: witt(int(p)),
    "rvirasoro": lambda p: rvirasoro(int(p)),
    "abelian": lambda n, p=None: abelian(int(n), p),
    "jacobson_witt": lambda r, p: jacobson_witt(int(r), int(p)),
    "special_d1": lambda r, p: special_d1(int(r), int(p)),
    "hamiltonian_d2": lambda r, p: hamiltonian_d2(int(r), int(p)),
    "contact_d1": lambda r, p: contact_d1(int(r), int(p)),
    "melikian": lambda p=5: melikian(int(p)),
}


def names() -> list[str]:
    return sorted(list(_MODULAR) + list(_windows()))


def make(name: str, **params):
    table = dict(_MODULAR)
    table.update(_windows())
    if name not in table:
        raise CatalogError(f"unknown algebra {name!r}; known: {', '.join(names())}")
    try:
        return table[name](**params)
    except TypeError as exc:
        raise CatalogError(f"bad parameters for {name}: {exc}") from exc


def parse_builtin(spec: str) -> tuple[str, dict]:
    """Split ``"builtin:rvirasoro?p=5"`` (prefix optional) into name and params."""
    if spec.startswith("builtin:"):
        spec = spec[len("builtin:"):]
    name, _, query = spec.partition("?")
    params = dict(parse_qsl(query, keep_blank_values=False, strict_parsing=bool(query)))
    return name, params


def make_builtin(spec: str):
    name, params = parse_builtin(spec)
    return make(name, **params)
