"""Truncated polynomial rings, their derivations, and differential forms.

Two truncations are supported:

* ``modular(p)``: the ring F_p[x_1..x_r]/(x_i^p).  Products with an exponent
  >= p vanish, which is ordinary multiplication in that ring.
* ``window(bound, weights)``: polynomials over Q of weighted degree <= bound.
  A product that would leave the window raises ``WindowOverflow``, so an
  identity that evaluates without error is exact.

Monomials are exponent tuples; a polynomial is a dict monomial -> scalar with
no stored zeros.  Variables are numbered from 1 in labels ("x1^2 x2 d2").
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .exact import Echelon, Subspace
from .exact.fields import Field
from .exact.linalg import kernel_from_rref
from .lie import LieAlgebra


class WindowOverflow(ArithmeticError):
    """A product left the degree window."""


class DimensionCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Truncation:
    kind: str  # "modular" | "window"
    bound: int
    weights: tuple[int, ...] | None = None

    def weight(self, exps) -> int:
        w = self.weights
        return sum(exps) if w is None else sum(a * b for a, b in zip(exps, w))

    def keep(self, exps) -> bool:
        """Whether the monomial survives; raises on window overflow."""
        if self.kind == "modular":
            return all(e < self.bound for e in exps)
        if self.weight(exps) > self.bound:
            raise WindowOverflow(f"monomial {exps} exceeds weighted degree {self.bound}")
        return True


def modular(p: int) -> Truncation:
    return Truncation("modular", int(p))


def window(bound: int, weights=None) -> Truncation:
    return Truncation("window", int(bound), tuple(weights) if weights is not None else None)


def contact_weights(r: int) -> tuple[int, ...]:
    """Grading weights in 2r+1 variables: the last variable has weight 2."""
    return (1,) * (2 * r) + (2,)


class TruncPoly:
    __slots__ = ("F", "r", "trunc", "c")

    def __init__(self, F: Field, r: int, trunc: Truncation, coeffs=None):
        self.F, self.r, self.trunc = F, r, trunc
        c = {}
        for m, v in (coeffs or {}).items():
            m = tuple(m)
            if len(m) != r:
                raise ValueError(f"monomial {m} has the wrong number of variables")
            v = F(v)
            if v and trunc.keep(m):
                c[m] = v
        self.c = c

    @classmethod
    def _raw(cls, F, r, trunc, c):
        obj = cls.__new__(cls)
        obj.F, obj.r, obj.trunc, obj.c = F, r, trunc, c
        return obj

    def _like(self, c) -> "TruncPoly":
        return TruncPoly._raw(self.F, self.r, self.trunc, c)

    @classmethod
    def zero(cls, F, r, trunc):
        return cls._raw(F, r, trunc, {})

    @classmethod
    def constant(cls, F, r, trunc, value=1):
        return cls(F, r, trunc, {(0,) * r: value})

    @classmethod
    def monomial(cls, F, r, trunc, exps, coeff=1):
        return cls(F, r, trunc, {tuple(exps): coeff})

    @classmethod
    def variable(cls, F, r, trunc, i):
        e = [0] * r
        e[i] = 1
        return cls(F, r, trunc, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, TruncPoly):
            return self.c == other.c
        if other == 0:
            return not self.c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        F = self.F
        c = dict(self.c)
        for m, v in other.c.items():
            s = F(c.get(m, 0) + v)
            if s:
                c[m] = s
            else:
                c.pop(m, None)
        return self._like(c)

    def __neg__(self):
        F = self.F
        return self._like({m: F(-v) for m, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "TruncPoly":
        F = self.F
        a = F(a)
        if not a:
            return self._like({})
        return self._like({m: F(v * a) for m, v in self.c.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncPoly):
            return self.scale(other)
        F, keep = self.F, self.trunc.keep
        c = {}
        for m1, v1 in self.c.items():
            for m2, v2 in other.c.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if not keep(m):
                    continue
                s = F(c.get(m, 0) + v1 * v2)
                if s:
                    c[m] = s
                else:
                    c.pop(m, None)
        return self._like(c)

    __rmul__ = scale

    def partial(self, i: int) -> "TruncPoly":
        F = self.F
        c = {}
        for m, v in self.c.items():
            if m[i]:
                s = F(v * m[i])
                if s:
                    n = list(m)
                    n[i] -= 1
                    c[tuple(n)] = s
        return self._like(c)

    def degree(self) -> int | None:
        if not self.c:
            return None
        return max(self.trunc.weight(m) for m in self.c)

    def is_homogeneous(self) -> bool:
        return len({self.trunc.weight(m) for m in self.c}) <= 1

    def __repr__(self):
        return f"TruncPoly({self.label() or '0'})"

    def label(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for m in sorted(self.c):
            v = self.F.format(self.c[m])
            mono = monomial_label(m)
            if mono == "1":
                parts.append(v)
            else:
                parts.append(mono if v == "1" else f"{v}*{mono}")
        return " + ".join(parts)


def monomial_label(exps) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e:
            parts.append(f"x{i + 1}^{e}")
    return " ".join(parts) if parts else "1"


# -- derivations of the polynomial ring -----------------------------------------


class PolyDerivation:
    """D = sum_i f_i d_i."""

    __slots__ = ("F", "r", "trunc", "f")

    def __init__(self, components):
        components = list(components)
        if not components:
            raise ValueError("a derivation needs at least one component")
        self.f = components
        p0 = components[0]
        self.F, self.r, self.trunc = p0.F, p0.r, p0.trunc
        if len(components) != self.r:
            raise ValueError(f"{len(components)} components in {self.r} variables")

    @classmethod
    def basis_element(cls, F, r, trunc, exps, i, coeff=1) -> "PolyDerivation":
        comps = [TruncPoly.zero(F, r, trunc) for _ in range(r)]
        comps[i] = TruncPoly.monomial(F, r, trunc, exps, coeff)
        return cls(comps)

    @classmethod
    def zero(cls, F, r, trunc):
        return cls([TruncPoly.zero(F, r, trunc) for _ in range(r)])

    def apply(self, g: TruncPoly) -> TruncPoly:
        out = TruncPoly.zero(self.F, self.r, self.trunc)
        for i, fi in enumerate(self.f):
            if fi:
                d = g.partial(i)
                if d:
                    out = out + fi * d
        return out

    def __add__(self, other):
        return PolyDerivation([a + b for a, b in zip(self.f, other.f)])

    def __sub__(self, other):
        return PolyDerivation([a - b for a, b in zip(self.f, other.f)])

    def __neg__(self):
        return PolyDerivation([-a for a in self.f])

    def scale(self, a):
        return PolyDerivation([x.scale(a) for x in self.f])

    def __eq__(self, other):
        return isinstance(other, PolyDerivation) and all(a == b for a, b in zip(self.f, other.f))

    def is_zero(self) -> bool:
        return not any(self.f)

    def terms(self):
        """Pairs ((exps, i), coeff)."""
        for i, fi in enumerate(self.f):
            for m, v in fi.c.items():
                yield (m, i), v

    def degree(self) -> int | None:
        """Graded degree: weight of the coefficient minus the weight of d_i."""
        w = self.trunc.weights or (1,) * self.r
        degs = {self.trunc.weight(m) - w[i] for (m, i), _ in self.terms()}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("derivation is not homogeneous")
        return degs.pop()

    def label(self) -> str:
        parts = []
        for (m, i), v in sorted(self.terms(), key=lambda t: t[0]):
            mono = monomial_label(m)
            s = f"d{i + 1}" if mono == "1" else f"{mono} d{i + 1}"
            c = self.F.format(v)
            parts.append(s if c == "1" else f"{c}*{s}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"PolyDerivation({self.label()})"


def vf_bracket(D: PolyDerivation, E: PolyDerivation) -> PolyDerivation:
    """[D, E] with components sum_i (f_i d_i g_j - g_i d_i f_j)."""
    if D.r != E.r or D.trunc != E.trunc:
        raise ValueError("derivations over different rings")
    return PolyDerivation([D.apply(g) - E.apply(f) for f, g in zip(D.f, E.f)])


def euler_field(F, r, trunc) -> PolyDerivation:
    """h = sum_i w_i x_i d_i; ad h multiplies a homogeneous field by its degree."""
    w = trunc.weights or (1,) * r
    return PolyDerivation([TruncPoly.variable(F, r, trunc, i).scale(w[i]) for i in range(r)])


def divergence(D: PolyDerivation) -> TruncPoly:
    out = TruncPoly.zero(D.F, D.r, D.trunc)
    for i, fi in enumerate(D.f):
        out = out + fi.partial(i)
    return out


# -- differential forms -----------------------------------------------------


def _sort_sign(idx):
    """Sign of the permutation sorting ``idx`` and the sorted tuple; sign 0 on repeats."""
    idx = list(idx)
    if len(set(idx)) < len(idx):
        return 0, None
    sign = 1
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign, tuple(sorted(idx))


class DifferentialForm:
    """sum_I f_I dx_I over sorted index tuples I of length k."""

    def __init__(self, F, r, trunc, k: int, coeffs=None):
        self.F, self.r, self.trunc, self.k = F, r, trunc, k
        self.c: dict[tuple[int, ...], TruncPoly] = {}
        for I, f in (coeffs or {}).items():
            sign, J = _sort_sign(I)
            if len(I) != k or any(not 0 <= i < r for i in I):
                raise ValueError(f"bad index tuple {I} for a {k}-form in {r} variables")
            if sign:
                self._acc(J, f if sign > 0 else -f)

    def _acc(self, I, f):
        g = self.c.get(I)
        g = f if g is None else g + f
        if g:
            self.c[I] = g
        else:
            self.c.pop(I, None)

    def _like(self, k):
        return DifferentialForm(self.F, self.r, self.trunc, k)

    @classmethod
    def function(cls, f: TruncPoly) -> "DifferentialForm":
        return cls(f.F, f.r, f.trunc, 0, {(): f})

    @classmethod
    def dx(cls, F, r, trunc, *idx) -> "DifferentialForm":
        return cls(F, r, trunc, len(idx), {tuple(idx): TruncPoly.constant(F, r, trunc)})

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self.k == other.k and self.c.keys() == other.c.keys() and all(
            self.c[I] == other.c[I] for I in self.c)

    def __add__(self, other):
        if self.k != other.k:
            raise ValueError("adding forms of different degree")
        out = self._like(self.k)
        for src in (self, other):
            for I, f in src.c.items():
                out._acc(I, f)
        return out

    def __neg__(self):
        out = self._like(self.k)
        out.c = {I: -f for I, f in self.c.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def times(self, g: TruncPoly) -> "DifferentialForm":
        out = self._like(self.k)
        for I, f in self.c.items():
            out._acc(I, g * f)
        return out

    def wedge(self, other: "DifferentialForm") -> "DifferentialForm":
        out = self._like(self.k + other.k)
        for I, f in self.c.items():
            for J, g in other.c.items():
                sign, K = _sort_sign(I + J)
                if sign:
                    h = f * g
                    out._acc(K, h if sign > 0 else -h)
        return out

    def d(self) -> "DifferentialForm":
        out = self._like(self.k + 1)
        for I, f in self.c.items():
            for i in range(self.r):
                if i in I:
                    continue
                g = f.partial(i)
                if g:
                    sign, K = _sort_sign((i,) + I)
                    out._acc(K, g if sign > 0 else -g)
        return out

    def interior(self, D: PolyDerivation) -> "DifferentialForm":
        if self.k == 0:
            return DifferentialForm(self.F, self.r, self.trunc, 0)
        out = self._like(self.k - 1)
        for I, f in self.c.items():
            for s, i in enumerate(I):
                if D.f[i]:
                    h = f * D.f[i]
                    out._acc(I[:s] + I[s + 1:], h if s % 2 == 0 else -h)
        return out

    def coefficient(self, I) -> TruncPoly:
        return self.c.get(tuple(I), TruncPoly.zero(self.F, self.r, self.trunc))

    def __repr__(self):
        if not self.c:
            return f"DifferentialForm(0, k={self.k})"
        parts = []
        for I in sorted(self.c):
            dx = "^".join(f"dx{i + 1}" for i in I)
            parts.append(f"({self.c[I].label()})" + (f" {dx}" if dx else ""))
        return "DifferentialForm(" + " + ".join(parts) + ")"


def lie_derivative(D: PolyDerivation, w: DifferentialForm) -> DifferentialForm:
    """L_D(f dx_I) = D(f) dx_I + f sum_s dx_i1 ^ .. ^ d(D x_is) ^ .. ^ dx_ik."""
    out = w._like(w.k)
    for I, f in w.c.items():
        out._acc(I, D.apply(f))
        for s, i in enumerate(I):
            fi = D.f[i]
            for m in range(D.r):
                g = fi.partial(m)
                if not g:
                    continue
                J = I[:s] + (m,) + I[s + 1:]
                sign, K = _sort_sign(J)
                if sign:
                    h = f * g
                    out._acc(K, h if sign > 0 else -h)
    return out


def lie_derivative_cartan(D: PolyDerivation, w: DifferentialForm) -> DifferentialForm:
    """L_D = d i_D + i_D d."""
    if w.k == 0:
        return DifferentialForm.function(D.apply(w.coefficient(())))
    return w.interior(D).d() + w.d().interior(D)


# -- the forms cutting out S, H and K ---------------------------------------------


def volume_form(F, r, trunc) -> DifferentialForm:
    return DifferentialForm.dx(F, r, trunc, *range(r))


def symplectic_form(F, r2, trunc) -> DifferentialForm:
    """sum_j dx_j ^ dx_{j+r} in 2r variables."""
    if r2 % 2:
        raise ValueError("the symplectic form needs an even number of variables")
    r = r2 // 2
    out = DifferentialForm(F, r2, trunc, 2)
    for j in range(r):
        out = out + DifferentialForm.dx(F, r2, trunc, j, j + r)
    return out


def contact_form(F, r21, trunc) -> DifferentialForm:
    """dx_{2r+1} + sum_j (x_j dx_{j+r} - x_{j+r} dx_j) in 2r+1 variables."""
    if r21 % 2 == 0:
        raise ValueError("the contact form needs an odd number of variables")
    r = (r21 - 1) // 2
    out = DifferentialForm.dx(F, r21, trunc, 2 * r)
    for j in range(r):
        xj = TruncPoly.variable(F, r21, trunc, j)
        xjr = TruncPoly.variable(F, r21, trunc, j + r)
        out = out + DifferentialForm(F, r21, trunc, 1, {(j + r,): xj, (j,): -xjr})
    return out


def _need(D, count, what):
    if D.r != count:
        raise ValueError(f"{what} needs {count} variables, derivation has {D.r}")


def is_special(D: PolyDerivation) -> bool:
    return divergence(D).is_zero()


def preserves_volume(D: PolyDerivation) -> bool:
    return lie_derivative(D, volume_form(D.F, D.r, D.trunc)).is_zero()


def is_hamiltonian(D: PolyDerivation) -> bool:
    if D.r % 2:
        raise ValueError(f"hamiltonian membership needs an even number of variables, got {D.r}")
    return lie_derivative(D, symplectic_form(D.F, D.r, D.trunc)).is_zero()


def contact_multiplier(D: PolyDerivation) -> tuple[bool, TruncPoly | None]:
    """(member, g) with L_D(w) = g w for the contact form w.

    The dx_{2r+1} coefficient of w is 1, so g can only be the dx_{2r+1}
    coefficient of L_D(w); membership is whether that g works everywhere.
    """
    if D.r % 2 == 0:
        raise ValueError(f"contact membership needs an odd number of variables, got {D.r}")
    w = contact_form(D.F, D.r, D.trunc)
    Lw = lie_derivative(D, w)
    g = Lw.coefficient((D.r - 1,))
    if (Lw - w.times(g)).is_zero():
        return True, g
    return False, None


def membership_defect(kind: str, D: PolyDerivation):
    """A form (or function) that vanishes exactly when D lies in the subalgebra."""
    if kind == "W":
        return DifferentialForm(D.F, D.r, D.trunc, 0)
    if kind == "S":
        return DifferentialForm.function(divergence(D))
    if kind == "H":
        return lie_derivative(D, symplectic_form(D.F, D.r, D.trunc))
    if kind == "K":
        w = contact_form(D.F, D.r, D.trunc)
        Lw = lie_derivative(D, w)
        return Lw - w.times(Lw.coefficient((D.r - 1,)))
    raise ValueError(f"unknown subalgebra kind {kind!r}")


def variable_count(kind: str, r: int) -> int:
    return {"W": r, "S": r, "H": 2 * r, "K": 2 * r + 1}[kind]


# -- bases ----------------------------------------------------------------------


def solve_membership(kind: str, monos: list[PolyDerivation]) -> np.ndarray:
    """RREF basis (rows, coordinates on ``monos``) of the members in span(monos)."""
    F = monos[0].F
    M = len(monos)
    if kind == "W":
        return F.eye(M)
    keys: dict = {}
    cols = []
    for D in monos:
        defect = membership_defect(kind, D)
        col = {}
        for I, f in defect.c.items():
            for m, v in f.c.items():
                col[keys.setdefault((I, m), len(keys))] = v
        cols.append(col)
    A = F.zeros((len(keys), M))
    for t, col in enumerate(cols):
        for k, v in col.items():
            A[k, t] = v
    ech = Echelon(F, M)
    if len(keys):
        ech.add(A)
    return kernel_from_rref(F, ech.basis, ech.pivots, M)


def combine(monos, row) -> PolyDerivation:
    out = None
    for t in np.flatnonzero(row != 0):
        term = monos[t].scale(row[t])
        out = term if out is None else out + term
    return out if out is not None else PolyDerivation.zero(monos[0].F, monos[0].r, monos[0].trunc)


def monomial_derivations(F, nv: int, trunc: Truncation, exps_iter) -> list[PolyDerivation]:
    """x^a d_i for a in ``exps_iter`` (in order) and i = 0..nv-1."""
    return [PolyDerivation.basis_element(F, nv, trunc, a, i) for a in exps_iter for i in range(nv)]


def structure_from_fields(F, basis: list[PolyDerivation], index: dict, piv: list[int],
                          pairs=None) -> np.ndarray:
    """Structure tensor of span(basis), reading coordinates at pivot monomials.

    ``index`` maps (exps, i) to the monomial coordinate, ``piv[b]`` is the pivot
    coordinate of basis element b.  Closure is checked exactly.
    """
    k = len(basis)
    T = F.zeros((k, k, k))
    piv_of = {c: b for b, c in enumerate(piv)}
    rows = [dict(((index[key], v) for key, v in D.terms())) for D in basis]
    for a, b in (pairs if pairs is not None else itertools.combinations(range(k), 2)):
        E = vf_bracket(basis[a], basis[b])
        vec = {index[key]: v for key, v in E.terms()}
        coords = {}
        for c, v in vec.items():
            if c in piv_of:
                coords[piv_of[c]] = v
        # rebuild and compare
        rebuilt = {}
        for bb, cf in coords.items():
            for c, v in rows[bb].items():
                rebuilt[c] = F(rebuilt.get(c, 0) + cf * v)
        rebuilt = {c: v for c, v in rebuilt.items() if v}
        if rebuilt != vec:
            raise ArithmeticError(f"bracket of basis elements {a}, {b} left the span")
        for bb, cf in coords.items():
            T[a, b, bb] = cf
            T[b, a, bb] = F(-cf)
    return T


def subalgebra_basis(kind: str, r: int, F: Field, cap: int = 130, N: int | None = None):
    """Basis and bracket of W, S, H or K in r (resp. 2r, 2r+1) variables.

    Over F_p the result is (list of PolyDerivation, LieAlgebra) for the
    truncated ring.  Over Q pass the window ``N``; the result is a degree
    window (see ``graded.cartan_window``).
    """
    if kind not in ("W", "S", "H", "K"):
        raise ValueError(f"unknown subalgebra kind {kind!r}")
    if F.kind != "prime":
        if N is None:
            raise ValueError("over Q a degree window N is required")
        from .graded import cartan_window

        A = cartan_window(kind, r, N)
        return A.fields, A
    p = F.p
    nv = variable_count(kind, r)
    trunc = modular(p)
    ambient = nv * p ** nv
    if kind == "W" and ambient > cap:
        raise DimensionCapExceeded(f"W({r},1) at p={p} has dimension {ambient} > cap {cap}")
    if ambient > 40 * cap:
        raise DimensionCapExceeded(f"ambient dimension {ambient} too large for cap {cap}")
    exps = list(itertools.product(range(p), repeat=nv))
    monos = monomial_derivations(F, nv, trunc, exps)
    index = {(a, i): t for t, (a, i) in enumerate((a, i) for a in exps for i in range(nv))}
    K = solve_membership(kind, monos)
    if K.shape[0] > cap:
        raise DimensionCapExceeded(f"{kind} subalgebra has dimension {K.shape[0]} > cap {cap}")
    basis = [combine(monos, row) for row in K]
    piv = [int(np.flatnonzero(row != 0)[0]) for row in K]
    T = structure_from_fields(F, basis, index, piv)
    names = {"W": f"W({r},1)", "S": f"S({r},1)", "H": f"H({2 * r},1)", "K": f"K({2 * r + 1},1)"}
    L = LieAlgebra(F, len(basis), labels=[D.label() for D in basis], name=f"{names[kind]} p={p}", tensor=T)
    return basis, L


def subalgebra_subspace(kind: str, r: int, F: Field) -> Subspace:
    """Members of the truncated W as a subspace of monomial coordinates (over F_p)."""
    p = F.p
    nv = variable_count(kind, r)
    exps = list(itertools.product(range(p), repeat=nv))
    monos = monomial_derivations(F, nv, modular(p), exps)
    return Subspace(F, len(monos), solve_membership(kind, monos), _canonical=True)
