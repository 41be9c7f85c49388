"""Finite-dimensional Lie algebras given by structure constants over an exact field."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .exact import Echelon, Subspace, field_from_spec, kernel, spin
from .exact.fields import Field
from .exact.linalg import as_array, kernel_from_rref


class LieAlgebraError(ValueError):
    pass


class LieAlgebra:
    """Lie algebra with basis e_0..e_{n-1} and brackets [e_i, e_j] = sum_k c_ij^k e_k.

    ``brackets`` maps pairs ``(i, j)`` to ``{k: c}``; pairs with ``i > j`` are
    flipped with a sign, so antisymmetry holds by construction.  Pairs not
    listed bracket to zero.
    """

    def __init__(self, F: Field, dim: int, brackets=None, labels=None, name: str = "L",
                 tensor: np.ndarray | None = None):
        self.F = F
        self.dim = n = int(dim)
        self.name = name
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(n)]
        if len(self.labels) != n:
            raise LieAlgebraError(f"{len(self.labels)} labels for a {n}-dimensional algebra")
        if tensor is not None:
            T = as_array(F, tensor).reshape(n, n, n)
            if np.any(F.normalize(T + T.transpose(1, 0, 2)) != 0) or any(
                    np.any(T[i, i] != 0) for i in range(n)):
                raise LieAlgebraError("structure tensor is not antisymmetric")
        else:
            T = F.zeros((n, n, n))
            for (i, j), coeffs in (brackets or {}).items():
                if not (0 <= i < n and 0 <= j < n):
                    raise LieAlgebraError(f"bracket index ({i}, {j}) out of range")
                if i == j:
                    if any(F(c) for c in coeffs.values()):
                        raise LieAlgebraError(f"[e{i}, e{i}] must vanish")
                    continue
                sign = 1 if i < j else -1
                a, b = min(i, j), max(i, j)
                for k, c in coeffs.items():
                    if not 0 <= k < n:
                        raise LieAlgebraError(f"bracket target {k} out of range")
                    T[a, b, k] = F(T[a, b, k] + sign * F(c))
            T = F.normalize(T - T.transpose(1, 0, 2))
        T.setflags(write=False)
        self.T = T
        self._ad = None

    # -- basic structure -------------------------------------------------

    @property
    def sc(self) -> dict[tuple[int, int], dict[int, object]]:
        """Sparse structure constants on pairs i < j."""
        out = {}
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                nz = np.flatnonzero(self.T[i, j] != 0)
                if nz.size:
                    out[(i, j)] = {int(k): self.T[i, j, k] for k in nz}
        return out

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.F.zeros(self.dim)
        v[i] = 1
        return v

    def vector(self, coords) -> np.ndarray:
        v = as_array(self.F, coords).reshape(-1)
        if v.shape[0] != self.dim:
            raise LieAlgebraError(f"element of length {v.shape[0]} in a {self.dim}-dimensional algebra")
        return v

    def bracket(self, x, y) -> np.ndarray:
        x, y = self.vector(x), self.vector(y)
        F = self.F
        Ty = F.normalize(np.tensordot(self.T, y, axes=([1], [0])))  # (i, k)
        return F.normalize(x @ Ty)

    @property
    def ad_matrices(self) -> np.ndarray:
        """Array A with A[i] the matrix of ad(e_i) acting on column vectors."""
        if self._ad is None:
            A = np.ascontiguousarray(self.T.transpose(0, 2, 1))
            A.setflags(write=False)
            self._ad = A
        return self._ad

    def ad(self, x) -> np.ndarray:
        x = self.vector(x)
        return self.F.normalize(np.tensordot(x, self.ad_matrices, axes=([0], [0])))

    def is_abelian(self) -> bool:
        return not np.any(self.T != 0)

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim}, {self.F!r})"

    # -- serialisation ---------------------------------------------------

    def to_dict(self) -> dict:
        brackets = []
        for (i, j), coeffs in sorted(self.sc.items()):
            brackets.append({"i": i, "j": j, "c": {str(k): self.F.format(c) for k, c in sorted(coeffs.items())}})
        return {"name": self.name, "field": self.F.spec(), "dim": self.dim, "basis": list(self.labels),
                "brackets": brackets}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "LieAlgebra":
        try:
            F = field_from_spec(d["field"])
            n = int(d["dim"])
            labels = d.get("basis") or [f"e{i}" for i in range(n)]
            brackets = {}
            for entry in d.get("brackets", []):
                i, j = int(entry["i"]), int(entry["j"])
                if not i < j:
                    raise LieAlgebraError(f"bracket entries need i < j, got ({i}, {j})")
                if (i, j) in brackets:
                    raise LieAlgebraError(f"duplicate bracket entry ({i}, {j})")
                brackets[(i, j)] = {int(k): F.parse(str(c)) for k, c in entry["c"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, LieAlgebraError):
                raise
            raise LieAlgebraError(f"malformed structure-constant data: {exc}") from exc
        return cls(F, n, brackets, labels, name=d.get("name", "L"))

    @classmethod
    def from_json(cls, text: str) -> "LieAlgebra":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LieAlgebraError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(d)

    def same_structure(self, other: "LieAlgebra") -> bool:
        return self.F == other.F and self.dim == other.dim and np.array_equal(self.T, other.T)


@dataclass
class ValidationReport:
    ok: bool
    triples_checked: int
    failure: tuple[int, int, int] | None = None
    jacobiator: list = dc_field(default_factory=list)


def validate(L: LieAlgebra) -> ValidationReport:
    """Check the Jacobi identity on every basis triple i < j < k."""
    F, n = L.F, L.dim
    sc = {}
    for i in range(n):
        for j in range(n):
            nz = np.flatnonzero(L.T[i, j] != 0)
            if nz.size:
                sc[(i, j)] = [(int(k), L.T[i, j, k]) for k in nz]
    checked = 0

    def br2(a, b, c):
        # [e_a, [e_b, e_c]]
        acc = {}
        for l, x in sc.get((b, c), ()):
            for m, y in sc.get((a, l), ()):
                acc[m] = acc.get(m, 0) + x * y
        return acc

    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                checked += 1
                tot = br2(i, j, k)
                for m, v in br2(j, k, i).items():
                    tot[m] = tot.get(m, 0) + v
                for m, v in br2(k, i, j).items():
                    tot[m] = tot.get(m, 0) + v
                bad = {m: F(v) for m, v in tot.items() if F(v) != 0}
                if bad:
                    jac = F.zeros(n)
                    for m, v in bad.items():
                        jac[m] = v
                    return ValidationReport(False, checked, (i, j, k), [F.format(x) for x in jac])
    return ValidationReport(True, checked)


def center(L: LieAlgebra) -> Subspace:
    n = L.dim
    return kernel(L.F, L.ad_matrices.reshape(n * n, n), n)


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    n = L.dim
    return Subspace(L.F, n, L.T.reshape(n * n, n)) if n else Subspace(L.F, 0)


def is_perfect(L: LieAlgebra) -> bool:
    return derived_subalgebra(L).is_full()


def ideal_closure(L: LieAlgebra, S: Subspace) -> Subspace:
    """Smallest ideal containing S (spin S under all ad(e_i))."""
    if S.ambient_dim != L.dim:
        raise LieAlgebraError("subspace does not live in this algebra")
    if S.is_zero():
        return S
    return spin(L.F, S.basis, list(L.ad_matrices), L.dim)


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    if S.is_zero():
        return True
    F = L.F
    imgs = F.normalize(np.tensordot(L.ad_matrices, S.basis, axes=([2], [1])))  # (i, k, b)
    ech = Echelon(F, L.dim)
    ech.add(S.basis)
    return not np.any(ech.reduce(imgs.transpose(0, 2, 1).reshape(-1, L.dim)) != 0)


def _combo_label(labels, vec, F) -> str:
    nz = np.flatnonzero(vec != 0)
    if len(nz) == 1 and vec[nz[0]] == 1:
        return labels[nz[0]]
    parts = []
    for k in nz[:3]:
        c = F.format(vec[k])
        parts.append(labels[k] if c == "1" else f"{c}*{labels[k]}")
    return " + ".join(parts) + (" + ..." if len(nz) > 3 else "")


def structure_on(L: LieAlgebra, S: Subspace) -> np.ndarray:
    """Brackets of the canonical basis of S, as an array (a, b, ambient coords)."""
    F, B = L.F, S.basis
    U = F.normalize(np.tensordot(B, L.T, axes=([1], [0])))  # (a, j, m)
    W = F.normalize(np.tensordot(U, B, axes=([1], [1])))  # (a, m, b)
    return np.ascontiguousarray(W.transpose(0, 2, 1))


def subalgebra(L: LieAlgebra, S: Subspace, name: str | None = None) -> LieAlgebra:
    """The subalgebra S in the coordinates of its canonical basis."""
    if S.ambient_dim != L.dim:
        raise LieAlgebraError("subspace does not live in this algebra")
    k = S.dim
    W = structure_on(L, S)
    flat = W.reshape(k * k, L.dim)
    ech = Echelon(L.F, L.dim)
    ech.add(S.basis)
    if k and np.any(ech.reduce(flat) != 0):
        raise LieAlgebraError("subspace is not closed under the bracket")
    T = W[:, :, list(S.pivots)] if k else L.F.zeros((0, 0, 0))
    labels = [_combo_label(L.labels, v, L.F) for v in S.basis]
    return LieAlgebra(L.F, k, labels=labels, name=name or f"sub({L.name})", tensor=T)


def quotient(L: LieAlgebra, I: Subspace, name: str | None = None) -> tuple[LieAlgebra, np.ndarray]:
    """L/I on the non-pivot coordinates of I's canonical basis; returns (algebra, projection)."""
    if I.ambient_dim != L.dim:
        raise LieAlgebraError("subspace does not live in this algebra")
    if not is_ideal(L, I):
        raise LieAlgebraError("quotient by a subspace that is not an ideal")
    Q, comp = I.quotient_matrix()
    m = len(comp)
    F = L.F
    sub = L.T[np.ix_(comp, comp)] if m else F.zeros((0, 0, L.dim))
    T = F.normalize(np.tensordot(sub, Q, axes=([2], [1]))) if m else F.zeros((0, 0, 0))
    labels = [L.labels[c] for c in comp]
    Lq = LieAlgebra(F, m, labels=labels, name=name or f"{L.name}/I", tensor=T)
    return Lq, Q


def killing_form(L: LieAlgebra) -> np.ndarray:
    A = L.ad_matrices
    return L.F.normalize(np.tensordot(A, A.transpose(0, 2, 1), axes=([1, 2], [1, 2])))


def centroid(L: LieAlgebra) -> Subspace:
    """Linear maps commuting with every ad(e_i), as a subspace of row-major n x n matrices."""
    F, n = L.F, L.dim
    I = F.eye(n)
    ech = Echelon(F, n * n)
    for A in L.ad_matrices:
        ech.add(F.normalize(np.kron(I, A.T) - np.kron(A, I)))
    return Subspace(F, n * n, kernel_from_rref(F, ech.basis, ech.pivots, n * n), _canonical=True)
