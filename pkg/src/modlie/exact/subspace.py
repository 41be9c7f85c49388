from __future__ import annotations

import numpy as np

from .fields import Field
from .linalg import Echelon, as_array, kernel_basis, rref


class Subspace:
    """Subspace of F^n stored by its reduced row-echelon basis.

    The RREF basis is canonical, so two ``Subspace`` objects describe the same
    set of vectors exactly when their stored bases coincide.
    """

    __slots__ = ("F", "ambient_dim", "basis", "pivots")

    def __init__(self, F: Field, ambient_dim: int, basis=None, _canonical: bool = False):
        self.F = F
        self.ambient_dim = int(ambient_dim)
        if basis is None or np.size(basis) == 0:
            self.basis = F.zeros((0, self.ambient_dim))
            self.pivots: tuple[int, ...] = ()
            return
        B = as_array(F, basis).reshape(-1, self.ambient_dim)
        if _canonical:
            R = B
            piv = [int(np.flatnonzero(r != 0)[0]) for r in R]
        else:
            ech = Echelon(F, self.ambient_dim)
            ech.add(B)
            R, piv = ech.basis, ech.pivots
        self.basis = R
        self.basis.setflags(write=False)
        self.pivots = tuple(piv)

    @classmethod
    def span(cls, F: Field, vectors, ambient_dim: int) -> "Subspace":
        vectors = list(vectors) if not isinstance(vectors, np.ndarray) else vectors
        if len(vectors) == 0:
            return cls(F, ambient_dim)
        return cls(F, ambient_dim, np.stack([as_array(F, v) for v in vectors]))

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n)

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, F.eye(n), _canonical=True)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")
        if self.F != other.F:
            raise ValueError("field mismatch")

    def residue(self, v) -> np.ndarray:
        v = as_array(self.F, v).reshape(-1)
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        if not self.pivots:
            return v
        return self.F.normalize(v - self.F.normalize(v[list(self.pivots)]) @ self.basis)

    def contains(self, v) -> bool:
        return not np.any(self.residue(v) != 0)

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the canonical basis (raises if v is not in the span)."""
        v = as_array(self.F, v).reshape(-1)
        if np.any(self.residue(v) != 0):
            raise ValueError("vector is not in the subspace")
        return v[list(self.pivots)].copy()

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.dim == 0:
            return self
        ech = Echelon(self.F, self.ambient_dim)
        if self.dim:
            ech.add(self.basis)
        ech.add(other.basis)
        return Subspace(self.F, self.ambient_dim, ech.basis, _canonical=True)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rows (a|a) and (b|0); rows of the RREF with zero left half span a∩b."""
        self._check(other)
        n = self.ambient_dim
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.F, n)
        top = np.concatenate([self.basis, self.basis], axis=1)
        bottom = np.concatenate([other.basis, self.F.zeros((other.dim, n))], axis=1)
        R, piv = rref(self.F, np.concatenate([top, bottom]))
        rows = [R[t, n:] for t, c in enumerate(piv) if c >= n]
        return Subspace.span(self.F, rows, n)

    def quotient_matrix(self) -> tuple[np.ndarray, list[int]]:
        """Matrix Q of the projection F^n -> F^n / self onto the non-pivot coordinates.

        Returns (Q, complement) where ``complement`` lists the non-pivot
        coordinates; ``Q @ v`` gives coordinates in the quotient.
        """
        n = self.ambient_dim
        piv = list(self.pivots)
        comp = [c for c in range(n) if c not in set(piv)]
        Q = self.F.zeros((len(comp), n))
        for t, c in enumerate(comp):
            Q[t, c] = 1
        if piv and comp:
            Q[:, piv] = self.F.normalize(-self.basis[:, comp].T)
        return Q, comp

    def quotient_map(self):
        Q, _ = self.quotient_matrix()
        F = self.F
        return lambda v: F.normalize(Q @ as_array(F, v))

    def complement_indices(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]

    def image(self, A) -> "Subspace":
        """Image of the subspace under the matrix ``A`` (acting on column vectors)."""
        A = as_array(self.F, A)
        if self.dim == 0:
            return Subspace(self.F, A.shape[0])
        return Subspace(self.F, A.shape[0], self.F.normalize(self.basis @ A.T))

    def annihilator(self) -> "Subspace":
        """{w : w . v = 0 for all v in self}."""
        if self.dim == 0:
            return Subspace.full(self.F, self.ambient_dim)
        return Subspace(self.F, self.ambient_dim,
                        kernel_basis(self.F, self.basis, self.ambient_dim), _canonical=True)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.F == other.F
                and self.ambient_dim == other.ambient_dim and self.pivots == other.pivots
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots, tuple(map(str, self.basis.ravel()))))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.F!r})"


def kernel(F: Field, A, ncols: int | None = None) -> Subspace:
    if ncols is None:
        ncols = np.shape(A)[1]
    return Subspace(F, ncols, kernel_basis(F, A, ncols), _canonical=True)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def subspace_contains(a: Subspace, v) -> bool:
    return a.contains(v)


def quotient_map(s: Subspace):
    return s.quotient_map()


def spin(F: Field, vectors, mats, ambient_dim: int) -> Subspace:
    """Smallest subspace containing ``vectors`` and invariant under every matrix in ``mats``."""
    ech = Echelon(F, ambient_dim)
    queue = []
    for v in vectors:
        v = as_array(F, v).reshape(1, -1)
        if ech.add(v):
            queue.append(v[0])
    mats = [as_array(F, m) for m in mats]
    while queue and not ech.full:
        v = queue.pop()
        if not mats:
            break
        for m in mats:
            w = F.normalize(m @ v)
            if ech.add(w.reshape(1, -1)):
                queue.append(w)
            if ech.full:
                break
    return Subspace(F, ambient_dim, ech.basis, _canonical=True)
