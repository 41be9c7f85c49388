"""Exact elimination over a field.

Two independent routes produce the (unique) reduced row-echelon form:

* ``rref`` / ``Echelon`` work on numpy arrays (int64 residues for small primes,
  object arrays of Fractions otherwise) and process tall systems block-wise.
* ``sparse_rref`` works on rows stored as ``{col: value}`` dicts and only
  densifies once fill-in passes a threshold.

Pivoting is always "first nonzero entry in column order", so results are
reproducible byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .fields import Field

BLOCK_ROWS = 4096


def as_array(F: Field, data) -> np.ndarray:
    if isinstance(data, np.ndarray):
        if F.kind == "prime" and data.dtype != object:
            return (data.astype(np.int64) % F.p).astype(F.dtype)
        if data.dtype == object:
            return F.array(data)
    return F.array(data)


def rref(F: Field, A, copy: bool = True) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``A``; returns (nonzero rows, pivot columns)."""
    A = as_array(F, A) if copy or not isinstance(A, np.ndarray) else A
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c] != 0)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        lead = A[r, c]
        if lead != 1:
            A[r] = F.normalize(A[r] * F.inv(lead))
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col != 0)
        if hit.size:
            A[hit] = F.normalize(A[hit] - np.outer(col[hit], A[r]))
        pivots.append(c)
        r += 1
    return A[:r].copy(), pivots


def rank(F: Field, A) -> int:
    ech = Echelon(F, np.shape(A)[1] if np.ndim(A) == 2 else 0)
    ech.add(A)
    return ech.rank


@dataclass
class Echelon:
    """Incrementally maintained RREF of a growing row space."""

    F: Field
    ncols: int
    basis: np.ndarray = dc_field(default=None)
    pivots: list[int] = dc_field(default_factory=list)

    def __post_init__(self):
        if self.basis is None:
            self.basis = self.F.zeros((0, self.ncols))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.rank == self.ncols

    def reduce(self, B: np.ndarray) -> np.ndarray:
        """Residues of the rows of ``B`` modulo the current row space."""
        if not self.pivots or B.shape[0] == 0:
            return B
        return self.F.normalize(B - self.F.normalize(B[:, self.pivots]) @ self.basis)

    def contains(self, v) -> bool:
        v = as_array(self.F, np.reshape(v, (1, -1)))
        return not np.any(self.reduce(v) != 0)

    def add_vector(self, v: np.ndarray) -> bool:
        """Insert one vector (already a normalised array); True if the rank grew."""
        F = self.F
        if self.pivots:
            v = F.normalize(v - F.normalize(v[self.pivots]) @ self.basis)
        nz = np.flatnonzero(v != 0)
        if nz.size == 0:
            return False
        lead = int(nz[0])
        if v[lead] != 1:
            v = F.normalize(v * F.inv(v[lead]))
        basis = self.basis
        if self.pivots:
            col = basis[:, lead]
            if np.any(col != 0):
                basis = F.normalize(basis - np.outer(col, v))
        pos = int(np.searchsorted(self.pivots, lead))
        self.basis = np.insert(basis, pos, v, axis=0)
        self.pivots.insert(pos, lead)
        return True

    def add(self, rows) -> int:
        """Add rows (array-like, 2-d); returns the increase in rank."""
        B = as_array(self.F, rows)
        if B.ndim == 1:
            if B.shape[0] != self.ncols:
                raise ValueError(f"expected {self.ncols} columns, got {B.shape[0]}")
            return int(self.add_vector(B))
        if B.shape[0] == 0:
            return 0
        if B.shape[1] != self.ncols:
            raise ValueError(f"expected {self.ncols} columns, got {B.shape[1]}")
        gained = 0
        for start in range(0, B.shape[0], BLOCK_ROWS):
            if self.full:
                break
            gained += self._add_block(B[start:start + BLOCK_ROWS])
        return gained

    def _add_block(self, B: np.ndarray) -> int:
        B = self.reduce(B)
        B = B[np.any(B != 0, axis=1)]
        if B.shape[0] == 0:
            return 0
        R, newpiv = rref(self.F, B, copy=False)
        if self.pivots:
            old = self.basis
            old = self.F.normalize(old - self.F.normalize(old[:, newpiv]) @ R)
            rows = np.concatenate([old, R])
            piv = self.pivots + newpiv
        else:
            rows, piv = R, newpiv
        order = np.argsort(piv, kind="stable")
        self.basis = rows[order]
        self.pivots = [piv[i] for i in order]
        return len(newpiv)


def kernel_from_rref(F: Field, R: np.ndarray, pivots: list[int], ncols: int) -> np.ndarray:
    """Canonical (RREF) basis of the null space of a matrix in RREF."""
    piv = set(pivots)
    free = [c for c in range(ncols) if c not in piv]
    K = F.zeros((len(free), ncols))
    for t, f in enumerate(free):
        K[t, f] = 1
        if pivots:
            K[t, pivots] = F.normalize(-R[:, f])
    # rows with a unit at each free column and zeros at the other free columns;
    # sorting by the first nonzero entry yields the RREF of the kernel
    if K.shape[0]:
        K, _ = rref(F, K, copy=False)
    return K


def kernel_basis(F: Field, A, ncols: int | None = None) -> np.ndarray:
    """Canonical basis (rows) of {v : A v = 0}."""
    if ncols is None:
        ncols = np.shape(A)[1]
    ech = Echelon(F, ncols)
    if np.size(A):
        ech.add(A)
    return kernel_from_rref(F, ech.basis, ech.pivots, ncols)


def solve(F: Field, A, b) -> np.ndarray | None:
    """One solution x of A x = b (free variables set to 0), or None."""
    A = as_array(F, A)
    b = as_array(F, np.reshape(b, (-1, 1)))
    aug = np.concatenate([A, b], axis=1)
    R, piv = rref(F, aug)
    n = A.shape[1]
    if piv and piv[-1] == n:
        return None
    x = F.zeros(n)
    for row, c in enumerate(piv):
        x[c] = R[row, n]
    return x


def inverse(F: Field, A) -> np.ndarray:
    A = as_array(F, A)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(F, np.concatenate([A, F.eye(n)], axis=1))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:].copy()


# ---------------------------------------------------------------------------
# sparse route


def sparse_rref(F: Field, rows, ncols: int, dense_threshold: float = 0.3):
    """RREF of sparse rows ``[{col: value}, ...]``.

    Returns (list of pivot rows as dicts, pivot columns).  When the stored
    pivot rows become denser than ``dense_threshold * ncols`` on average the
    remaining work is handed to the dense ``Echelon``.
    """
    piv_rows: dict[int, dict[int, object]] = {}
    nnz = 0
    rows = list(rows)
    for idx, row in enumerate(rows):
        r = {c: F(v) for c, v in row.items()}
        r = {c: v for c, v in r.items() if v != 0}
        # reduce against existing pivots; pivot rows are reduced so one pass
        # over the pivot columns present in r suffices
        for c in sorted(set(r) & piv_rows.keys()):
            coef = r.get(c)
            if not coef:
                continue
            for cc, vv in piv_rows[c].items():
                nv = F(r.get(cc, 0) - coef * vv)
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        if not r:
            continue
        lead = min(r)
        inv = F.inv(r[lead])
        r = {c: F(v * inv) for c, v in r.items()}
        for pc, prow in piv_rows.items():
            coef = prow.get(lead)
            if coef:
                for cc, vv in r.items():
                    nv = F(prow.get(cc, 0) - coef * vv)
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        piv_rows[lead] = r
        nnz = sum(len(p) for p in piv_rows.values())
        if piv_rows and nnz > dense_threshold * ncols * len(piv_rows) and len(piv_rows) > 8:
            return _finish_dense(F, piv_rows, rows[idx + 1:], ncols)
    cols = sorted(piv_rows)
    return [piv_rows[c] for c in cols], cols


def _finish_dense(F, piv_rows, rest, ncols):
    ech = Echelon(F, ncols)
    ech.add(np.stack([_dict_to_dense(F, piv_rows[c], ncols) for c in sorted(piv_rows)]))
    block = []
    for row in rest:
        block.append(_dict_to_dense(F, row, ncols))
        if len(block) == BLOCK_ROWS:
            ech.add(np.stack(block))
            block = []
    if block:
        ech.add(np.stack(block))
    out = [{int(c): F(v) for c, v in zip(np.flatnonzero(r != 0), r[r != 0])} for r in ech.basis]
    return out, list(ech.pivots)


def _dict_to_dense(F, row, ncols):
    v = F.zeros(ncols)
    for c, x in row.items():
        v[c] = F(x)
    return v


class Matrix:
    """Sparse matrix with rows stored as ``{col: value}`` (no stored zeros)."""

    def __init__(self, F: Field, nrows: int, ncols: int, rows=None):
        self.F = F
        self.nrows = nrows
        self.ncols = ncols
        self.rows: list[dict[int, object]] = [dict() for _ in range(nrows)] if rows is None else [
            {c: F(v) for c, v in r.items() if F(v) != 0} for r in rows
        ]
        if len(self.rows) != nrows:
            raise ValueError("row count mismatch")

    @classmethod
    def from_dense(cls, F: Field, A) -> "Matrix":
        A = as_array(F, A)
        rows = [{int(c): r[c] for c in np.flatnonzero(r != 0)} for r in A]
        return cls(F, A.shape[0], A.shape[1], rows)

    def to_dense(self) -> np.ndarray:
        A = self.F.zeros((self.nrows, self.ncols))
        for i, r in enumerate(self.rows):
            for c, v in r.items():
                A[i, c] = v
        return A

    def __setitem__(self, key, value):
        i, j = key
        v = self.F(value)
        if v:
            self.rows[i][j] = v
        else:
            self.rows[i].pop(j, None)

    def __getitem__(self, key):
        i, j = key
        return self.rows[i].get(j, self.F.zero)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def apply(self, v) -> np.ndarray:
        out = self.F.zeros(self.nrows)
        for i, r in enumerate(self.rows):
            s = 0
            for c, x in r.items():
                s += x * v[c]
            out[i] = self.F(s)
        return out

    def rref(self) -> tuple["Matrix", int]:
        prow, piv = sparse_rref(self.F, self.rows, self.ncols)
        return Matrix(self.F, len(prow), self.ncols, prow), len(piv)

    def rank(self) -> int:
        return self.rref()[1]

    def kernel(self):
        from .subspace import Subspace

        return Subspace(self.F, self.ncols, kernel_basis(self.F, self.to_dense(), self.ncols))

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.F == other.F and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self):
        return f"Matrix({self.F!r}, {self.nrows}x{self.ncols}, nnz={self.nnz})"
