"""Chevalley-Eilenberg cochains in degrees 0..3 and the groups H^1, H^2.

Cochain coordinates: a k-cochain with values in an m-dimensional module is a
vector indexed by (t, a), where t runs over basis k-tuples i_1 < .. < i_k
(lexicographic) and a over module coordinates; flat index t * m + a.

Differentials (x, y, z basis elements):

    d0(v)(x)       = x.v
    d1(f)(x, y)    = x.f(y) - y.f(x) - f([x, y])
    d2(g)(x, y, z) = x.g(y, z) - y.g(x, z) + z.g(x, y)
                     - g([x, y], z) + g([x, z], y) - g([y, z], x)

d2 is assembled in row blocks of triples and fed straight into the
eliminator, so the full C^3 matrix is never held at once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .exact import Echelon, sparse_rref
from .exact.linalg import kernel_from_rref
from .lie import LieAlgebra, is_perfect

BLOCK_ENTRIES = 1 << 22


class ModuleError(ValueError):
    pass


@dataclass
class LieModule:
    base: LieAlgebra
    rho: np.ndarray  # (n, m, m); rho[i] is the action of e_i on column vectors
    name: str = "M"

    @property
    def dim(self) -> int:
        return self.rho.shape[1]

    def is_trivial(self) -> bool:
        return not np.any(self.rho != 0)

    def check(self) -> None:
        """rho([e_i, e_j]) = rho_i rho_j - rho_j rho_i on all pairs."""
        L, F, R = self.base, self.base.F, self.rho
        if R.shape[0] != L.dim or R.shape[1] != R.shape[2]:
            raise ModuleError(f"action array of shape {R.shape} for a {L.dim}-dimensional algebra")
        lhs = F.normalize(np.tensordot(L.T, R, axes=([2], [0])))  # (i, j, m, m)
        prod = F.normalize(np.einsum("iab,jbc->ijac", R, R)) if F.kind == "prime" else np.einsum(
            "iab,jbc->ijac", R, R)
        rhs = F.normalize(prod - prod.transpose(1, 0, 2, 3))
        bad = np.argwhere(np.any(F.normalize(lhs - rhs) != 0, axis=(2, 3)))
        if bad.size:
            i, j = bad[0]
            raise ModuleError(f"action fails on the bracket of e{i} and e{j}")


def trivial_module(L: LieAlgebra) -> LieModule:
    return LieModule(L, L.F.zeros((L.dim, 1, 1)), name="trivial")


def adjoint_module(L: LieAlgebra) -> LieModule:
    return LieModule(L, np.array(L.ad_matrices), name="adjoint")


def _tuples(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(n), k))


def pair_tables(n: int):
    """P[a, b] = index of the pair {a, b}; S[a, b] = +1, -1 or 0 (a = b)."""
    P = np.zeros((n, n), dtype=np.int64)
    S = np.zeros((n, n), dtype=np.int64)
    for t, (a, b) in enumerate(_tuples(n, 2)):
        P[a, b] = P[b, a] = t
        S[a, b], S[b, a] = 1, -1
    return P, S


def _as_module(L, M):
    return trivial_module(L) if M is None else M


def d0_matrix(L: LieAlgebra, M: LieModule | None = None) -> np.ndarray:
    M = _as_module(L, M)
    n, m = L.dim, M.dim
    return np.ascontiguousarray(M.rho.reshape(n * m, m))


def d1_matrix(L: LieAlgebra, M: LieModule | None = None) -> np.ndarray:
    M = _as_module(L, M)
    F, n, m, T, R = L.F, L.dim, M.dim, L.T, M.rho
    pairs = _tuples(n, 2)
    out = F.zeros((len(pairs), m, n, m))
    eye = F.eye(m)
    for t, (i, j) in enumerate(pairs):
        out[t, :, j, :] = out[t, :, j, :] + R[i]
        out[t, :, i, :] = out[t, :, i, :] - R[j]
        for l in np.flatnonzero(T[i, j] != 0):
            out[t, :, l, :] = out[t, :, l, :] - T[i, j, l] * eye
    return F.normalize(out.reshape(len(pairs) * m, n * m))


def d2_blocks(L: LieAlgebra, M: LieModule | None = None, triples=None):
    """Yield consecutive row blocks of the d2 matrix (rows: triples x module)."""
    M = _as_module(L, M)
    F, n, m, T, R = L.F, L.dim, M.dim, L.T, M.rho
    P, S = pair_tables(n)
    C2 = n * (n - 1) // 2
    trip = np.array(_tuples(n, 3) if triples is None else triples, dtype=np.int64).reshape(-1, 3)
    B = max(1, BLOCK_ENTRIES // max(1, C2 * m * m))
    eye = F.eye(m)
    trivial = M.is_trivial()
    for start in range(0, trip.shape[0], B):
        I, J, K = trip[start:start + B].T
        b = I.shape[0]
        ar = np.arange(b)
        blk = F.zeros((b, m, C2, m))
        if not trivial:
            blk[ar, :, P[J, K], :] += R[I]
            blk[ar, :, P[I, K], :] -= R[J]
            blk[ar, :, P[I, J], :] += R[K]
        for l in range(n):
            for (x, y, z, sgn) in ((I, J, K, -1), (I, K, J, 1), (J, K, I, -1)):
                # sgn * sum_l T[x, y, l] g(e_l, e_z)
                coef = T[x, y, l] * S[l, z] * sgn
                nz = np.flatnonzero(coef != 0)
                if nz.size:
                    blk[ar[nz], :, P[l, z[nz]], :] += coef[nz, None, None] * eye
        yield F.normalize(blk.reshape(b * m, C2 * m))


def d2_matrix(L: LieAlgebra, M: LieModule | None = None) -> np.ndarray:
    M = _as_module(L, M)
    blocks = list(d2_blocks(L, M))
    C2 = L.dim * (L.dim - 1) // 2
    if not blocks:
        return L.F.zeros((0, C2 * M.dim))
    return np.concatenate(blocks)


def ce_differential(L: LieAlgebra, M: LieModule | None = None, k: int = 1) -> np.ndarray:
    """Matrix of d^k : C^k -> C^{k+1} acting on column vectors."""
    if k == 0:
        return d0_matrix(L, M)
    if k == 1:
        return d1_matrix(L, M)
    if k == 2:
        return d2_matrix(L, M)
    raise ValueError("only d0, d1 and d2 are provided")


@dataclass
class CohomologyResult:
    degree: int
    dim: int
    cocycle_dim: int
    coboundary_dim: int
    cocycle_reps: list = dc_field(default_factory=list)
    module: str = "trivial"

    def to_dict(self) -> dict:
        return {"degree": self.degree, "dim": self.dim, "cocycles": self.cocycle_dim,
                "coboundaries": self.coboundary_dim, "module": self.module}


def _image_echelon(F, D: np.ndarray, ncols: int) -> Echelon:
    """Echelon of the column space of D (rows of D^T)."""
    ech = Echelon(F, ncols)
    if D.size:
        ech.add(np.ascontiguousarray(D.T))
    return ech


def _representatives(F, cocycles: np.ndarray, image: Echelon) -> list:
    reps = []
    for z in cocycles:
        if image.add(z):
            reps.append(z)
    return reps


def h1(L: LieAlgebra, M: LieModule | None = None, reps: bool = True) -> CohomologyResult:
    M = _as_module(L, M)
    F, n, m = L.F, L.dim, M.dim
    D1 = d1_matrix(L, M)
    ech = Echelon(F, n * m)
    if D1.size:
        ech.add(D1)
    Z = kernel_from_rref(F, ech.basis, ech.pivots, n * m)
    img = _image_echelon(F, d0_matrix(L, M), n * m)
    b = img.rank
    out = CohomologyResult(1, Z.shape[0] - b, Z.shape[0], b, module=M.name)
    if reps:
        out.cocycle_reps = [z.reshape(n, m).T.copy() for z in _representatives(F, Z, img)]
    return out


def d2_rank_and_kernel(L: LieAlgebra, M: LieModule | None = None):
    M = _as_module(L, M)
    F = L.F
    C2 = L.dim * (L.dim - 1) // 2 * M.dim
    ech = Echelon(F, C2)
    for blk in d2_blocks(L, M):
        if ech.full:
            break
        ech.add(blk)
    return ech, kernel_from_rref(F, ech.basis, ech.pivots, C2)


def h2(L: LieAlgebra, M: LieModule | None = None, reps: bool = True) -> CohomologyResult:
    M = _as_module(L, M)
    F = L.F
    C2 = L.dim * (L.dim - 1) // 2 * M.dim
    _, Z = d2_rank_and_kernel(L, M)
    img = _image_echelon(F, d1_matrix(L, M), C2)
    b = img.rank
    out = CohomologyResult(2, Z.shape[0] - b, Z.shape[0], b, module=M.name)
    if reps:
        out.cocycle_reps = _representatives(F, Z, img)
        for z in out.cocycle_reps:
            if not is_cocycle(L, z, M):
                raise ArithmeticError("kernel vector of d2 failed the cocycle check")
    return out


def _sparse_rows(blocks):
    for blk in blocks:
        for r in blk:
            nz = np.flatnonzero(r != 0)
            if nz.size:
                yield {int(c): r[c] for c in nz}


def h2_dim_sparse(L: LieAlgebra, M: LieModule | None = None) -> int:
    """dim H^2 from ranks of d1 and d2 taken with the sparse eliminator.

    An independent route to ``h2(...).dim``. Each d2 row touches only a few
    pairs, so dict rows avoid the dense C^3 x C^2 matrix entirely.
    """
    M = _as_module(L, M)
    F = L.F
    C1 = L.dim * M.dim
    C2 = L.dim * (L.dim - 1) // 2 * M.dim
    r2 = len(sparse_rref(F, _sparse_rows(d2_blocks(L, M)), C2)[1])
    r1 = len(sparse_rref(F, _sparse_rows([d1_matrix(L, M)]), C1)[1])
    return C2 - r2 - r1


def is_cocycle(L: LieAlgebra, phi, M: LieModule | None = None) -> bool:
    return first_cocycle_failure(L, phi, M) is None


def first_cocycle_failure(L: LieAlgebra, phi, M: LieModule | None = None):
    """First triple (i, j, k) where d2(phi) is nonzero, or None."""
    M = _as_module(L, M)
    F = L.F
    phi = F.normalize(np.asarray(phi).reshape(-1))
    trip = _tuples(L.dim, 3)
    row = 0
    for blk in d2_blocks(L, M):
        val = F.normalize(blk @ phi) if F.kind == "prime" else F.normalize(blk.dot(phi))
        nz = np.flatnonzero(val != 0)
        if nz.size:
            return trip[row + int(nz[0]) // M.dim]
        row += blk.shape[0] // M.dim
    return None


def cochain_from_pairs(L: LieAlgebra, values: dict) -> np.ndarray:
    """Trivial-coefficient 2-cochain from {(i, j): value}; (j, i) entries are negated."""
    F, n = L.F, L.dim
    P, S = pair_tables(n)
    out = F.zeros(n * (n - 1) // 2)
    for (i, j), v in values.items():
        if i != j:
            out[P[i, j]] = F(out[P[i, j]] + S[i, j] * F(v))
    return out


def cochain_to_pairs(L: LieAlgebra, phi) -> dict:
    F = L.F
    return {f"({i},{j})": [F.format(phi[t])] for t, (i, j) in enumerate(_tuples(L.dim, 2)) if phi[t] != 0}


def h2_homology_dim(L: LieAlgebra, check: bool = True) -> int:
    """dim H^2(L, F); for perfect L cross-checked against the exterior-square model."""
    d = h2(L, reps=False).dim
    if check and is_perfect(L):
        from .extensions import uce

        k = uce(L, check=False).hat_center.dim
        if k != d:
            raise ArithmeticError(f"H^2 dimension {d} differs from kernel of the bracket map {k}")
    return d


# -- graded pieces for the one-sided Witt algebra over Q ------------------------


def graded_h2(A, d: int) -> int:
    """Degree-d piece of H^2(A, F) for a window of an algebra graded in degrees >= -1.

    A degree-d cochain is supported on basis tuples whose degrees add up to d.
    Every bracket the differentials need must lie in the window; otherwise
    ValueError is raised.
    """
    F, deg, n = A.F, A.degrees, A.dim
    if min(deg) < -1:
        raise ValueError("graded pieces are finite only for degrees bounded below by -1")
    c1 = [i for i in range(n) if deg[i] == d]
    c2 = [(i, j) for i, j in _tuples(n, 2) if deg[i] + deg[j] == d]
    c3 = [(i, j, k) for i, j, k in _tuples(n, 3) if deg[i] + deg[j] + deg[k] == d]
    if d + 1 > A.hi and (c2 or c3):
        raise ValueError(f"window [{A.lo}, {A.hi}] too small for degree {d}")
    pos1 = {i: t for t, i in enumerate(c1)}
    pos2 = {p: t for t, p in enumerate(c2)}

    def bracket(i, j):
        if not A.defined(i, j):
            raise ValueError(f"bracket of {A.labels[i]} and {A.labels[j]} leaves the window")
        return A.T[i, j]

    D1 = F.zeros((len(c2), len(c1)))
    for t, (i, j) in enumerate(c2):
        br = bracket(i, j)
        for l in np.flatnonzero(br != 0):
            D1[t, pos1[int(l)]] = F(-br[l])
    D2 = F.zeros((len(c3), len(c2)))
    for t, (i, j, k) in enumerate(c3):
        for (x, y, z, sgn) in ((i, j, k, -1), (i, k, j, 1), (j, k, i, -1)):
            br = bracket(x, y)
            for l in np.flatnonzero(br != 0):
                l = int(l)
                if l == z:
                    continue
                key, s = ((l, z), 1) if l < z else ((z, l), -1)
                D2[t, pos2[key]] = F(D2[t, pos2[key]] + sgn * s * br[l])
    r1 = _rank(F, D1, len(c1))
    r2 = _rank(F, D2, len(c2))
    return len(c2) - r2 - r1


def _rank(F, A, ncols):
    ech = Echelon(F, ncols)
    if A.size:
        ech.add(A)
    return ech.rank


def graded_h2_trivial(d: int, r: int = 1) -> int:
    """Degree-d piece of H^2(W_r, Q) for the one-sided Witt algebra (r = 1 only)."""
    if r != 1:
        raise NotImplementedError("graded pieces are only provided for one variable")
    from .graded import cartan_window

    A = cartan_window("W", 1, max(3, d + 2))
    return graded_h2(A, d)
