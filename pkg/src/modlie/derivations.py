"""Derivation algebras Der(L), inner derivations and outer derivations.

A derivation is stored as an n x n matrix D acting on column vectors; in the
"derivation coordinate space" it is the row-major flattening of D.  Der(L) is
returned by its canonical (RREF) basis in that space, so both solution
strategies below yield identical output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .exact import Echelon, Subspace, inverse
from .exact.linalg import kernel_from_rref
from .lie import LieAlgebra, center, quotient

FULL_SYSTEM_MAX_DIM = 30


@dataclass
class DerivationAlgebra:
    base: LieAlgebra
    der_basis: np.ndarray  # (d, n, n)
    as_algebra: LieAlgebra
    inner: Subspace  # subspace of the d-dimensional derivation coordinates
    strategy: str

    @property
    def dim(self) -> int:
        return self.der_basis.shape[0]

    @property
    def out_dim(self) -> int:
        return self.dim - self.inner.dim

    def coordinates(self, D) -> np.ndarray:
        """Coordinates of a derivation matrix in ``der_basis``."""
        return self._space.coordinates(np.asarray(D).reshape(-1))

    @property
    def _space(self) -> Subspace:
        n = self.base.dim
        return Subspace(self.base.F, n * n, self.der_basis.reshape(self.dim, n * n), _canonical=True)


def leibniz_defect(L: LieAlgebra, D) -> np.ndarray:
    """Array (i, j, k) of D[e_i,e_j] - [De_i,e_j] - [e_i,De_j]."""
    F, T, A = L.F, L.T, L.ad_matrices
    D = F.normalize(np.asarray(D))
    lhs = F.normalize(np.tensordot(T, D, axes=([2], [1])))  # (i, j, k): D applied to [e_i,e_j]
    # [D e_i, e_j]_k = sum_l D[l,i] T[l,j,k]
    t2 = F.normalize(np.tensordot(D, T, axes=([0], [0])))  # (i, j, k)
    # [e_i, D e_j]_k = sum_l D[l,j] T[i,l,k]
    t3 = F.normalize(np.tensordot(T, D, axes=([1], [0]))).transpose(0, 2, 1)  # (i, k, j) -> (i, j, k)
    return F.normalize(lhs - t2 - t3)


def is_derivation(L: LieAlgebra, D) -> bool:
    return not np.any(leibniz_defect(L, D) != 0)


def _full_system(L: LieAlgebra) -> np.ndarray:
    """Kernel of the n^2-unknown Leibniz system; rows are flattened derivations (RREF)."""
    F, n, T, A = L.F, L.dim, L.T, L.ad_matrices
    ech = Echelon(F, n * n)
    eye = F.eye(n)
    for i in range(n):
        rows = []
        for j in range(i + 1, n):
            c = T[i, j]
            if n:
                B = F.normalize(np.kron(eye, c.reshape(1, n)))  # (k, k*n + l) <- c_l
            cols_i = [l * n + i for l in range(n)]
            cols_j = [l * n + j for l in range(n)]
            B[:, cols_i] = F.normalize(B[:, cols_i] + A[j])
            B[:, cols_j] = F.normalize(B[:, cols_j] - A[i])
            rows.append(B)
        if rows:
            ech.add(np.concatenate(rows))
    return kernel_from_rref(F, ech.basis, ech.pivots, n * n)


# -- generator propagation -------------------------------------------------


def generated_subalgebra_dim(L: LieAlgebra, gens: list[int]) -> int:
    F, n = L.F, L.dim
    ech = Echelon(F, n)
    elems = []
    for g in gens:
        v = L.basis_vector(g)
        if ech.add(v):
            elems.append(v)
    queue = list(elems)
    A = L.ad_matrices
    while queue and not ech.full:
        a = queue.pop()
        for g in gens:
            w = F.normalize(-A[g] @ a)  # [a, e_g]
            if ech.add(w):
                queue.append(w)
    return ech.rank


def find_generators(L: LieAlgebra, max_size: int = 12) -> list[int] | None:
    """Small set of basis vectors generating L, or None.

    Pairs of high-rank basis vectors are tried first; after that the set grows
    greedily by whichever basis vector enlarges the generated subalgebra most.
    """
    n = L.dim
    if n == 0:
        return []
    ranks = []
    for i in range(n):
        ech = Echelon(L.F, n)
        ech.add(L.ad_matrices[i].T)
        ranks.append(ech.rank)
    order = sorted(range(n), key=lambda i: (-ranks[i], i))
    head = order[:8]
    for size in (1, 2):
        for combo in itertools.combinations(head, size):
            if generated_subalgebra_dim(L, list(combo)) == n:
                return sorted(combo)
    gens: list[int] = []
    current = 0
    while len(gens) < max_size:
        best, best_dim = None, current
        for i in order:
            if i in gens:
                continue
            d = generated_subalgebra_dim(L, gens + [i])
            if d > best_dim:
                best, best_dim = i, d
                if d == n:
                    break
        if best is None:
            return None
        gens.append(best)
        current = best_dim
        if current == n:
            return sorted(gens)
    return None


def _propagation(L: LieAlgebra, gens: list[int]) -> np.ndarray:
    F, n, T, A = L.F, L.dim, L.T, L.ad_matrices
    s = len(gens)
    U = s * n
    ech = Echelon(F, n)
    vecs, images = [], []  # element v and matrix M_v with D(v) = M_v @ u
    M_gen = {}
    for t, g in enumerate(gens):
        M = F.zeros((n, U))
        M[np.arange(n), t * n + np.arange(n)] = 1
        M_gen[g] = M
        v = L.basis_vector(g)
        if ech.add(v):
            vecs.append(v)
            images.append(M)
    queue = list(range(len(vecs)))
    while queue and not ech.full:
        idx = queue.pop(0)
        a, Ma = vecs[idx], images[idx]
        ad_a = L.ad(a)
        for g in gens:
            w = F.normalize(-A[g] @ a)
            if ech.add(w):
                # D[a, g] = [Da, g] + [a, Dg] = -ad(g) Da + ad(a) Dg
                Mw = F.normalize(F.normalize(-A[g] @ Ma) + F.normalize(ad_a @ M_gen[g]))
                vecs.append(w)
                images.append(Mw)
                queue.append(len(vecs) - 1)
    if not ech.full:
        raise ValueError("generators do not generate the algebra")
    P = np.stack(vecs)  # rows v_k = sum_i P[k, i] e_i
    Pinv = inverse(F, P)  # e_i = sum_k Pinv[i, k] v_k
    Mstack = np.stack(images)  # (k, n, U)
    Me = F.normalize(np.tensordot(Pinv, Mstack, axes=([1], [0])))  # (i, n, U): D(e_i)
    cons = Echelon(F, U)
    for i in range(n):
        if cons.full:
            break
        # for all j: D[e_i,e_j] + ad(e_j) D(e_i) - ad(e_i) D(e_j)
        t1 = F.normalize(np.tensordot(T[i], Me, axes=([1], [0])))  # (j, k, U)
        t2 = F.normalize(np.tensordot(A, Me[i], axes=([2], [0])))  # (j, k, U)
        t3 = F.normalize(np.tensordot(A[i], Me, axes=([1], [1]))).transpose(1, 0, 2)  # (j, k, U)
        block = F.normalize(t1 + t2 - t3)[i + 1:]
        if block.size:
            cons.add(block.reshape(-1, U))
    sol = kernel_from_rref(F, cons.basis, cons.pivots, U)  # (m, U)
    if sol.shape[0] == 0:
        return F.zeros((0, n * n))
    # D[k, i] = (Me[i] @ u)_k
    Ds = F.normalize(np.tensordot(sol, Me, axes=([1], [2])))  # (m, i, k)
    flat = np.ascontiguousarray(Ds.transpose(0, 2, 1)).reshape(-1, n * n)
    return Subspace(F, n * n, flat).basis


def derivation_space(L: LieAlgebra, strategy: str = "auto") -> tuple[np.ndarray, str]:
    n = L.dim
    if strategy == "auto":
        strategy = "full" if n <= FULL_SYSTEM_MAX_DIM else "propagation"
    if strategy == "propagation":
        gens = find_generators(L)
        if gens is None:
            strategy = "full"
        else:
            return _propagation(L, gens), "propagation"
    if strategy != "full":
        raise ValueError(f"unknown strategy {strategy!r}")
    return _full_system(L), "full"


def derivation_algebra(L: LieAlgebra, strategy: str = "auto") -> DerivationAlgebra:
    F, n = L.F, L.dim
    flat, used = derivation_space(L, strategy)
    d = flat.shape[0]
    space = Subspace(F, n * n, flat, _canonical=True)
    mats = flat.reshape(d, n, n)
    piv = list(space.pivots)
    # commutator structure constants in the canonical basis (pivot reading)
    prod = F.normalize(np.einsum("akl,blm->abkm", mats, mats)) if F.kind == "prime" and d else None
    T = F.zeros((d, d, d))
    for a in range(d):
        for b in range(a + 1, d):
            if prod is not None:
                C = F.normalize(prod[a, b] - prod[b, a])
            else:
                C = F.normalize(mats[a] @ mats[b] - mats[b] @ mats[a])
            coords = C.reshape(-1)[piv]
            T[a, b] = coords
            T[b, a] = F.normalize(-coords)
    labels = [f"D{a}" for a in range(d)]
    alg = LieAlgebra(F, d, labels=labels, name=f"Der({L.name})", tensor=T)
    inner_vecs = [space.coordinates(A.reshape(-1)) for A in L.ad_matrices]
    inner = Subspace.span(F, inner_vecs, d)
    return DerivationAlgebra(L, mats, alg, inner, used)


def is_complete(L: LieAlgebra, der: DerivationAlgebra | None = None) -> bool:
    if not center(L).is_zero():
        return False
    der = der or derivation_algebra(L)
    return der.out_dim == 0


def outer_representatives(L: LieAlgebra, der: DerivationAlgebra | None = None):
    """Coset representatives of Der(L)/ad(L) and the quotient algebra Out(L).

    Representatives are the canonical basis derivations at the non-pivot
    coordinates of the inner subspace.
    """
    der = der or derivation_algebra(L)
    comp = der.inner.complement_indices()
    reps = [der.der_basis[c] for c in comp]
    out_alg, _ = quotient(der.as_algebra, der.inner, name=f"Out({L.name})")
    return reps, out_alg
