"""Simplicity certificates for structure-constant Lie algebras.

Over F_p an ideal is exactly a submodule of the adjoint module, so simplicity
(for non-abelian L) is irreducibility of that module, which Norton's
irreducibility test decides with high probability.  Over Q the algebra is
certified simple when its Killing form is nondegenerate and its centroid is
one-dimensional.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .exact import Subspace, kernel, spin
from .exact import polyfp
from .lie import LieAlgebra, center, centroid, derived_subalgebra, ideal_closure, killing_form

NORTON_ATTEMPTS = 64


@dataclass
class SimplicityCertificate:
    verdict: str  # "simple" | "not_simple" | "undecided"
    method: str  # "norton" | "centroid_killing" | "spinning" | "structure"
    seed: int
    witness: Subspace | None = None
    reason: str = ""
    transcript: list = dc_field(default_factory=list)
    centroid_dim: int | None = None

    @property
    def simple(self) -> bool:
        return self.verdict == "simple"

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict, "method": self.method, "seed": self.seed, "reason": self.reason}
        if self.witness is not None:
            d["witness_dim"] = self.witness.dim
        if self.centroid_dim is not None:
            d["centroid_dim"] = self.centroid_dim
        if self.transcript:
            d["transcript"] = self.transcript
        return d


class SimplicityUndecided(RuntimeError):
    pass


def is_simple(L: LieAlgebra, seed: int = 0) -> SimplicityCertificate:
    n = L.dim
    if n <= 1:
        return SimplicityCertificate("not_simple", "structure", seed, None,
                                     "algebras of dimension <= 1 are not counted as simple")
    Z = center(L)
    if not Z.is_zero():
        if Z.is_full():
            return SimplicityCertificate("not_simple", "structure", seed, Subspace.span(L.F, [L.basis_vector(0)], n),
                                         "abelian")
        return SimplicityCertificate("not_simple", "structure", seed, Z, "nonzero center")
    D = derived_subalgebra(L)
    if not D.is_full():
        return SimplicityCertificate("not_simple", "structure", seed, D, "not perfect")
    if L.F.kind == "prime":
        return _norton(L, seed)
    return _char0(L, seed)


def _random_element(L, rng, p):
    """A random element of the associative algebra generated by the ad(e_i)."""
    A = L.ad_matrices
    n = L.dim
    coeffs = rng.integers(0, p, size=n)
    theta = np.tensordot(coeffs, A, axes=([0], [0])) % p
    word = []
    for length in (2, 3):
        idx = [int(i) for i in rng.integers(0, n, size=length)]
        prod = A[idx[0]]
        for i in idx[1:]:
            prod = (prod @ A[i]) % p
        c = int(rng.integers(1, p))
        theta = (theta + c * prod) % p
        word.append(idx)
    return theta.astype(A.dtype), word


def _norton(L: LieAlgebra, seed: int) -> SimplicityCertificate:
    F, n, p = L.F, L.dim, L.F.p
    rng = np.random.default_rng(seed)
    mats = list(L.ad_matrices)
    mats_t = [m.T.copy() for m in mats]
    transcript = []
    for attempt in range(NORTON_ATTEMPTS):
        theta, word = _random_element(L, rng, p)
        cp = polyfp.charpoly(theta, p)
        for f in polyfp.irreducible_factors(cp, p, seed=seed + attempt):
            N = polyfp.evaluate_matrix(f, theta, p)
            K = kernel(F, N, n)
            entry = {"attempt": attempt, "word": word, "factor_degree": len(f) - 1, "nullity": K.dim}
            transcript.append(entry)
            if K.is_zero():
                continue
            S = spin(F, [K.basis[0]], mats, n)
            entry["spin_dim"] = S.dim
            if not S.is_full():
                return SimplicityCertificate("not_simple", "norton", seed, S, "proper submodule from kernel vector",
                                             transcript)
            if K.dim != len(f) - 1:
                continue
            Kt = kernel(F, N.T.copy(), n)
            St = spin(F, [Kt.basis[0]], mats_t, n)
            entry["dual_spin_dim"] = St.dim
            if not St.is_full():
                return SimplicityCertificate("not_simple", "norton", seed, St.annihilator(),
                                             "proper submodule of the dual module", transcript)
            return SimplicityCertificate("simple", "norton", seed, None, "adjoint module irreducible", transcript)
    return SimplicityCertificate("undecided", "norton", seed, None,
                                 f"no conclusive enveloping element in {NORTON_ATTEMPTS} attempts", transcript)


def _char0(L: LieAlgebra, seed: int) -> SimplicityCertificate:
    F, n = L.F, L.dim
    K = killing_form(L)
    rad = kernel(F, K, n)
    if rad.is_zero():
        C = centroid(L)
        if C.dim == 1:
            return SimplicityCertificate("simple", "centroid_killing", seed, None,
                                         "nondegenerate Killing form and scalar centroid", centroid_dim=1)
        found = _spin_search(L)
        if found is not None:
            return SimplicityCertificate("not_simple", "spinning", seed, found, "ideal generated by a basis vector",
                                         centroid_dim=C.dim)
        return SimplicityCertificate("undecided", "centroid_killing", seed, None,
                                     "semisimple with centroid larger than the ground field", centroid_dim=C.dim)
    if not rad.is_full():
        # the radical of the Killing form is an ideal
        return SimplicityCertificate("not_simple", "centroid_killing", seed, rad, "Killing radical")
    found = _spin_search(L)
    if found is not None:
        return SimplicityCertificate("not_simple", "spinning", seed, found, "ideal generated by a basis vector")
    return SimplicityCertificate("undecided", "spinning", seed, None, "Killing form identically zero")


def _spin_search(L: LieAlgebra) -> Subspace | None:
    for i in range(L.dim):
        I = ideal_closure(L, Subspace.span(L.F, [L.basis_vector(i)], L.dim))
        if not I.is_full():
            return I
    return None


def require_simple(L: LieAlgebra, seed: int = 0) -> SimplicityCertificate:
    cert = is_simple(L, seed)
    if cert.verdict == "undecided":
        raise SimplicityUndecided(f"simplicity of {L.name} undecided: {cert.reason}")
    return cert
