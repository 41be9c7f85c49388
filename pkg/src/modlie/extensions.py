"""Central extensions, the universal central extension, and lifting derivations.

The universal central extension of a perfect L is realised as

    hat = Lambda^2 L / J,   J = span{[e_i,e_j]^e_k + [e_j,e_k]^e_i + [e_k,e_i]^e_j},

with bracket [x^y, u^v] = [x,y]^[u,v] and projection delta(x^y) = [x,y].
Wedges use the pair coordinates of ``cohomology`` (pairs i < j).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .cohomology import first_cocycle_failure, h1, h2, pair_tables
from .derivations import derivation_algebra, is_derivation, outer_representatives
from .exact import Echelon, Subspace
from .exact.fields import Field
from .lie import LieAlgebra, center, is_perfect, quotient, validate
from .simplicity import SimplicityUndecided, is_simple, require_simple

UNIVERSALITY_CHECK_MAX_DIM = 30


class ExtensionError(ValueError):
    pass


# -- central extensions from cocycles -----------------------------------------------


@dataclass
class CentralExtensionData:
    base: LieAlgebra
    cocycles: list
    total: LieAlgebra
    projection: np.ndarray  # (n, n + s)
    kernel: Subspace


def central_extension(L: LieAlgebra, cocycles, name: str | None = None) -> CentralExtensionData:
    """L + F^s with [(x,a),(y,b)] = ([x,y], phi_1(x,y), .., phi_s(x,y))."""
    F, n = L.F, L.dim
    cocycles = [F.normalize(np.asarray(c).reshape(-1)) for c in cocycles]
    for t, phi in enumerate(cocycles):
        bad = first_cocycle_failure(L, phi)
        if bad is not None:
            raise ExtensionError(f"cochain {t} is not a cocycle: fails on basis triple {bad}")
    s = len(cocycles)
    P, S = pair_tables(n)
    T = F.zeros((n + s, n + s, n + s))
    T[:n, :n, :n] = L.T
    for t, phi in enumerate(cocycles):
        T[:n, :n, n + t] = F.normalize(phi[P] * S)
    labels = list(L.labels) + [f"z{t}" for t in range(s)]
    total = LieAlgebra(F, n + s, labels=labels, name=name or f"ext({L.name})", tensor=T)
    if not validate(total).ok:
        raise ArithmeticError("extension by cocycles failed the Jacobi identity")
    proj = np.concatenate([F.eye(n), F.zeros((n, s))], axis=1)
    kernel = Subspace(F, n + s, np.concatenate([F.zeros((s, n)), F.eye(s)], axis=1), _canonical=True)
    return CentralExtensionData(L, cocycles, total, proj, kernel)


def is_covering(ext: CentralExtensionData) -> bool:
    """A central extension is a covering when its total algebra is perfect."""
    return is_perfect(ext.total)


# -- universal central extension ---------------------------------------------------


def wedge(F: Field, x, y) -> np.ndarray:
    """x ^ y in pair coordinates."""
    n = x.shape[0]
    W = F.normalize(np.multiply.outer(x, y) - np.multiply.outer(y, x))
    iu = np.triu_indices(n, 1)
    return W[iu]


def relation_space(L: LieAlgebra) -> Subspace:
    """J: images of [e_i,e_j]^e_k + [e_j,e_k]^e_i + [e_k,e_i]^e_j over triples."""
    F, n, T = L.F, L.dim, L.T
    P, S = pair_tables(n)
    C2 = n * (n - 1) // 2
    ech = Echelon(F, C2)
    trips = np.array(list(itertools.combinations(range(n), 3)), dtype=np.int64).reshape(-1, 3)
    block = max(1, (1 << 22) // max(1, C2))
    for start in range(0, trips.shape[0], block):
        I, J, K = trips[start:start + block].T
        b = I.shape[0]
        rows = F.zeros((b, C2))
        ar = np.arange(b)
        for l in range(n):
            for x, y, z in ((I, J, K), (J, K, I), (K, I, J)):
                coef = T[x, y, l] * S[l, z]
                nz = np.flatnonzero(coef != 0)
                if nz.size:
                    rows[ar[nz], P[l, z[nz]]] += coef[nz]
        ech.add(F.normalize(rows))
        if ech.full:
            break
    return Subspace(F, C2, ech.basis, _canonical=True)


@dataclass
class UceData:
    base: LieAlgebra
    hat: LieAlgebra
    delta: np.ndarray  # (n, h): hat -> base
    hat_center: Subspace  # ker delta, in hat coordinates
    J: Subspace
    Q: np.ndarray  # (h, C2): pair coordinates -> hat coordinates
    comp: list[int]  # pair indices kept as hat basis
    checks: dict = dc_field(default_factory=dict)

    @property
    def kernel_dim(self) -> int:
        return self.hat_center.dim

    def lift(self, x) -> np.ndarray:
        """Some preimage of x under delta."""
        from .exact import solve

        v = solve(self.base.F, self.delta, x)
        if v is None:
            raise ExtensionError("element outside the image of delta")
        return v


def uce(L: LieAlgebra, check: bool = True) -> UceData:
    if not is_perfect(L):
        raise ExtensionError(f"{L.name} is not perfect, so it has no universal central extension")
    F, n, T = L.F, L.dim, L.T
    pairs = list(itertools.combinations(range(n), 2))
    J = relation_space(L)
    Q, comp = J.quotient_matrix()
    h = len(comp)
    # delta on hat basis e_a ^ e_b (a, b) = pairs[c]
    delta = np.stack([T[pairs[c][0], pairs[c][1]] for c in comp], axis=1) if h else F.zeros((n, 0))
    # delta kills J: this is the Jacobi identity, and makes the bracket well defined
    Dfull = np.stack([T[a, b] for a, b in pairs], axis=1)
    if J.dim and np.any(F.normalize(Dfull @ J.basis.T) != 0):
        raise ArithmeticError("bracket map does not vanish on the relation space")
    Th = F.zeros((h, h, h))
    for a in range(h):
        for b in range(a + 1, h):
            w = wedge(F, delta[:, a], delta[:, b])
            v = F.normalize(Q @ w)
            Th[a, b] = v
            Th[b, a] = F.normalize(-v)
    labels = [f"{L.labels[pairs[c][0]]}^{L.labels[pairs[c][1]]}" for c in comp]
    hat = LieAlgebra(F, h, labels=labels, name=f"uce({L.name})", tensor=Th)
    from .exact import kernel

    Z = kernel(F, delta, h)
    data = UceData(L, hat, delta, Z, J, Q, comp)
    if check:
        data.checks = universality_checks(data)
    return data


def universality_checks(u: UceData) -> dict:
    L, hat, F = u.base, u.hat, u.base.F
    img = Subspace(F, L.dim, u.delta.T.copy())
    out = {
        "delta_surjective": img.is_full(),
        "hat_perfect": is_perfect(hat),
        "kernel_central": center(hat).contains_subspace(u.hat_center),
        "hat_jacobi": validate(hat).ok,
    }
    if hat.dim <= UNIVERSALITY_CHECK_MAX_DIM:
        out["H1_hat"] = h1(hat, reps=False).dim
        out["H2_hat"] = h2(hat, reps=False).dim
        out["universal"] = out["H1_hat"] == 0 and out["H2_hat"] == 0
    return out


# -- derivations ---------------------------------------------------------------------


def lift_derivation(u: UceData, D) -> np.ndarray:
    """Matrix on hat of x^y -> Dx^y + x^Dy."""
    L, F = u.base, u.base.F
    D = F.normalize(np.asarray(D))
    if not is_derivation(L, D):
        raise ExtensionError("matrix is not a derivation of the base algebra")
    n = L.dim
    pairs = list(itertools.combinations(range(n), 2))
    eye = F.eye(n)

    def on_pair(a, b):
        return F.normalize(wedge(F, D[:, a], eye[b]) + wedge(F, eye[a], D[:, b]))

    def mul(A, B):
        return F.normalize(A @ B)

    # descent: the induced map on Lambda^2 sends J into J
    if u.J.dim:
        full = np.stack([on_pair(a, b) for a, b in pairs], axis=1)  # (C2, C2)
        moved = mul(u.Q, mul(full, u.J.basis.T))
        if np.any(moved != 0):
            raise ArithmeticError("lifted derivation does not preserve the relation space")
    h = u.hat.dim
    Dh = F.zeros((h, h))
    for c, pc in enumerate(u.comp):
        a, b = pairs[pc]
        Dh[:, c] = mul(u.Q, on_pair(a, b))
    if not is_derivation(u.hat, Dh):
        raise ArithmeticError("lifted map is not a derivation of the extension")
    if np.any(F.normalize(mul(u.delta, Dh) - mul(D, u.delta)) != 0):
        raise ArithmeticError("lifted derivation does not cover the original")
    return Dh


def restrict_to_center(u: UceData, Dh) -> np.ndarray:
    """Matrix of Dh on hat_center in the canonical basis of hat_center."""
    F = u.base.F
    Z = u.hat_center
    cols = []
    for z in Z.basis:
        img = F.normalize(Dh @ z)
        if not Z.contains(img):
            raise ArithmeticError("lifted derivation does not preserve the center of the extension")
        cols.append(Z.coordinates(img))
    return np.stack(cols, axis=1) if cols else F.zeros((0, 0))


@dataclass
class OutAction:
    uce: UceData
    matrices: list  # one (z, z) matrix per outer representative
    representatives: list
    certificate: object = None


def out_action_on_center(g: LieAlgebra, seed: int = 0, u: UceData | None = None) -> OutAction:
    cert = require_simple(g, seed)
    if not cert.simple:
        raise ExtensionError(f"{g.name} is not simple: {cert.reason}")
    u = u or uce(g, check=False)
    der = derivation_algebra(g)
    reps, _ = outer_representatives(g, der)
    F = g.F
    for A in g.ad_matrices:
        inner = restrict_to_center(u, lift_derivation(u, A))
        if np.any(inner != 0):
            raise ArithmeticError("an inner derivation acts nontrivially on the center")
    mats = [restrict_to_center(u, lift_derivation(u, D)) for D in reps]
    return OutAction(u, mats, reps, cert)


def stabilizer(actions: list, C: Subspace) -> Subspace:
    """{lambda : (sum lambda_u A_u)(C) in C} as a subspace of Out coordinates."""
    k = len(actions)
    F = C.F
    if k == 0:
        return Subspace(F, 0)
    q, _ = C.quotient_matrix()
    rows = []
    for c in C.basis:
        # column u: q A_u c
        cols = [F.normalize(q @ F.normalize(A @ c)) for A in actions]
        rows.append(np.stack(cols, axis=1))
    if not rows or q.shape[0] == 0:
        return Subspace.full(F, k)
    from .exact import kernel

    return kernel(F, np.concatenate(rows), k)


def center_subspace(u: UceData, C) -> Subspace:
    """Normalise a description of C (None / "full" / "zero" / coordinate rows) to a subspace of hat_center coordinates."""
    F, z = u.base.F, u.hat_center.dim
    if C is None or (isinstance(C, str) and C in ("0", "zero")):
        return Subspace.zero(F, z)
    if isinstance(C, str) and C == "full":
        return Subspace.full(F, z)
    if isinstance(C, Subspace):
        if C.ambient_dim != z:
            raise ExtensionError(f"C lives in dimension {C.ambient_dim}, the center has dimension {z}")
        return C
    rows = [F.array(r).reshape(-1) for r in C]
    for r in rows:
        if r.shape[0] != z:
            raise ExtensionError(f"vector of length {r.shape[0]} in a {z}-dimensional center")
    return Subspace.span(F, rows, z)


def predict_der_simple(g: LieAlgebra, C=None, seed: int = 0, action: OutAction | None = None) -> dict:
    action = action or out_action_on_center(g, seed)
    u = action.uce
    Cs = center_subspace(u, C)
    stab = stabilizer(action.matrices, Cs)
    out_dim = len(action.matrices)
    flag = None
    if out_dim and (Cs.is_zero() or Cs.dim == u.hat_center.dim):
        flag = "C is 0 or the whole center while Out is nonzero: the stabilizer is everything"
    return {"out_dim": out_dim, "center_dim": u.hat_center.dim, "C_dim": Cs.dim, "stabilizer_dim": stab.dim,
            "predict": stab.dim == 0, "flag": flag}


def quotient_of_uce(u: UceData, Cs: Subspace) -> tuple[LieAlgebra, np.ndarray]:
    F = u.base.F
    I = Subspace(F, u.hat.dim, F.normalize(Cs.basis @ u.hat_center.basis)) if Cs.dim else Subspace.zero(F, u.hat.dim)
    return quotient(u.hat, I, name=f"{u.hat.name}/C")


def verify_der_simple(g: LieAlgebra, C=None, seed: int = 0) -> dict:
    action = out_action_on_center(g, seed)
    pred = predict_der_simple(g, C, seed, action)
    u = action.uce
    Cs = center_subspace(u, C)
    L, _ = quotient_of_uce(u, Cs)
    der = derivation_algebra(L)
    cert = is_simple(der.as_algebra, seed)
    if cert.verdict == "undecided":
        raise SimplicityUndecided(f"simplicity of Der({L.name}) undecided: {cert.reason}")
    direct = cert.simple
    pred.update({"L_dim": L.dim, "der_dim": der.dim, "der_out_dim": der.out_dim, "direct": direct,
                 "direct_method": cert.method, "agree": direct == pred["predict"]})
    if not direct and cert.witness is not None:
        pred["direct_witness_dim"] = cert.witness.dim
    return pred


# -- coverings ------------------------------------------------------------------------


def all_subspaces(F: Field, z: int):
    """Every subspace of F_p^z, each once, by its RREF basis."""
    if F.kind != "prime":
        raise ValueError("subspace enumeration needs a finite field")
    p = F.p
    yield Subspace.zero(F, z)
    for k in range(1, z + 1):
        for piv in itertools.combinations(range(z), k):
            free = [(r, c) for r in range(k) for c in range(piv[r] + 1, z) if c not in piv]
            for vals in itertools.product(range(p), repeat=len(free)):
                B = F.zeros((k, z))
                for r, c in enumerate(piv):
                    B[r, c] = 1
                for (r, c), v in zip(free, vals):
                    B[r, c] = v
                yield Subspace(F, z, B, _canonical=True)


def covering_quotients(g: LieAlgebra, u: UceData | None = None, check_uce: bool = True) -> list[dict]:
    """The coverings hat/C of g for central C, with their dimensions.

    All C are enumerated when dim hat_center <= 3; otherwise only 0, the
    whole center and its coordinate lines.
    """
    u = u or uce(g, check=False)
    F, z = g.F, u.hat_center.dim
    if z <= 3:
        choices = list(all_subspaces(F, z))
    else:
        choices = [Subspace.zero(F, z)] + [Subspace.span(F, [np.eye(z, dtype=np.int64)[i]], z) for i in range(z)]
        choices.append(Subspace.full(F, z))
    out = []
    for Cs in choices:
        L, _ = quotient_of_uce(u, Cs)
        entry = {"C_dim": Cs.dim, "dim": L.dim, "perfect": is_perfect(L)}
        if check_uce:
            entry["uce_dim"] = uce(L, check=False).hat.dim
        out.append(entry)
    return out


def covering_dimensions(g: LieAlgebra) -> set[int]:
    return {e["dim"] for e in covering_quotients(g, check_uce=False) if e["perfect"]}
