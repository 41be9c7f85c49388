from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modlie import catalog
from modlie.cohomology import cochain_from_pairs, h1, h2
from modlie.exact import GF, QQ, Subspace
from modlie.extensions import (ExtensionError, all_subspaces, center_subspace, central_extension,
                               covering_dimensions, covering_quotients, is_covering, lift_derivation,
                               out_action_on_center, predict_der_simple, quotient_of_uce, relation_space,
                               restrict_to_center, stabilizer, uce, verify_der_simple, wedge)
from modlie.lie import center, is_perfect, validate


def witt_cocycle(p):
    W = catalog.witt(p)
    idx = list(range(-1, p - 1))
    vals = {}
    for a, m in enumerate(idx):
        for b, n in enumerate(idx):
            if a < b and m + n == p:
                vals[(a, b)] = (n - 1) * n * (n + 1) * W.F.inv(6)
    return W, cochain_from_pairs(W, vals)


# -- explicit central extensions ----------------------------------------------------


@pytest.mark.parametrize("p", [5, 7])
def test_extension_by_witt_cocycle_is_rvirasoro(p):
    W, phi = witt_cocycle(p)
    ext = central_extension(W, [phi], name="V")
    assert ext.total.same_structure(catalog.rvirasoro(p))
    assert is_covering(ext) and ext.kernel.dim == 1


def test_extension_rejects_non_cocycle():
    W = catalog.witt(5)
    with pytest.raises(ExtensionError, match=r"\(0, 1, 3\)"):
        central_extension(W, [cochain_from_pairs(W, {(0, 3): 1})])


def test_extension_by_coboundary_splits():
    W = catalog.witt(5)
    ext = central_extension(W, [cochain_from_pairs(W, {(0, 1): 1})])
    assert validate(ext.total).ok and not is_covering(ext)
    assert center(ext.total).dim == 1


# -- universal central extension -----------------------------------------------------------


def test_wedge_antisymmetric():
    F = GF(5)
    x, y = F.array([1, 2, 0]), F.array([0, 1, 3])
    assert np.array_equal(wedge(F, x, y), F.normalize(-wedge(F, y, x)))
    assert not np.any(wedge(F, x, x))


def test_uce_witt5():
    u = uce(catalog.witt(5))
    assert u.hat.dim == 6 and u.kernel_dim == 1
    assert u.checks["delta_surjective"] and u.checks["hat_perfect"] and u.checks["kernel_central"]
    assert u.checks["H1_hat"] == 0 and u.checks["H2_hat"] == 0 and u.checks["universal"]
    # hat has a 1-dim center and the quotient by it is W again
    assert center(u.hat).dim == 1
    Wq, _ = quotient_of_uce(u, Subspace.full(u.base.F, 1))
    assert Wq.dim == 5 and h2(Wq, reps=False).dim == 1


@pytest.mark.parametrize("make,kernel", [
    (lambda: catalog.sl(2, 5), 0), (lambda: catalog.sl(3, 7), 0), (lambda: catalog.witt(7), 1),
    (lambda: catalog.psl(5, 5), 1), (lambda: catalog.rvirasoro(5), 0), (lambda: catalog.sl(2), 0),
])
def test_uce_kernel_equals_h2(make, kernel):
    L = make()
    u = uce(L, check=L.dim <= 8)
    assert u.kernel_dim == kernel == h2(L, reps=False).dim


def test_uce_hamiltonian_kernel_three():
    L = catalog.hamiltonian_d2(1, 5)
    u = uce(L, check=False)
    assert u.kernel_dim == h2(L, reps=False).dim == 3


def test_uce_requires_perfect():
    with pytest.raises(ExtensionError):
        uce(catalog.abelian(2, 5))


def test_relation_space_killed_by_bracket():
    L = catalog.sl(3, 5)
    J = relation_space(L)
    pairs = list(itertools.combinations(range(L.dim), 2))
    D = np.stack([L.T[a, b] for a, b in pairs], axis=1)
    assert not np.any(L.F.normalize(D @ J.basis.T))


# -- derivation lifts and the action on the center ---------------------------------------------


def test_lift_of_inner_derivations():
    u = uce(catalog.witt(5), check=False)
    for A in u.base.ad_matrices:
        Dh = lift_derivation(u, A)
        assert not np.any(restrict_to_center(u, Dh))


def test_lift_rejects_non_derivation():
    u = uce(catalog.witt(5), check=False)
    with pytest.raises(ExtensionError):
        lift_derivation(u, u.base.F.eye(5))


def test_out_action_on_psl5():
    act = out_action_on_center(catalog.psl(5, 5))
    assert len(act.matrices) == 1 and act.uce.kernel_dim == 1
    assert not np.any(act.matrices[0])
    with pytest.raises(ExtensionError):
        out_action_on_center(catalog.rvirasoro(5))


def brute_stabilizer_dim(F, actions, C):
    """Count lambda in F_p^k with (sum lambda_u A_u) C in C, then take log_p."""
    k, p = len(actions), F.p
    count = 0
    for lam in itertools.product(range(p), repeat=k):
        A = F.normalize(sum(l * a for l, a in zip(lam, actions)))
        if all(C.contains(F.normalize(A @ c)) for c in C.basis):
            count += 1
    d = 0
    while p ** d < count:
        d += 1
    assert p ** d == count
    return d


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 2), st.integers(1, 3), st.data())
def test_stabilizer_matches_brute_force(k, z, data):
    F = GF(5)
    ent = st.integers(0, 4)
    actions = [F.array(data.draw(st.lists(st.lists(ent, min_size=z, max_size=z), min_size=z, max_size=z)))
               for _ in range(k)]
    rows = data.draw(st.lists(st.lists(ent, min_size=z, max_size=z), max_size=z))
    C = Subspace.span(F, rows, z) if rows else Subspace.zero(F, z)
    S = stabilizer(actions, C)
    assert S.dim == brute_stabilizer_dim(F, actions, C)


def test_stabilizer_proper():
    # a one-dimensional C inside a two-dimensional center with a non-scalar action
    F = GF(5)
    A = F.array([[1, 0], [0, 2]])
    N = F.array([[0, 1], [0, 0]])
    line_e1 = Subspace.span(F, [[1, 0]], 2)
    diag = Subspace.span(F, [[1, 1]], 2)
    assert stabilizer([A, N], line_e1).dim == 2
    # (lam A + mu N)(1, 1) = (lam + mu, 2 lam) lies on the diagonal iff mu = lam
    assert stabilizer([A, N], diag).dim == 1
    assert stabilizer([A], diag).dim == 0
    assert stabilizer([A], Subspace.zero(F, 2)).dim == 1
    assert stabilizer([], diag).dim == 0


def test_center_subspace_forms():
    u = uce(catalog.witt(5), check=False)
    assert center_subspace(u, None).dim == 0
    assert center_subspace(u, "full").dim == 1
    assert center_subspace(u, [["2"]]).dim == 1
    with pytest.raises(ExtensionError):
        center_subspace(u, [["1", "0"]])
    with pytest.raises(ExtensionError):
        center_subspace(u, Subspace.full(GF(5), 3))


# -- the two routes ---------------------------------------------------------------------------


def test_predict_witt_both_ideals():
    for C in ("zero", "full"):
        r = verify_der_simple(catalog.witt(5), C)
        assert r["out_dim"] == 0 and r["stabilizer_dim"] == 0
        assert r["predict"] and r["direct"] and r["agree"]
    r0 = verify_der_simple(catalog.witt(5), "zero")
    assert r0["L_dim"] == 6 and r0["der_dim"] == 5
    assert r0["flag"] is None


def test_predict_psl5_zero():
    r = verify_der_simple(catalog.psl(5, 5), "zero")
    assert r["L_dim"] == 24 and r["stabilizer_dim"] == 1
    assert not r["predict"] and not r["direct"] and r["agree"]
    assert r["flag"]


def test_predict_only():
    r = predict_der_simple(catalog.sl(3, 7))
    assert r == {"out_dim": 0, "center_dim": 0, "C_dim": 0, "stabilizer_dim": 0, "predict": True, "flag": None}


# -- coverings ------------------------------------------------------------------------------


@pytest.mark.parametrize("z,count", [(0, 1), (1, 2), (2, 8), (3, 64)])
def test_all_subspaces_count(z, count):
    # sum of Gaussian binomials [z choose k]_5
    subs = list(all_subspaces(GF(5), z))
    assert len(subs) == count and len(set(subs)) == count
    with pytest.raises(ValueError):
        list(all_subspaces(QQ, 1))


def test_witt_coverings():
    covs = covering_quotients(catalog.witt(5))
    assert sorted(e["dim"] for e in covs) == [5, 6]
    assert all(e["perfect"] and e["uce_dim"] == 6 for e in covs)
    assert covering_dimensions(catalog.witt(7)) == {7, 8}
    assert covering_dimensions(catalog.sl(2, 5)) == {3}


def test_hamiltonian_coverings():
    dims = covering_dimensions(catalog.hamiltonian_d2(1, 5))
    assert dims == {23, 24, 25, 26}


def test_extension_matches_uce_universality():
    # the explicit extension of W is perfect with H1 = H2 = 0, as the universal one must be
    W, phi = witt_cocycle(5)
    V = central_extension(W, [phi]).total
    assert is_perfect(V) and h1(V, reps=False).dim == 0 and h2(V, reps=False).dim == 0
