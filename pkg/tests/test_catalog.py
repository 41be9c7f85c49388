from __future__ import annotations

import numpy as np
import pytest

from modlie import catalog
from modlie.catalog import CatalogError
from modlie.exact import FieldError
from modlie.graded import PartialGradedAlgebra
from modlie.lie import LieAlgebra, center, is_perfect, quotient, validate


@pytest.mark.parametrize("spec,dim", [
    ("sl?n=2&p=5", 3), ("sl?n=3", 8), ("psl?n=5&p=5", 23), ("witt?p=7", 7), ("rvirasoro?p=5", 6),
    ("abelian?n=4&p=5", 4), ("jacobson_witt?r=1&p=5", 5), ("special_d1?r=2&p=5", 24),
    ("hamiltonian_d2?r=1&p=5", 23),
])
def test_builtins(spec, dim):
    L = catalog.make_builtin("builtin:" + spec)
    assert isinstance(L, LieAlgebra) and L.dim == dim
    assert validate(L).ok


def test_every_name_constructs():
    defaults = {"sl": {"n": 2, "p": 5}, "psl": {"n": 3, "p": 5}, "witt": {"p": 5}, "rvirasoro": {"p": 5},
                "abelian": {"n": 2}, "jacobson_witt": {"r": 1, "p": 5}, "special_d1": {"r": 2, "p": 5},
                "hamiltonian_d2": {"r": 1, "p": 5}, "contact_d1": {"r": 1, "p": 5}, "witt2_window": {"N": 3},
                "virasoro_window": {"N": 3}}
    for name in catalog.names():
        if name == "melikian":
            with pytest.raises(CatalogError):
                catalog.make(name)
            continue
        obj = catalog.make(name, **defaults.get(name, {}))
        assert isinstance(obj, (LieAlgebra, PartialGradedAlgebra))


def test_bad_requests():
    with pytest.raises(CatalogError):
        catalog.make("nonesuch")
    with pytest.raises(CatalogError):
        catalog.make("witt", q=5)
    with pytest.raises(FieldError):
        catalog.make_builtin("witt?p=4")
    with pytest.raises(CatalogError):
        catalog.sl(1, 5)
    with pytest.raises(ValueError):
        catalog.parse_builtin("witt?p")


def test_parse_builtin():
    assert catalog.parse_builtin("builtin:rvirasoro?p=5") == ("rvirasoro", {"p": "5"})
    assert catalog.parse_builtin("witt2_window") == ("witt2_window", {})


def test_witt_is_rvirasoro_mod_center():
    for p in (5, 7, 11):
        V = catalog.rvirasoro(p)
        W, _ = quotient(V, center(V))
        assert W.same_structure(catalog.witt(p))


def test_rvirasoro_central_values():
    # [e_m, e_n] picks up (n-1)n(n+1)/6 z when m + n = p
    V = catalog.rvirasoro(7)
    z = 7
    pos = {m: m + 1 for m in range(-1, 6)}
    assert V.T[pos[2], pos[5], z] == (4 * 5 * 6 // 6) % 7
    assert V.T[pos[3], pos[4], z] == (3 * 4 * 5 // 6) % 7
    assert V.T[pos[1], pos[4], z] == 0


def test_jacobson_witt_one_variable_is_witt():
    # x^(m+1) d has degree m and [x^(a+1) d, x^(b+1) d] = (b - a) x^(a+b+1) d; the basis comes in degree order
    for p in (5, 7):
        L = catalog.jacobson_witt(1, p)
        assert L.labels == ["d1", "x1 d1"] + [f"x1^{k} d1" for k in range(2, p)]
        assert np.array_equal(L.T, catalog.witt(p).T)


def test_perfectness_and_centers():
    assert is_perfect(catalog.witt(5)) and is_perfect(catalog.rvirasoro(5))
    assert center(catalog.sl(5, 5)).dim == 1 and center(catalog.sl(5)).dim == 0
    assert catalog.psl(3).name == "psl(3)" and catalog.psl(5, 5).name == "psl(5,5)"
    assert not is_perfect(catalog.abelian(2, 5))


def test_dimension_cap():
    from modlie.forms import DimensionCapExceeded

    with pytest.raises(DimensionCapExceeded):
        catalog.jacobson_witt(3, 5)
    assert catalog.jacobson_witt(2, 5).dim == 50
