"""Finite windows of infinite-dimensional graded algebras over Q.

Run:  python demos/characteristic_zero_windows.py [N]

A window keeps the homogeneous pieces of degree in [lo, N] and only defines
brackets that land back inside. Results here are "window-certified": exact on
the window, with no claim about degrees outside it.
"""

from __future__ import annotations

import sys

from modlie.cohomology import graded_h2_trivial
from modlie.graded import (cartan_window, degree_derivation_control, degree_derivation_witness,
                           virasoro_cocycle_checks, virasoro_window)


def main(N: int = 8) -> None:
    V = virasoro_window(N)
    print(f"Virasoro window [-{N},{N}] plus c: dim {V.dim}")
    r = virasoro_cocycle_checks(N)
    print(f"  cocycle on {r['cocycle']['triples']} triples: {r['cocycle']['ok']}")
    print(f"  not a coboundary: {r['non_coboundary']['ok']}")
    for ident, ok in r["identities"].items():
        print(f"  {ident}: {ok}")

    print("\nGraded H2 pieces of the one-sided Witt algebra W_1:")
    print("  " + "  ".join(f"d={d}:{graded_h2_trivial(d)}" for d in range(-2, 9)))

    print("\nCartan-type windows:")
    for kind, r_ in (("W", 1), ("S", 2), ("H", 1), ("K", 1)):
        A = cartan_window(kind, r_, 4)
        pieces = {d: len(A.of_degree(d)) for d in range(A.lo, A.hi + 1)}
        print(f"  {A.name}: piece dims {pieces}, Jacobi {A.jacobi_check()['ok']}")

    print("\nIs the degree derivation inner?")
    for kind, r_ in (("S", 2), ("H", 1)):
        w = degree_derivation_witness(kind, r_, 4)
        print(f"  {w['algebra']}: {w['equations']} equations, outer {w['outer']}")
    ctrl = degree_derivation_control(4)
    print(f"  control, two-sided Witt window: solution {ctrl['solution']}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 8)
