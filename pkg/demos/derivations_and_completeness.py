"""Derivation algebras, completeness, and when Der of a covering is simple.

Run:  python demos/derivations_and_completeness.py

Der(L) is computed either from the full Leibniz system or by propagating a
derivation from a generating set; both are shown. The last part compares the
stabilizer prediction for Der(hat/C) with a direct computation.
"""

from __future__ import annotations

import time

from modlie import catalog
from modlie.derivations import derivation_algebra, find_generators
from modlie.extensions import verify_der_simple
from modlie.lie import center


def completeness_table(p: int = 5) -> None:
    print(f"{'algebra':<10}{'dim':>5}{'center':>8}{'Der':>6}{'Out':>6}  strategy     seconds")
    for name, L in (("W(1,1)", catalog.witt(p)), ("W(2,1)", catalog.jacobson_witt(2, p)),
                    (f"sl({p})", catalog.sl(p, p)), ("V", catalog.rvirasoro(p))):
        t = time.perf_counter()
        der = derivation_algebra(L)
        dt = time.perf_counter() - t
        print(f"{name:<10}{L.dim:>5}{center(L).dim:>8}{der.dim:>6}{der.out_dim:>6}  {der.strategy:<12}{dt:>7.2f}")


def generators(p: int = 5) -> None:
    for L in (catalog.witt(p), catalog.jacobson_witt(2, p), catalog.sl(p, p)):
        gens = find_generators(L)
        print(f"{L.name}: generated by {[L.labels[i] for i in gens] if gens else None}")


def two_routes(p: int = 5) -> None:
    for name, g, C in (("W(1,1)", catalog.witt(p), "zero"), ("W(1,1)", catalog.witt(p), "full"),
                       (f"psl({p})", catalog.psl(p, p), "zero")):
        r = verify_der_simple(g, C)
        print(f"{name:<8} C={C:<5} Out={r['out_dim']} stab={r['stabilizer_dim']} "
              f"predict={r['predict']!s:<5} direct={r['direct']!s:<5} agree={r['agree']}")
        if r["flag"]:
            print(f"         note: {r['flag']}")


if __name__ == "__main__":
    print("Completeness at p = 5\n")
    completeness_table()
    print("\nGenerating sets used by propagation\n")
    generators()
    print("\nDer(hat/C) simple: prediction against direct computation\n")
    two_routes()
