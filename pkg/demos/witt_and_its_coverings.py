"""The Witt algebra W(1,1) over F_p, its one central extension, and nothing else.

Run:  python demos/witt_and_its_coverings.py [p]

Walks from the structure constants of W(1,1) to H^2, builds the central
extension from the explicit cocycle, compares it with the universal central
extension computed from the exterior square, and lists every covering.
"""

from __future__ import annotations

import sys

from modlie import catalog
from modlie.cohomology import cochain_to_pairs, h1, h2
from modlie.extensions import central_extension, covering_quotients, uce
from modlie.lie import center, is_perfect
from modlie.simplicity import is_simple


def main(p: int = 5) -> None:
    W = catalog.witt(p)
    print(f"W(1,1) over F_{p}: dim {W.dim}, basis {W.labels}")
    cert = is_simple(W)
    print(f"  simple: {cert.verdict} (method {cert.method})")

    res = h2(W)
    print(f"  dim H2(W, F) = {res.dim}  (cocycles {res.cocycle_dim}, coboundaries {res.coboundary_dim})")
    print(f"  a representative cocycle on basis pairs: {cochain_to_pairs(W, res.cocycle_reps[0])}")

    E = central_extension(W, res.cocycle_reps, name="ext").total
    print(f"\nExtension by that cocycle: dim {E.dim}, perfect {is_perfect(E)}, center {center(E).dim}")
    print(f"  H1 = {h1(E, reps=False).dim}, H2 = {h2(E, reps=False).dim}")
    V = catalog.rvirasoro(p)
    print(f"Catalog restricted Virasoro: dim {V.dim}, center {center(V).dim}, "
          f"H1 = {h1(V, reps=False).dim}, H2 = {h2(V, reps=False).dim}")

    u = uce(W)
    print(f"\nUniversal central extension from the exterior square: dim {u.hat.dim}, kernel {u.kernel_dim}")
    for k, v in u.checks.items():
        print(f"  {k}: {v}")

    print("\nCoverings hat/C for central C:")
    for e in covering_quotients(W, u):
        print(f"  C of dim {e['C_dim']}: quotient dim {e['dim']}, perfect {e['perfect']}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 5)
