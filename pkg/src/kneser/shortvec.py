"""Short vector enumeration and theta series prefixes.

The public entry points all reduce the Gram matrix first (LLL) and run a
pruned Fincke-Pohst search on the reduced basis.  Guarantees:

* results are exact: every vector is re-verified with int64 arithmetic;
* ``vectors_of_norm`` lists antipodal pairs in full, rows sorted
  lexicographically, coordinates in the lattice's own basis;
* memory for listings scales with the number of vectors found, so
  count-only questions should go through ``theta_prefix``.
"""

from __future__ import annotations

import numpy as np

from ._kernels import count_pairs_with_dot, enum_core, gso_from_gram, lll_gram
from .lattice import Lattice

__all__ = ["vectors_of_norm", "theta_prefix", "degree2_count"]

_EMPTY_COUNTS = np.zeros(1, dtype=np.int64)
_EMPTY_OUT = np.zeros((0, 1), dtype=np.int64)


def _reduced_system(L: Lattice):
    G = np.asarray(L.gram_rows(), dtype=np.int64)
    W, U = lll_gram(G)
    mu, b2 = gso_from_gram(W.astype(np.float64))
    if not (np.all(np.isfinite(b2)) and np.all(b2 > 0)):
        raise ValueError("gram is not positive definite")
    return G, W, U, mu, b2


def vectors_of_norm(L: Lattice, m: int) -> np.ndarray:
    """All x in L with x.x == m, as rows in lex order.

    Antipodal pairs are both present.  ``m == 0`` gives the single zero
    vector.
    """
    m = int(m)
    n = L.rank
    if m < 0:
        return np.zeros((0, n), dtype=np.int64)
    if m == 0:
        return np.zeros((1, n), dtype=np.int64)
    G, W, U, mu, b2 = _reduced_system(L)
    counts = np.zeros(m + 1, dtype=np.int64)
    enum_core(W, mu, b2, m, 0, 0, counts, _EMPTY_OUT, 0)
    total = int(counts[m])
    if total == 0:
        return np.zeros((0, n), dtype=np.int64)
    out = np.zeros((total, n), dtype=np.int64)
    written = enum_core(W, mu, b2, m, 1, m, _EMPTY_COUNTS, out, total)
    if written != total:
        raise AssertionError("enumeration count and fill disagree")
    vecs = out @ U
    norms = np.einsum("ij,jk,ik->i", vecs, G, vecs)
    if not np.all(norms == m):
        raise AssertionError("enumerated vector fails exact norm check")
    order = np.lexsort(vecs.T[::-1])
    return vecs[order]


def theta_prefix(L: Lattice, N: int):
    """Counts r(m) = #{x in L : x.x = 2m} for m = 0..N, as a tuple."""
    N = int(N)
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N == 0:
        return (1,)
    _, W, _, mu, b2 = _reduced_system(L)
    counts = np.zeros(2 * N + 1, dtype=np.int64)
    enum_core(W, mu, b2, 2 * N, 0, 0, counts, _EMPTY_OUT, 0)
    return (1,) + tuple(int(counts[2 * m]) for m in range(1, N + 1))


def degree2_count(L: Lattice, a: int, b: int, c: int) -> int:
    """Ordered pairs (x, y) with x.x = 2a, y.y = 2b, x.y = c.

    Works by listing both norm shells, so the cost is the product of the
    two shell sizes; that is fine for the small norms this package cares
    about and hopeless beyond them.
    """
    X = vectors_of_norm(L, 2 * int(a))
    Y = vectors_of_norm(L, 2 * int(b))
    if len(X) == 0 or len(Y) == 0:
        return 0
    G = np.asarray(L.gram_rows(), dtype=np.int64)
    XG = X @ G
    return int(count_pairs_with_dot(XG, Y, int(c)))
