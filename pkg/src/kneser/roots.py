"""ADE root systems and the root-system classification of even
unimodular lattices in ranks 16 and 24.

A norm-2 vector of an integral lattice is a root; the full set of roots
splits into irreducible components under the "not orthogonal" relation,
and each component is determined up to isomorphism by its rank and its
cardinality.  In rank 24 the root system pins down the isometry class:
the 23 rooted classes all have equi-Coxeter root systems, and the
handful of Coxeter-number collisions are separated by the index of the
root sublattice.  That index is what the fast classifiers below compute
when the root count alone is ambiguous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import bfs_component, enum_core, gso_from_gram, hnf_mod, lll_gram
from .lattice import Lattice, is_even_unimodular
from .shortvec import vectors_of_norm

__all__ = [
    "RootComponent",
    "RootSystem",
    "NiemeierClass",
    "NIEMEIER_CLASSES",
    "NIEMEIER_LABELS",
    "cartan_gram",
    "decompose",
    "is_equi_coxeter",
    "niemeier_label",
    "classify_gram16",
    "classify_gram24",
]


# ---------------------------------------------------------------------------
# Cartan matrices

_E_DIAGRAM_SIZES = {6: 72, 7: 126, 8: 240}


def cartan_gram(family: str, rank: int):
    """Gram matrix (= Cartan matrix) of an irreducible ADE root lattice."""
    rank = int(rank)
    if family == "A":
        if rank < 1:
            raise ValueError("A requires rank >= 1")
        g = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            g[i][i] = 2
            if i + 1 < rank:
                g[i][i + 1] = g[i + 1][i] = -1
        return g
    if family == "D":
        if rank < 3:
            raise ValueError("D requires rank >= 3")
        g = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            g[i][i] = 2
        for i in range(rank - 3):
            g[i][i + 1] = g[i + 1][i] = -1
        g[rank - 3][rank - 2] = g[rank - 2][rank - 3] = -1
        g[rank - 3][rank - 1] = g[rank - 1][rank - 3] = -1
        return g
    if family == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E requires rank 6, 7 or 8")
        g = cartan_gram("A", rank - 1)
        for row in g:
            row.append(0)
        g.append([0] * rank)
        g[rank - 1][rank - 1] = 2
        g[2][rank - 1] = g[rank - 1][2] = -1
        return g
    raise ValueError("unknown family %r" % family)


def _component_size(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 1)
    if family == "D":
        return 2 * rank * (rank - 1)
    return _E_DIAGRAM_SIZES[rank]


def _family_from_rank_size(rank: int, size: int) -> str:
    # A3 and D3 coincide; the A name wins by convention
    if size == rank * (rank + 1):
        return "A"
    if rank >= 3 and size == 2 * rank * (rank - 1):
        return "D"
    if rank in _E_DIAGRAM_SIZES and size == _E_DIAGRAM_SIZES[rank]:
        return "E"
    raise ValueError("not ADE: no irreducible system has rank %d with %d roots" % (rank, size))


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True, order=True)
class RootComponent:
    family: str
    rank: int

    @property
    def size(self) -> int:
        return _component_size(self.family, self.rank)

    @property
    def coxeter(self) -> int:
        return self.size // self.rank

    @property
    def det(self) -> int:
        if self.family == "A":
            return self.rank + 1
        if self.family == "D":
            return 4
        return {6: 3, 7: 2, 8: 1}[self.rank]

    def __str__(self):
        return "%s%d" % (self.family, self.rank)


@dataclass(frozen=True)
class RootSystem:
    components: tuple

    @property
    def label(self) -> str:
        return format_components(self.components)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def size(self) -> int:
        return sum(c.size for c in self.components)

    def is_equi_coxeter(self) -> bool:
        return len({c.coxeter for c in self.components}) <= 1


def format_components(components) -> str:
    """Canonical label: families alphabetical, ranks descending, runs
    collapsed with a caret ("A7^2 D5^2")."""
    key = sorted(components, key=lambda c: (c.family, -c.rank))
    parts = []
    i = 0
    while i < len(key):
        j = i
        while j < len(key) and key[j] == key[i]:
            j += 1
        parts.append(str(key[i]) if j - i == 1 else "%s^%d" % (key[i], j - i))
        i = j
    return " ".join(parts)


def parse_label(label: str):
    """Inverse of :func:`format_components`."""
    comps = []
    for part in label.split():
        if "^" in part:
            name, mult = part.split("^")
            mult = int(mult)
        else:
            name, mult = part, 1
        comps.extend([RootComponent(name[0], int(name[1:]))] * mult)
    return tuple(sorted(comps, key=lambda c: (c.family, -c.rank)))


# Root spans inside an integral lattice have tiny elementary divisors
# (every one divides the discriminant exponent of an ADE lattice, at
# most 25), so their rank can be read off a Hermite sweep modulo a much
# larger prime: unit pivots mark the span, prime pivots the complement.
# Working modulo the prime keeps all intermediates bounded; a plain
# integer sweep can overflow int64 on a few hundred root rows.
_RANK_PRIME = 65521


def _span_rank(mat) -> int:
    H, _ = hnf_mod(np.asarray(mat, dtype=np.int64).copy(), _RANK_PRIME)
    return int(np.sum(H.diagonal() < _RANK_PRIME))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[ri] = rj


def decompose(roots, gram) -> RootSystem:
    """Split a set of roots into irreducible ADE components.

    ``roots`` are rows in the basis whose Gram matrix is ``gram``; every
    row must have norm 2.  Raises ``ValueError("not ADE: ...")`` when the
    numbers do not fit any simply-laced system.
    """
    R = np.asarray(roots, dtype=np.int64)
    G = np.asarray(gram, dtype=np.int64)
    if R.shape[0] == 0:
        return RootSystem(components=())
    norms = np.einsum("ij,jk,ik->i", R, G, R)
    if not np.all(norms == 2):
        raise ValueError("not ADE: input contains a vector of norm != 2")
    k = R.shape[0]
    dots = R @ G @ R.T
    uf = _UnionFind(k)
    for i in range(k):
        nz = np.nonzero(dots[i, i + 1:])[0]
        for j in nz:
            uf.union(i, int(j) + i + 1)
    groups = {}
    for i in range(k):
        groups.setdefault(uf.find(i), []).append(i)
    comps = []
    for idx in groups.values():
        sub = R[idx]
        rank = _span_rank(sub)
        size = len(idx)
        if size % rank != 0:
            raise ValueError("not ADE: %d roots spanning rank %d" % (size, rank))
        comps.append(RootComponent(_family_from_rank_size(rank, size), rank))
    return RootSystem(components=tuple(sorted(comps, key=lambda c: (c.family, -c.rank))))


def is_equi_coxeter(rs: RootSystem) -> bool:
    return rs.is_equi_coxeter()


# ---------------------------------------------------------------------------
# the 24 classes of rank 24


@dataclass(frozen=True)
class NiemeierClass:
    label: str
    coxeter: int
    root_count: int
    root_index: int  # index of the root sublattice, 0 for the rootless class

    @property
    def components(self):
        return parse_label(self.label) if self.label != "Leech" else ()


NIEMEIER_CLASSES = (
    NiemeierClass("D24", 46, 1104, 2),
    NiemeierClass("D16 E8", 30, 720, 2),
    NiemeierClass("E8^3", 30, 720, 1),
    NiemeierClass("A24", 25, 600, 5),
    NiemeierClass("D12^2", 22, 528, 4),
    NiemeierClass("D10 E7^2", 18, 432, 4),
    NiemeierClass("A17 E7", 18, 432, 6),
    NiemeierClass("A15 D9", 16, 384, 8),
    NiemeierClass("D8^3", 14, 336, 8),
    NiemeierClass("A12^2", 13, 312, 13),
    NiemeierClass("A11 D7 E6", 12, 288, 12),
    NiemeierClass("E6^4", 12, 288, 9),
    NiemeierClass("A9^2 D6", 10, 240, 20),
    NiemeierClass("D6^4", 10, 240, 16),
    NiemeierClass("A8^3", 9, 216, 27),
    NiemeierClass("A7^2 D5^2", 8, 192, 32),
    NiemeierClass("A6^4", 7, 168, 49),
    NiemeierClass("A5^4 D4", 6, 144, 72),
    NiemeierClass("D4^6", 6, 144, 64),
    NiemeierClass("A4^6", 5, 120, 125),
    NiemeierClass("A3^8", 4, 96, 256),
    NiemeierClass("A2^12", 3, 72, 729),
    NiemeierClass("A1^24", 2, 48, 4096),
    NiemeierClass("Leech", 0, 0, 0),
)

NIEMEIER_LABELS = tuple(c.label for c in NIEMEIER_CLASSES)

_BY_COUNT = {}
for _c in NIEMEIER_CLASSES[:-1]:
    _BY_COUNT.setdefault(_c.root_count, []).append(_c)


def niemeier_label(L: Lattice) -> str:
    """Label of a rank-24 even unimodular lattice, "Leech" if rootless."""
    if L.rank != 24 or not is_even_unimodular(L):
        raise ValueError("not a Niemeier lattice")
    roots = vectors_of_norm(L, 2)
    if len(roots) == 0:
        return "Leech"
    rs = decompose(roots, L.gram)
    if not rs.is_equi_coxeter() or rs.rank != 24:
        raise ValueError("not a Niemeier lattice")
    label = rs.label
    if label not in NIEMEIER_LABELS:
        raise ValueError("not a Niemeier lattice")
    return label


# ---------------------------------------------------------------------------
# fast classifiers for neighbor pipelines
#
# These take a bare Gram matrix and answer with a label, touching as few
# vectors as possible: root count first, then (only on a Coxeter-number
# collision) the index of the root sublattice via a Hermite form of the
# root coordinates.  Full `decompose` is the slow cross-check.


def _reduced(gram):
    G = np.asarray(gram, dtype=np.int64)
    W, U = lll_gram(G)
    mu, b2 = gso_from_gram(W.astype(np.float64))
    if not (np.all(np.isfinite(b2)) and np.all(b2 > 0)):
        raise ValueError("gram is not positive definite")
    return W, U, mu, b2


_NO_COUNTS = np.zeros(1, dtype=np.int64)
_NO_OUT = np.zeros((0, 1), dtype=np.int64)


def _roots_reduced(W, mu, b2, count):
    out = np.zeros((count, W.shape[0]), dtype=np.int64)
    written = enum_core(W, mu, b2, 2, 1, 2, _NO_COUNTS, out, count)
    if written != count:
        raise AssertionError("root count and listing disagree")
    return out


def _root_count(W, mu, b2):
    counts = np.zeros(3, dtype=np.int64)
    enum_core(W, mu, b2, 2, 0, 0, counts, _NO_OUT, 0)
    return int(counts[2])


def classify_gram16(gram) -> str:
    """Label of a rank-16 even unimodular Gram matrix.

    Both classes have 480 roots, so counting cannot separate them; the
    number of components of the root graph can (two against one), and a
    breadth-first search that gives up past 240 visits settles it early.
    """
    W, U, mu, b2 = _reduced(gram)
    count = _root_count(W, mu, b2)
    if count != 480:
        raise ValueError("rank-16 even unimodular lattices have 480 roots, found %d" % count)
    roots = _roots_reduced(W, mu, b2, count)
    comp = bfs_component(roots, W, 240)
    if comp == 240:
        return "E8^2"
    if comp > 240:
        return "E16"
    raise ValueError("root graph component of size %d should not exist" % comp)


def classify_gram24(gram) -> str:
    """Label of a rank-24 even unimodular Gram matrix.

    Root count settles most classes; ties are broken by the index of the
    root sublattice, the product of the Hermite pivots of the root
    coordinate matrix.
    """
    W, U, mu, b2 = _reduced(gram)
    count = _root_count(W, mu, b2)
    if count == 0:
        return "Leech"
    candidates = _BY_COUNT.get(count)
    if not candidates:
        raise ValueError("no rank-24 class has %d roots" % count)
    if len(candidates) == 1:
        return candidates[0].label
    roots = _roots_reduced(W, mu, b2, count)
    # Hermite form modulo the lcm of the candidate indices: that is a
    # multiple of the true root-span determinant, so adding mod * Z^24
    # changes nothing and the sweep stays exact in int64.
    mod = math.lcm(*(c.root_index for c in candidates))
    H, _ = hnf_mod(roots.copy(), mod)
    index = 1
    for i in range(24):
        index *= int(H[i, i])
    for c in candidates:
        if c.root_index == index:
            return c.label
    raise ValueError("root sublattice index %d matches no class with %d roots" % (index, count))
