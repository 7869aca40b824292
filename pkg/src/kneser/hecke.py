"""Neighbor-count matrices and neighbor graphs of the unimodular classes.

Exact counting is feasible through rank 16, where the two classes are
separated by the component count of the root graph.  In rank 24 the
line counts grow past 10^10 for p >= 3, so the graph is explored by
sampling; the reference adjacency matrices for p = 3 and p = 7 are
embedded as fixtures, and sampling can only ever turn up a subset of
their edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import build_Dn_plus
from .lattice import Lattice, direct_sum
from .neighbors import (
    IsotropicLine,
    isotropic_lines,
    line_count,
    neighbor,
    sample_isotropic_lines,
)
from .roots import NIEMEIER_CLASSES, NIEMEIER_LABELS, classify_gram16, classify_gram24

__all__ = [
    "NeighborMatrix",
    "RANK16_LABELS",
    "build_e8_pair",
    "fixture_adjacency24",
    "tp_matrix_rank16",
    "rank16_theorem_matrix",
    "rank16_second_eigenvalue",
    "verify_rank16",
    "tp_row_rank24",
    "sampled_adjacency24",
    "graph_diameter",
    "LeechProbeReport",
    "leech_criterion_probe",
]


RANK16_LABELS = ("E8^2", "E16")

# Adjacency of the rank-24 classes in Table-1 order, rootless class
# last.  Entry (i, j) is 1 when class j occurs among the p-neighbors of
# class i; both matrices are symmetric with all-ones diagonal.
_X24_3_ROWS = (
    "110110110000000000000000",
    "111111111110100000000000",
    "011001101011001000000000",
    "110110110110101000000000",
    "110111111110111100000000",
    "011011111111111111000000",
    "111111111111111111000000",
    "110111111110111111000000",
    "011011111111111111110000",
    "010111111110111111010000",
    "011111111111111111111000",
    "001001101011111111110100",
    "010111111111111111111000",
    "000011111111111111111000",
    "001111111111111111111100",
    "000011111111111111111100",
    "000001111111111111111100",
    "000001111111111111111110",
    "000000001011111111111110",
    "000000001111111111111110",
    "000000000010111111111110",
    "000000000001001111111111",
    "000000000000000001111111",
    "000000000000000000000111",
)

_X24_7_ROWS = (
    "110111111110111110000000",
    "111111111111111111110000",
    "011111111111111111110000",
    "111111111111111111111000",
    "111111111111111111111000",
    "111111111111111111111100",
    "111111111111111111111100",
    "111111111111111111111100",
    "111111111111111111111110",
    "111111111111111111111110",
    "111111111111111111111110",
    "011111111111111111111110",
    "111111111111111111111110",
    "111111111111111111111110",
    "111111111111111111111110",
    "111111111111111111111110",
    "111111111111111111111111",
    "011111111111111111111111",
    "011111111111111111111111",
    "011111111111111111111111",
    "000111111111111111111111",
    "000001111111111111111111",
    "000000001111111111111111",
    "000000000000000011111111",
)


@dataclass(frozen=True)
class NeighborMatrix:
    """Counts or adjacency of p-neighbors between lattice classes.

    ``entries[i][j]`` refers to neighbors OF class ``labels[i]`` that
    are isometric to ``labels[j]``.  ``mode`` is "exact" for complete
    enumeration (integer counts, each row summing to the line count
    c_n(p)) or "sampled-lower-bound" for boolean adjacency seen within a
    finite sample, which can only underestimate the true edge set.
    """

    labels: tuple
    entries: np.ndarray
    mode: str
    p: int
    samples: object = None
    seed: object = None

    def __post_init__(self):
        if self.mode not in ("exact", "sampled-lower-bound"):
            raise ValueError("mode must be 'exact' or 'sampled-lower-bound'")
        if len(self.labels) != self.entries.shape[0]:
            raise ValueError("labels and entries disagree in size")

    def row(self, label):
        return self.entries[self.labels.index(label)]


def _rows_to_bool(rows):
    return np.array([[ch == "1" for ch in r] for r in rows], dtype=bool)


def fixture_adjacency24(p: int) -> NeighborMatrix:
    """The reference rank-24 adjacency matrix for p in {3, 7}."""
    if p == 3:
        entries = _rows_to_bool(_X24_3_ROWS)
    elif p == 7:
        entries = _rows_to_bool(_X24_7_ROWS)
    else:
        raise ValueError("reference adjacency is available for p = 3 and p = 7")
    return NeighborMatrix(
        labels=NIEMEIER_LABELS, entries=entries, mode="exact", p=p
    )


# ---------------------------------------------------------------------------
# rank 16, exact


def build_e8_pair() -> Lattice:
    """The rank-16 class with two root-graph components."""
    e8 = build_Dn_plus(1)
    return direct_sum(e8, e8).with_label("E8^2")


def tp_matrix_rank16(p: int, limit: int = 2) -> NeighborMatrix:
    """Exact neighbor counts between the two rank-16 classes.

    Enumerates all c_16(p) isotropic lines of each class and classifies
    every neighbor.  The line count grows like p^14; p = 2 takes under
    a minute but p = 3 is a multi-hour job, so primes beyond ``limit``
    are refused unless the caller raises it explicitly.
    """
    if p > limit:
        raise ValueError(
            "exact rank-16 enumeration at p=%d exceeds the limit %d; "
            "raise limit= explicitly for a long run" % (p, limit)
        )
    sources = {
        "E8^2": build_e8_pair(),
        "E16": build_Dn_plus(2),
    }
    entries = np.zeros((2, 2), dtype=np.int64)
    expected = line_count(16, p)
    for i, label in enumerate(RANK16_LABELS):
        L = sources[label]
        seen = 0
        for line in isotropic_lines(L, p):
            M = neighbor(L, line)
            j = RANK16_LABELS.index(classify_gram16(M.gram))
            entries[i, j] += 1
            seen += 1
        if seen != expected:
            raise AssertionError(
                "enumerated %d lines, expected %d" % (seen, expected)
            )
    return NeighborMatrix(
        labels=RANK16_LABELS, entries=entries, mode="exact", p=p
    )


def rank16_theorem_matrix(p: int, tau_p: int) -> np.ndarray:
    """Closed form of the rank-16 neighbor-count matrix.

    The correction factor (1+p+p^2+p^3)(1+p^11-tau(p))/691 is an
    integer for every prime; rows follow the same source-row convention
    as ``tp_matrix_rank16``.
    """
    c = line_count(16, p)
    num = (1 + p + p * p + p**3) * (1 + p**11 - tau_p)
    if num % 691 != 0:
        raise ValueError("(1+p+p^2+p^3)(1+p^11-tau(p)) is not divisible by 691")
    f = num // 691
    return np.array(
        [[c - 405 * f, 405 * f], [286 * f, c - 286 * f]], dtype=object
    )


def rank16_second_eigenvalue(p: int, tau_p: int) -> int:
    """The non-trivial eigenvalue c_16(p) - (1+p+p^2+p^3)(1+p^11-tau(p))."""
    return line_count(16, p) - (1 + p + p * p + p**3) * (1 + p**11 - tau_p)


def verify_rank16(
    p: int, tau_p: int, N: NeighborMatrix = None, limit: int = 2
) -> np.ndarray:
    """Exact matrix minus the closed form; all zeros on success.

    Computes the exact matrix when ``N`` is not supplied.  A nonzero
    residual means either the enumeration or the eigenvalue input is
    wrong; callers treat it as a verification failure.
    """
    if N is None:
        N = tp_matrix_rank16(p, limit=limit)
    if N.mode != "exact" or N.p != p:
        raise ValueError("need an exact neighbor matrix at p=%d" % p)
    want = rank16_theorem_matrix(p, tau_p)
    have = np.array(
        [[int(x) for x in row] for row in N.entries], dtype=object
    )
    return have - want


# ---------------------------------------------------------------------------
# rank 24


def tp_row_rank24(store, label: str, p: int = 2, progress=None) -> NeighborMatrix:
    """One exact row of the rank-24 neighbor-count matrix.

    Enumerates all c_24(p) lines of the class ``label`` and classifies
    each neighbor; at p = 2 that is 8,390,655 lines, hours of work, so
    this is an opt-in job.  p >= 3 (over 10^10 lines) is refused.
    """
    if p != 2:
        raise ValueError(
            "exact rank-24 enumeration is infeasible for p=%d; only p=2" % p
        )
    L = store.get(label)
    counts = {lab: 0 for lab in NIEMEIER_LABELS}
    done = 0
    for line in isotropic_lines(L, p):
        M = neighbor(L, line)
        counts[classify_gram24(M.gram)] += 1
        done += 1
        if progress is not None and done % 100000 == 0:
            progress(done)
    expected = line_count(24, p)
    if done != expected:
        raise AssertionError("enumerated %d lines, expected %d" % (done, expected))
    entries = np.array([[counts[lab] for lab in NIEMEIER_LABELS]], dtype=np.int64)
    return NeighborMatrix(
        labels=(label,), entries=entries, mode="exact", p=p
    )


def sampled_adjacency24(p: int, samples: int, rng, store) -> NeighborMatrix:
    """Boolean adjacency seen among ``samples`` random lines per class.

    The store must hold all 24 classes.  Rows and columns follow the
    canonical table order; the result is a lower bound for the true
    edge set, monotone in the sample count.
    """
    for label in NIEMEIER_LABELS:
        if label not in store:
            raise ValueError("store is missing class %r" % label)
    entries = np.zeros((24, 24), dtype=bool)
    for i, label in enumerate(NIEMEIER_LABELS):
        L = store.get(label)
        reps = sample_isotropic_lines(L, p, samples, rng)
        for rep in reps:
            M = neighbor(L, IsotropicLine(p, tuple(int(x) for x in rep)))
            entries[i, NIEMEIER_LABELS.index(classify_gram24(M.gram))] = True
    return NeighborMatrix(
        labels=NIEMEIER_LABELS,
        entries=entries,
        mode="sampled-lower-bound",
        p=p,
        samples=samples,
    )


def graph_diameter(N: NeighborMatrix) -> int:
    """Largest shortest-path distance in a boolean adjacency matrix.

    Self-loops are ignored.  Raises on a disconnected graph, naming one
    unreachable pair.
    """
    A = np.asarray(N.entries, dtype=bool)
    n = A.shape[0]
    diam = 0
    for s in range(n):
        dist = np.full(n, -1, dtype=np.int64)
        dist[s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for v in np.nonzero(A[u])[0]:
                    if v != u and dist[v] < 0:
                        dist[v] = d
                        nxt.append(int(v))
            frontier = nxt
        if np.any(dist < 0):
            far = int(np.nonzero(dist < 0)[0][0])
            raise ValueError(
                "graph is disconnected: no path from %s to %s"
                % (N.labels[s], N.labels[far])
            )
        diam = max(diam, int(dist.max()))
    return diam


# ---------------------------------------------------------------------------
# the rootless-neighbor criterion


@dataclass(frozen=True)
class LeechProbeReport:
    """Outcome of sampling for rootless neighbors of a rooted class.

    A rooted class admits a rootless p-neighbor exactly when p reaches
    its Coxeter number, so for ``p < coxeter`` even one hit would be a
    contradiction and the probe raises instead of reporting it.
    """

    label: str
    p: int
    coxeter: int
    samples: int
    rootless_found: int
    labels_seen: tuple

    @property
    def criterion_allows_rootless(self) -> bool:
        return self.p >= self.coxeter


def leech_criterion_probe(
    label: str, p: int, samples: int, rng, store
) -> LeechProbeReport:
    """Sample p-neighbors of a rooted class and watch for rootless ones."""
    if label == "Leech":
        raise ValueError("probe a rooted class, not the rootless one")
    cls = next(c for c in NIEMEIER_CLASSES if c.label == label)
    L = store.get(label)
    found = 0
    seen = set()
    reps = sample_isotropic_lines(L, p, samples, rng)
    for rep in reps:
        M = neighbor(L, IsotropicLine(p, tuple(int(x) for x in rep)))
        got = classify_gram24(M.gram)
        seen.add(got)
        if got == "Leech":
            found += 1
            if p < cls.coxeter:
                raise AssertionError(
                    "criterion violation: rootless p=%d neighbor of %s "
                    "with Coxeter number %d" % (p, label, cls.coxeter)
                )
    return LeechProbeReport(
        label=label,
        p=p,
        coxeter=cls.coxeter,
        samples=samples,
        rootless_found=found,
        labels_seen=tuple(sorted(seen)),
    )
