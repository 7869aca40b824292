"""Construction and discovery of the even unimodular catalog.

Direct recipes exist for only a handful of classes: the D_{8k}+ family
(E8, E16, and the rank-24 class labeled D24), sums of those, the glue
construction over a root lattice (A1^24 with the Golay code), and the
Leech lattice as a 47-neighbor of the rank-24 D24+ lattice at the line
through (0, 1, 2, ..., 23).  Everything else is found by walking the
neighbor graph from those seeds and classifying what appears.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .lattice import (
    Lattice,
    canonical_basis,
    direct_sum,
    load_lattice,
    save_lattice,
    _solve_fraction,
)
from .neighbors import IsotropicLine, neighbor, sample_isotropic_lines
from .roots import NIEMEIER_LABELS, classify_gram24, niemeier_label
from .shortvec import vectors_of_norm

__all__ = [
    "GOLAY_GENERATOR",
    "golay_codewords",
    "GlueData",
    "glue",
    "build_Dn_plus",
    "build_leech",
    "build_a1_24",
    "build_d16_e8",
    "build_e8_cubed",
    "LatticeStore",
    "discover_classes",
]


# ---------------------------------------------------------------------------
# the binary Golay code

_GOLAY_ROWS = (
    "101011100011000000000001",
    "010101110001100000000001",
    "001010111000110000000001",
    "000101011100011000000001",
    "000010101110001100000001",
    "000001010111000110000001",
    "000000101011100011000001",
    "000000010101110001100001",
    "000000001010111000110001",
    "000000000101011100011001",
    "000000000010101110001101",
    "000000000001010111000111",
)

GOLAY_GENERATOR = np.array(
    [[int(ch) for ch in row] for row in _GOLAY_ROWS], dtype=np.int64
)


def golay_codewords() -> np.ndarray:
    """All 4096 codewords, one per row."""
    words = np.zeros((4096, 24), dtype=np.int64)
    for mask in range(4096):
        w = words[mask]
        for b in range(12):
            if mask >> b & 1:
                w ^= GOLAY_GENERATOR[b]
    return words


def _check_golay():
    words = golay_codewords()
    if len({tuple(w) for w in words}) != 4096:
        raise AssertionError("code dimension is not 12")
    wts = words.sum(axis=1)
    if np.any(wts % 4 != 0):
        raise AssertionError("code is not doubly even")
    if int(wts[wts > 0].min()) != 8:
        raise AssertionError("minimum weight is not 8")
    if np.any((GOLAY_GENERATOR @ GOLAY_GENERATOR.T) % 2 != 0):
        raise AssertionError("code is not self-orthogonal")


_check_golay()


# ---------------------------------------------------------------------------
# glue construction


@dataclass(frozen=True)
class GlueData:
    """Input to :func:`glue`.

    ``glue_vectors`` are rational rows in the coordinates of the root
    lattice basis whose Gram matrix is ``root_gram``.  Alternatively
    pass ``basis``: integer rows embedding the root lattice in standard
    Z^m, with glue vectors in ambient coordinates; they are converted
    exactly.
    """

    root_gram: object = None
    glue_vectors: object = ()
    basis: object = None


def _to_fraction_rows(rows):
    out = []
    for r in rows:
        out.append([Fraction(x) if not isinstance(x, Fraction) else x for x in r])
    return out


def glue(gd: GlueData, label=None) -> Lattice:
    """Unimodular even lattice generated by a root lattice and glue.

    Raises ``ValueError("not a lagrangian")`` unless the glue vectors
    lie in the dual, have integral even norms and integral pairwise
    products, and enlarge the root lattice all the way to determinant 1.
    Raises ``ValueError("root overflow")`` if gluing created new roots;
    the rank-24 constructions never do, so a violation means wrong glue.
    """
    gvecs = _to_fraction_rows(gd.glue_vectors)
    if gd.basis is not None:
        B = [[int(x) for x in row] for row in gd.basis]
        n = len(B)
        if any(len(row) != n for row in B):
            raise ValueError("basis must be square (full-rank in its ambient)")
        root_gram = [
            [sum(B[i][t] * B[j][t] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        if gd.root_gram is not None and [list(map(int, r)) for r in gd.root_gram] != root_gram:
            raise ValueError("root_gram disagrees with the basis embedding")
        converted = []
        for g in gvecs:
            lcm = math.lcm(*(x.denominator for x in g)) if g else 1
            scaled = [int(x * lcm) for x in g]
            sol = _solve_fraction(B, scaled)
            converted.append([s / lcm for s in sol])
        gvecs = converted
    else:
        root_gram = [[int(x) for x in row] for row in gd.root_gram]
    n = len(root_gram)
    G = root_gram
    for g in gvecs:
        if len(g) != n:
            raise ValueError("glue vector has wrong length")
        prods = [sum(g[i] * G[i][j] for i in range(n)) for j in range(n)]
        if any(x.denominator != 1 for x in prods):
            raise ValueError("not a lagrangian: glue vector is outside the dual")
        q2 = sum(g[j] * prods[j] for j in range(n))
        if q2.denominator != 1 or q2.numerator % 2 != 0:
            raise ValueError("not a lagrangian: glue vector has non-even norm")
    for i in range(len(gvecs)):
        for j in range(i + 1, len(gvecs)):
            gi, gj = gvecs[i], gvecs[j]
            b = sum(gi[s] * G[s][t] * gj[t] for s in range(n) for t in range(n))
            if b.denominator != 1:
                raise ValueError("not a lagrangian: glue vectors pair non-integrally")
    scale = 1
    for g in gvecs:
        for x in g:
            scale = math.lcm(scale, x.denominator)
    gens = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    gens.extend(gvecs)
    L = canonical_basis(gens, scale, gram=G, label=label)
    if L.determinant() != 1:
        raise ValueError("not a lagrangian: glue group is too small")
    root_count = len(vectors_of_norm(Lattice(G), 2))
    if len(vectors_of_norm(L, 2)) != root_count:
        raise ValueError("root overflow: gluing created new roots")
    return L


# ---------------------------------------------------------------------------
# direct recipes


def build_Dn_plus(k: int) -> Lattice:
    """The even unimodular lattice D_{8k} + Z(1/2, ..., 1/2), k = 1, 2, 3."""
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    n = 8 * k
    gens = []
    for i in range(n - 1):
        row = [0] * n
        row[i], row[i + 1] = 1, -1
        gens.append(row)
    row = [0] * n
    row[n - 2], row[n - 1] = 1, 1
    gens.append(row)
    gens.append([Fraction(1, 2)] * n)
    label = {1: "E8", 2: "E16", 3: "D24"}[k]
    return canonical_basis(gens, 2, label=label)


def build_a1_24() -> Lattice:
    """Twenty-four A1's glued along the Golay code."""
    gram = (2 * np.eye(24, dtype=np.int64)).tolist()
    gvecs = [[Fraction(int(c), 2) for c in row] for row in GOLAY_GENERATOR]
    return glue(GlueData(root_gram=gram, glue_vectors=gvecs), label="A1^24")


def build_d16_e8() -> Lattice:
    L = direct_sum(build_Dn_plus(2), build_Dn_plus(1))
    return L.with_label("D16 E8")


def build_e8_cubed() -> Lattice:
    e8 = build_Dn_plus(1)
    return direct_sum(direct_sum(e8, e8), e8).with_label("E8^3")


_LEECH_LINE_AMBIENT = tuple(range(24))


def build_leech() -> Lattice:
    """The rootless class, as a 47-neighbor of the rank-24 D_{24}+.

    The neighbor line passes through (0, 1, ..., 23), whose norm
    4324 = 46 * 47 * 2 is divisible by 2p but not by 2p^2, so the
    construction also exercises the norm-lifting step.
    """
    e24 = build_Dn_plus(3)
    num, den = e24.basis
    target = [int(c) * den for c in _LEECH_LINE_AMBIENT]
    x = _solve_fraction([[int(v) for v in row] for row in num.tolist()], target)
    if any(c.denominator != 1 for c in x):
        raise AssertionError("line generator is not in the lattice")
    xv = np.array([int(c) for c in x], dtype=np.int64) % 47
    lead = next(int(v) for v in xv if v != 0)
    xv = (xv * pow(lead, 45, 47)) % 47
    L = neighbor(e24, IsotropicLine(47, tuple(int(v) for v in xv)))
    if len(vectors_of_norm(L, 2)) != 0:
        raise AssertionError("the 47-neighbor at this line should be rootless")
    return L.with_label("Leech")


# ---------------------------------------------------------------------------
# stores


_FNAME_RE = re.compile(r"^[A-Za-z0-9^ _.+-]+$")


class LatticeStore:
    """Labeled lattices plus the recipe that produced each.

    On disk: one ``<label>.lat`` file per lattice and a ``manifest.txt``
    of ``label: recipe`` lines.  Labels sort in the canonical rank-24
    table order, then alphabetically for anything else.
    """

    def __init__(self, path=None):
        self._items = {}
        self._recipes = {}
        if path is not None:
            self._load(Path(path))

    def put(self, L: Lattice, recipe: str) -> None:
        if L.label is None:
            raise ValueError("store entries need a label")
        self._items[L.label] = L
        self._recipes[L.label] = recipe

    def get(self, label: str) -> Lattice:
        return self._items[label]

    def recipe(self, label: str) -> str:
        return self._recipes[label]

    def __contains__(self, label) -> bool:
        return label in self._items

    def __len__(self) -> int:
        return len(self._items)

    def labels(self):
        def key(lab):
            try:
                return (0, NIEMEIER_LABELS.index(lab))
            except ValueError:
                return (1, lab)

        return tuple(sorted(self._items, key=key))

    def save(self, path) -> None:
        path = Path(path)
        path.mkdir(parents=True, exist_ok=True)
        for label in self.labels():
            if not _FNAME_RE.match(label):
                raise ValueError("label %r cannot name a file" % label)
            save_lattice(self._items[label], path / (label + ".lat"))
        with open(path / "manifest.txt", "w", encoding="ascii") as fh:
            for label in self.labels():
                fh.write("%s: %s\n" % (label, self._recipes[label]))

    def _load(self, path: Path) -> None:
        manifest = path / "manifest.txt"
        if not manifest.exists():
            raise FileNotFoundError("no manifest.txt under %s" % path)
        for line in manifest.read_text(encoding="ascii").splitlines():
            if not line.strip():
                continue
            label, _, recipe = line.partition(": ")
            L = load_lattice(path / (label + ".lat"))
            if L.label != label:
                raise ValueError("manifest label %r does not match file" % label)
            self._items[label] = L
            self._recipes[label] = recipe


# ---------------------------------------------------------------------------
# discovery


def discover_classes(seeds, p, budget, rng) -> LatticeStore:
    """Walk the neighbor graph from seed lattices, labeling what appears.

    ``p`` is a prime or a sequence of primes, cycled per class; each
    discovered class may spend at most ``budget`` samples of its own.
    Stops once all 24 rank-24 classes are present or every budget is
    exhausted.  With a fixed seed sequence and rng the walk is
    deterministic, so runs are replayable.
    """
    primes = (int(p),) if np.isscalar(p) else tuple(int(q) for q in p)
    if not primes:
        raise ValueError("need at least one prime")
    store = LatticeStore()
    for L in seeds:
        label = niemeier_label(L)
        store.put(L.with_label(label), "seed")
    spent = {label: 0 for label in store.labels()}
    while len(store) < 24:
        progressed = False
        for label in store.labels():
            if spent.get(label, 0) >= budget:
                continue
            L = store.get(label)
            pr = primes[spent[label] % len(primes)]
            rep = sample_isotropic_lines(L, pr, 1, rng)[0]
            N = neighbor(L, IsotropicLine(pr, tuple(int(v) for v in rep)))
            spent[label] += 1
            progressed = True
            new_label = classify_gram24(np.asarray(N.gram, dtype=np.int64))
            if new_label not in store:
                store.put(
                    N.with_label(new_label), "p=%d neighbor of %s" % (pr, label)
                )
                spent[new_label] = 0
        if not progressed:
            break
    return store
