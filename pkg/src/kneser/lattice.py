"""Exact integral-lattice arithmetic.

A lattice is held as the Gram matrix of a fixed basis, with all arithmetic
done in exact (arbitrary-width) integers or rationals.  No floating point
is ever allowed to decide a structural question: determinants use Bareiss
elimination, canonical bases use the Hermite normal form, discriminant
groups use the Smith normal form.

Conventions used throughout the package:

* vectors are rows; a lattice given by a basis matrix ``B`` is the set of
  integer row combinations ``x @ B``;
* the Gram matrix stores ``gram[i][j] = b_i . b_j``;
* the canonical basis of a sublattice of ``Z^n`` is the row-style Hermite
  normal form: upper triangular, positive diagonal, and every entry above
  a pivot reduced into ``[0, pivot)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "Lattice",
    "DiscriminantGroup",
    "determinant",
    "is_even_unimodular",
    "direct_sum",
    "canonical_basis",
    "sublattice_index",
    "discriminant_group",
    "hnf",
    "det_exact",
    "smith_normal_form",
    "intersect",
    "to_text",
    "from_text",
    "save_lattice",
    "load_lattice",
]


# ---------------------------------------------------------------------------
# exact integer linear algebra


def _as_int_rows(mat):
    """Copy a matrix-like into a list of lists of Python ints."""
    rows = []
    for r in mat:
        row = []
        for x in r:
            xi = int(x)
            if xi != x:
                raise ValueError("matrix entry %r is not an integer" % (x,))
            row.append(xi)
        rows.append(row)
    return rows


def det_exact(mat) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = _as_int_rows(mat)
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss: the division is exact
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _det_fraction_gauss(mat) -> Fraction:
    """Determinant by rational Gaussian elimination.

    Slower than :func:`det_exact`; kept as an independent oracle for tests.
    """
    a = [[Fraction(int(x)) for x in r] for r in mat]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def hnf(rows, ncols=None):
    """Row-style Hermite normal form of an integer matrix.

    Returns the list of nonzero rows: upper triangular in echelon shape,
    pivots positive, entries above each pivot reduced into ``[0, pivot)``.
    The output depends only on the row lattice, which is what makes it a
    canonical form.
    """
    a = _as_int_rows(rows)
    if not a:
        return []
    m = len(a)
    n = len(a[0]) if ncols is None else ncols
    if any(len(r) != n for r in a):
        raise ValueError("ragged rows")
    pivots = []  # (row index, col index) in echelon order
    top = 0
    for col in range(n):
        # gcd-combine everything below `top` into a single pivot row
        piv = None
        for i in range(top, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[top], a[piv] = a[piv], a[top]
        for i in range(top + 1, m):
            while a[i][col] != 0:
                q = a[top][col] // a[i][col]
                for j in range(col, n):
                    a[top][j] -= q * a[i][j]
                a[top], a[i] = a[i], a[top]
        if a[top][col] < 0:
            for j in range(col, n):
                a[top][j] = -a[top][j]
        pivots.append((top, col))
        top += 1
        if top == m:
            break
    # reduce entries above every pivot
    for r, col in pivots:
        d = a[r][col]
        for i in range(r):
            q = a[i][col] // d  # floor division lands the entry in [0, d)
            if q:
                for j in range(col, n):
                    a[i][j] -= q * a[r][j]
    return [a[r] for r, _ in pivots]


def smith_normal_form(mat):
    """Smith normal form ``U @ A @ V = D`` of an integer matrix.

    Returns ``(d, U, V)`` where ``d`` is the list of diagonal entries of
    ``D`` (nonnegative, each dividing the next) and ``U``, ``V`` are
    unimodular.  Only needs to be fast for ranks up to a few dozen.
    """
    a = _as_int_rows(mat)
    m = len(a)
    n = len(a[0]) if a else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, q):
        arow, srow = a[dst], a[src]
        for j in range(n):
            arow[j] += q * srow[j]
        urow, usrc = U[dst], U[src]
        for j in range(m):
            urow[j] += q * usrc[j]

    def addmul_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    def eliminate():
        """Diagonalize by unimodular row/column operations; return rank."""
        t = 0
        while t < min(m, n):
            piv = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] != 0:
                        piv = (i, j)
                        break
                if piv:
                    break
            if piv is None:
                break
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            while True:
                done = True
                for i in range(t + 1, m):
                    if a[i][t] != 0:
                        q = -(a[i][t] // a[t][t])
                        addmul_row(i, t, q)
                        if a[i][t] != 0:
                            swap_rows(t, i)
                            done = False
                for j in range(t + 1, n):
                    if a[t][j] != 0:
                        q = -(a[t][j] // a[t][t])
                        addmul_col(j, t, q)
                        if a[t][j] != 0:
                            swap_cols(t, j)
                            done = False
                if done:
                    break
            t += 1
        return t

    r = eliminate()
    while True:
        for i in range(r):
            if a[i][i] < 0:
                for j in range(n):
                    a[i][j] = -a[i][j]
                for j in range(m):
                    U[i][j] = -U[i][j]
        bad = None
        for i in range(r - 1):
            if a[i + 1][i + 1] % a[i][i] != 0:
                bad = i
                break
        if bad is None:
            break
        # fold the offending column over and rediagonalize; the new entry
        # at (bad, bad) becomes the gcd of the pair, so this terminates
        addmul_col(bad, bad + 1, 1)
        eliminate()
    d = [a[i][i] for i in range(r)]
    return d, U, V


def _solve_fraction(A, b):
    """Solve x @ A = b exactly over the rationals; A square nonsingular."""
    n = len(A)
    # transpose so we can do standard column-solve A^T x^T = b^T
    M = [[Fraction(int(A[j][i])) for j in range(n)] for i in range(n)]
    x = [Fraction(int(v)) for v in b]
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        M[k], M[piv] = M[piv], M[k]
        x[k], x[piv] = x[piv], x[k]
        inv = 1 / M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] * inv
            if f:
                for j in range(k, n):
                    M[i][j] -= f * M[k][j]
                x[i] -= f * x[k]
    out = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = x[i]
        for j in range(i + 1, n):
            s -= M[i][j] * out[j]
        out[i] = s / M[i][i]
    return out


# ---------------------------------------------------------------------------
# the Lattice type


class Lattice:
    """Positive lattice described by an integral Gram matrix.

    ``basis``, when present, is the pair ``(num, den)`` of an integer
    matrix and a positive denominator: the rows of ``num / den`` express
    this lattice's basis in the coordinates of the lattice it was built
    from (the ambient ``Z^n`` for ``canonical_basis``, the source lattice
    for a neighbor).  Standalone lattices carry no basis.

    Instances are treated as immutable; every operation returns new data.
    """

    __slots__ = ("gram", "label", "basis")

    def __init__(self, gram, label=None, basis=None):
        g = np.array(gram, dtype=object)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError("gram must be square")
        rows = _as_int_rows(g.tolist())
        n = len(rows)
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("gram is not symmetric")
        self.gram = np.array(rows, dtype=np.int64) if _fits_int64(rows) else np.array(rows, dtype=object)
        self.label = label
        if basis is not None:
            num, den = basis
            num = np.array(_as_int_rows(num), dtype=np.int64)
            den = int(den)
            if den <= 0:
                raise ValueError("basis denominator must be positive")
            basis = (num, den)
        self.basis = basis

    @property
    def rank(self) -> int:
        return int(self.gram.shape[0])

    def gram_rows(self):
        """Gram matrix as lists of Python ints (exact, overflow-free)."""
        return [[int(x) for x in row] for row in self.gram]

    def determinant(self) -> int:
        return det_exact(self.gram_rows())

    def is_even(self) -> bool:
        return all(int(self.gram[i, i]) % 2 == 0 for i in range(self.rank))

    def is_unimodular(self) -> bool:
        return self.determinant() == 1

    def is_even_unimodular(self) -> bool:
        return self.is_even() and self.is_unimodular()

    def direct_sum(self, other: "Lattice") -> "Lattice":
        return direct_sum(self, other)

    def discriminant_group(self) -> "DiscriminantGroup":
        return discriminant_group(self)

    def with_label(self, label) -> "Lattice":
        return Lattice(self.gram, label=label, basis=self.basis)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.rank == other.rank and bool(np.array_equal(self.gram, other.gram))

    def __hash__(self):
        return hash((self.rank, tuple(int(x) for x in np.asarray(self.gram).ravel())))

    def __repr__(self):
        name = self.label or "?"
        return "Lattice(rank=%d, label=%r)" % (self.rank, name)


def _fits_int64(rows) -> bool:
    lim = 2**62
    return all(abs(x) < lim for r in rows for x in r)


# ---------------------------------------------------------------------------
# functional wrappers and constructions


def determinant(L: Lattice) -> int:
    return L.determinant()


def is_even_unimodular(L: Lattice) -> bool:
    return L.is_even_unimodular()


def direct_sum(L1: Lattice, L2: Lattice) -> Lattice:
    n1, n2 = L1.rank, L2.rank
    g = [[0] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            g[i][j] = int(L1.gram[i, j])
    for i in range(n2):
        for j in range(n2):
            g[n1 + i][n1 + j] = int(L2.gram[i, j])
    return Lattice(g)


def canonical_basis(generators, scale, gram=None, label=None) -> Lattice:
    """Lattice spanned by rational generator rows, in canonical form.

    ``scale * generators`` must be integral; ``gram`` is the inner-product
    matrix of the ambient coordinates (identity when omitted).  The output
    Gram is computed from the Hermite-normal-form basis, so two generating
    sets of the same lattice produce bit-identical results.
    """
    scale = int(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    rows = []
    for g in generators:
        row = []
        for x in g:
            v = x * scale
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError("generator %r is not integral at scale %d" % (g, scale))
                v = v.numerator
            vi = int(v)
            if vi != v:
                raise ValueError("generator %r is not integral at scale %d" % (g, scale))
            row.append(vi)
        rows.append(row)
    if not rows:
        raise ValueError("rank deficient")
    n = len(rows[0])
    basis = hnf(rows, n)
    if len(basis) < n:
        raise ValueError("rank deficient")
    if gram is None:
        ambient = [[int(i == j) for j in range(n)] for i in range(n)]
    else:
        ambient = _as_int_rows(np.asarray(gram).tolist())
    # gram of the scaled basis, then undo the scale exactly
    bg = _mat_mul(_mat_mul(basis, ambient), _transpose(basis))
    s2 = scale * scale
    out = []
    for r in bg:
        orow = []
        for x in r:
            if x % s2 != 0:
                raise ValueError("generated lattice has a non-integral Gram entry")
            orow.append(x // s2)
        out.append(orow)
    return Lattice(out, label=label, basis=(basis, scale))


def _mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    Bt = _transpose(B)
    return [[sum(A[i][t] * Bt[j][t] for t in range(k)) for j in range(m)] for i in range(n)]


def _transpose(A):
    return [list(col) for col in zip(*A)]


def sublattice_index(sub: Lattice, sup: Lattice) -> int:
    """Index of ``sub`` inside ``sup``; ``sub.basis`` holds the embedding."""
    if sub.basis is None:
        raise ValueError("sublattice carries no embedding")
    num, den = sub.basis
    if sub.rank != sup.rank:
        raise ValueError("ranks differ; index would be infinite")
    coords = []
    for row in num.tolist():
        crow = []
        for x in row:
            if x % den != 0:
                raise ValueError("not a sublattice")
            crow.append(x // den)
        coords.append(crow)
    d = det_exact(coords)
    if d == 0:
        raise ValueError("not a sublattice")
    g = _mat_mul(_mat_mul(coords, sup.gram_rows()), _transpose(coords))
    if g != sub.gram_rows():
        raise ValueError("embedding is inconsistent with the Gram matrix")
    return abs(d)


def intersect(sup: Lattice, sub: Lattice) -> Lattice:
    """Intersection of ``sup`` (as Z^n in its own coordinates) with ``sub``.

    ``sub.basis`` must express a full-rank lattice in ``sup``'s
    coordinates.  The result carries its embedding in ``sup``.
    """
    if sub.basis is None:
        raise ValueError("second lattice carries no embedding")
    num, den = sub.basis
    n = sup.rank
    if num.shape != (n, n):
        raise ValueError("embedding is not full rank")
    # dual-basis trick with exact rationals: dual(A cap B) = dual(A) + dual(B)
    # where dual is taken w.r.t. the standard pairing of coordinates.
    rows_num = [[int(x) for x in r] for r in num.tolist()]
    inv_t = _inverse_transpose_fraction(rows_num, den)
    lcm = 1
    for r in inv_t:
        for x in r:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
    stacked = [[lcm if i == j else 0 for j in range(n)] for i in range(n)]
    stacked += [[int(x * lcm) for x in r] for r in inv_t]
    sum_basis = hnf(stacked, n)  # basis of lcm * (dual(A)+dual(B))
    inter = _inverse_transpose_fraction(sum_basis, lcm)
    den2 = 1
    for r in inter:
        for x in r:
            den2 = den2 * x.denominator // _gcd(den2, x.denominator)
    int_rows = [[int(x * den2) for x in r] for r in inter]
    basis = hnf(int_rows, n)
    g = sup.gram_rows()
    bg = _mat_mul(_mat_mul(basis, g), _transpose(basis))
    d2 = den2 * den2
    out = [[x // d2 for x in r] for r in bg]
    if any(x % d2 != 0 for r in bg for x in r):
        raise ValueError("intersection has a non-integral Gram entry")
    return Lattice(out, basis=(basis, den2))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _inverse_transpose_fraction(rows, den):
    """(rows/den)^{-T} as a Fraction matrix."""
    n = len(rows)
    cols = []
    for i in range(n):
        e = [Fraction(den if j == i else 0) for j in range(n)]
        cols.append(_solve_fraction(rows, e))
    # _solve_fraction solves x @ rows = e, so the x's are rows of rows^{-1} * den;
    # transposing those gives (rows/den)^{-T} rows.
    return [[cols[j][i] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# discriminant groups

_DISC_ENUM_LIMIT = 1 << 16


@dataclass(frozen=True)
class DiscriminantGroup:
    """Finite quadratic group attached to a nondegenerate Gram matrix.

    ``invariant_factors`` lists the d_i > 1 with d_1 | d_2 | ...;
    ``qvalues`` maps each group element, written in coordinates over those
    factors, to the value of the induced quadratic form in Q/Z.
    """

    invariant_factors: tuple
    qvalues: dict

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def q(self, elt) -> Fraction:
        return self.qvalues[tuple(elt)]

    def bilinear(self, x, y) -> Fraction:
        """Induced pairing b(x, y) = q(x+y) - q(x) - q(y) mod 1."""
        s = tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))
        v = self.q(s) - self.q(tuple(x)) - self.q(tuple(y))
        return v % 1

    def elements(self):
        return list(self.qvalues.keys())


def discriminant_group(L: Lattice) -> DiscriminantGroup:
    g = L.gram_rows()
    det = det_exact(g)
    if det == 0:
        raise ValueError("gram is singular")
    d, U, _V = smith_normal_form(g)
    nontrivial = [(i, di) for i, di in enumerate(d) if di > 1]
    factors = tuple(di for _, di in nontrivial)
    order = 1
    for di in factors:
        order *= di
    if order > _DISC_ENUM_LIMIT:
        raise ValueError("discriminant group of order %d is too large to enumerate" % order)
    # generator i of Z/d_i lifts to (row i of U) / d_i in the dual lattice
    gens = [[Fraction(x, di) for x in U[i]] for i, di in nontrivial]
    qvalues = {}
    for elt in _product_ranges(factors):
        y = [Fraction(0)] * L.rank
        for a, gen in zip(elt, gens):
            if a:
                for j in range(L.rank):
                    y[j] += a * gen[j]
        qv = Fraction(0)
        for i in range(L.rank):
            if y[i]:
                for j in range(L.rank):
                    if y[j]:
                        qv += y[i] * g[i][j] * y[j]
        qvalues[elt] = (qv / 2) % 1
    return DiscriminantGroup(invariant_factors=factors, qvalues=qvalues)


def _product_ranges(factors):
    if not factors:
        yield ()
        return
    head, tail = factors[0], factors[1:]
    for a in range(head):
        for rest in _product_ranges(tail):
            yield (a,) + rest


# ---------------------------------------------------------------------------
# lattice file format

_LABEL_RE = re.compile(r"^[A-Za-z0-9^ _.+-]+$")


def to_text(L: Lattice) -> str:
    """Serialize to the store format; round-trips bit-exactly."""
    lines = []
    if L.label is not None:
        if not _LABEL_RE.match(L.label):
            raise ValueError("label %r contains unsupported characters" % L.label)
        lines.append("label: %s" % L.label)
    lines.append("rank: %d" % L.rank)
    lines.append("gram:")
    for row in L.gram_rows():
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Lattice:
    lines = [ln.rstrip("\n") for ln in text.splitlines()]
    label = None
    i = 0
    if i < len(lines) and lines[i].startswith("label: "):
        label = lines[i][len("label: "):]
        i += 1
    if i >= len(lines) or not lines[i].startswith("rank: "):
        raise ValueError("malformed lattice file: missing rank")
    rank = int(lines[i][len("rank: "):])
    i += 1
    if i >= len(lines) or lines[i] != "gram:":
        raise ValueError("malformed lattice file: missing gram")
    i += 1
    rows = []
    for k in range(rank):
        if i + k >= len(lines):
            raise ValueError("malformed lattice file: truncated gram")
        row = [int(x) for x in lines[i + k].split()]
        if len(row) != rank:
            raise ValueError("malformed lattice file: row width %d != rank %d" % (len(row), rank))
        rows.append(row)
    return Lattice(rows, label=label)


def save_lattice(L: Lattice, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(to_text(L))


def load_lattice(path) -> Lattice:
    with open(path, "r", encoding="ascii") as fh:
        return from_text(fh.read())
