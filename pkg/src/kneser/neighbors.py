"""Kneser p-neighbors of even unimodular lattices.

For an even unimodular lattice L and a prime p, the p-neighbors of L
correspond to the isotropic lines of the quadratic space L/pL: given a
line P with a representative x, lift x to v in L with v.v = 0 mod 2p^2,
let H = {y in L : y.(Gv) = 0 mod p}, and set

    L(P) = H + Z (v/p).

L(P) is again even unimodular and meets L in index p.  Everything below
works in coordinates relative to L's basis; neighbors carry their
embedding as a basis matrix with denominator p.

The quadratic form on L/pL is q(x) = x.x/2 mod p, at p = 2 included, so
a line representative is isotropic exactly when x.x = 0 mod 2p.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import hnf_mod
from .lattice import Lattice

__all__ = [
    "IsotropicLine",
    "line_count",
    "isotropic_lines",
    "sample_isotropic_line",
    "sample_isotropic_lines",
    "lift_isotropic",
    "neighbor",
    "MAX_PRIME",
]

# int64 stays exact through the mod-p^2 Hermite pipeline for p below 2^8
MAX_PRIME = 251

_CHUNK = 1 << 16


def _check_prime(p: int) -> int:
    p = int(p)
    if p < 2:
        raise ValueError("p must be a prime")
    if p > MAX_PRIME:
        raise ValueError("p > %d would overflow the exact int64 pipeline" % MAX_PRIME)
    k = 2
    while k * k <= p:
        if p % k == 0:
            raise ValueError("p must be a prime")
        k += 1
    return p


@dataclass(frozen=True)
class IsotropicLine:
    """Line of L/pL, stored as its normalized representative.

    ``rep`` has entries in [0, p) and its first nonzero entry is 1, so
    equal lines compare equal.
    """

    p: int
    rep: tuple

    def __post_init__(self):
        p = _check_prime(self.p)
        rep = tuple(int(x) for x in self.rep)
        if any(x < 0 or x >= p for x in rep):
            raise ValueError("representative entries must lie in [0, p)")
        lead = next((x for x in rep if x != 0), None)
        if lead is None:
            raise ValueError("the zero vector spans no line")
        if lead != 1:
            raise ValueError("representative must be normalized to leading 1")
        object.__setattr__(self, "rep", rep)

    @property
    def rank(self) -> int:
        return len(self.rep)


def line_count(rank: int, p: int) -> int:
    """Number of isotropic lines in a hyperbolic F_p space of even rank."""
    n, p = int(rank), int(p)
    return sum(p**i for i in range(n - 1)) + p ** (n // 2 - 1)


def _gram_int64(L: Lattice) -> np.ndarray:
    return np.asarray(L.gram_rows(), dtype=np.int64)


def isotropic_lines(L: Lattice, p: int):
    """Yield every isotropic line of L/pL in lex order of representatives.

    Streams in chunks, so rank-24 enumerations do not materialize p^23
    candidates at once.
    """
    p = _check_prime(p)
    G = _gram_int64(L)
    n = L.rank
    mod = 2 * p
    for lead in range(n - 1, -1, -1):
        d = n - 1 - lead
        total = p**d
        for start in range(0, total, _CHUNK):
            stop = min(start + _CHUNK, total)
            idx = np.arange(start, stop, dtype=np.int64)
            V = np.zeros((len(idx), n), dtype=np.int64)
            V[:, lead] = 1
            rem = idx
            for j in range(n - 1, lead, -1):
                rem, dig = np.divmod(rem, p)
                V[:, j] = dig
            norms = (V @ G * V).sum(axis=1)
            for row in V[norms % mod == 0]:
                yield IsotropicLine(p, tuple(int(x) for x in row))


def _normalize_rows(V: np.ndarray, p: int) -> np.ndarray:
    """Scale nonzero rows of V (mod p) so the first nonzero entry is 1."""
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    lead_idx = np.argmax(V != 0, axis=1)
    lead = V[np.arange(len(V)), lead_idx]
    return (V * inv[lead][:, None]) % p


def sample_isotropic_lines(L: Lattice, p: int, count: int, rng) -> np.ndarray:
    """Uniform isotropic lines as an array of normalized representatives.

    Rejection sampling: uniform vectors of F_p^n filtered for isotropy
    are uniform over lines, because every line contains the same number
    of nonzero vectors.
    """
    p = _check_prime(p)
    G = _gram_int64(L)
    n = L.rank
    mod = 2 * p
    out = []
    got = 0
    while got < count:
        batch = max(256, 2 * p * (count - got))
        V = rng.integers(0, p, size=(batch, n), dtype=np.int64)
        V = V[np.any(V != 0, axis=1)]
        if len(V) == 0:
            continue
        norms = (V @ G * V).sum(axis=1)
        V = V[norms % mod == 0]
        if len(V) == 0:
            continue
        V = _normalize_rows(V, p)
        take = min(len(V), count - got)
        out.append(V[:take])
        got += take
    return np.concatenate(out, axis=0)


def sample_isotropic_line(L: Lattice, p: int, rng) -> IsotropicLine:
    rep = sample_isotropic_lines(L, p, 1, rng)[0]
    return IsotropicLine(p, tuple(int(x) for x in rep))


def lift_isotropic(L: Lattice, line: IsotropicLine) -> np.ndarray:
    """Lift a line representative to v in L with v.v = 0 mod 2p^2.

    One Hensel step: v = x + p t e_u with u the first coordinate where
    Gx is a unit mod p and t chosen to kill the norm defect.  The result
    is reduced into [0, p^2); that keeps v on the line and, because the
    lattice is even, keeps the norm condition too.
    """
    p = line.p
    G = _gram_int64(L)
    if line.rank != L.rank:
        raise ValueError("line and lattice ranks differ")
    x = np.array(line.rep, dtype=np.int64)
    norm = int(x @ G @ x)
    if norm % (2 * p) != 0:
        raise ValueError("line is not isotropic")
    w = G @ x
    u = -1
    for i in range(L.rank):
        if w[i] % p != 0:
            u = i
            break
    if u < 0:
        raise ValueError("Gx vanishes mod p; lattice is not unimodular at p")
    a = (norm // (2 * p)) % p
    t = (-a * pow(int(w[u]) % p, p - 2, p)) % p
    v = x.copy()
    v[u] += p * t
    v %= p * p
    assert int(v @ G @ v) % (2 * p * p) == 0
    return v


def _line_of_vector(v: np.ndarray, p: int) -> tuple:
    r = v % p
    lead = next((int(x) for x in r if x != 0), 0)
    if lead == 0:
        raise ValueError("lift lies in pL")
    inv = pow(lead, p - 2, p)
    return tuple(int(x) for x in (r * inv) % p)


def neighbor(L: Lattice, line: IsotropicLine, lift=None) -> Lattice:
    """The p-neighbor of L at an isotropic line.

    The result's ``basis`` expresses it in L's coordinates with
    denominator p.  Exactness comes for free: the Hermite pivot product
    must equal p^rank, which forces determinant 1, and the Gram matrix
    must divide by p^2 and have even diagonal, which forces evenness.
    """
    p = line.p
    n = L.rank
    G = _gram_int64(L)
    if lift is None:
        v = lift_isotropic(L, line)
    else:
        v = np.array([int(t) for t in lift], dtype=np.int64)
        if v.shape != (n,):
            raise ValueError("lift has wrong shape")
        if int(v @ G @ v) % (2 * p * p) != 0:
            raise ValueError("lift norm is not divisible by 2p^2")
        if _line_of_vector(v, p) != line.rep:
            raise ValueError("lift does not lie on the line")
    w = (G @ v) % p
    k = -1
    for i in range(n):
        if w[i] != 0:
            k = i
            break
    if k < 0:
        raise ValueError("Gv vanishes mod p; lattice is not unimodular at p")
    inv_wk = pow(int(w[k]), p - 2, p)
    p2 = p * p
    stack = np.zeros((2 * n + 1, n), dtype=np.int64)
    r = 0
    for i in range(n):
        if i == k:
            continue
        c = (int(w[i]) * inv_wk) % p
        stack[r, i] = p
        stack[r, k] = (-p * c) % p2
        r += 1
    stack[r] = v % p2
    r += 1
    for j in range(n):
        stack[r, j] = p2
        r += 1
    H, rank = hnf_mod(stack[:r], p2)
    if rank != n:
        raise AssertionError("neighbor basis is rank deficient")
    diag = 1
    for i in range(n):
        diag *= int(H[i, i])
    if diag != p**n:
        raise AssertionError("Hermite pivot product %d != p^%d" % (diag, n))
    gram2 = H @ G @ H.T
    if np.any(gram2 % p2 != 0):
        raise AssertionError("neighbor Gram is not divisible by p^2")
    gram = gram2 // p2
    if np.any(gram.diagonal() % 2 != 0):
        raise AssertionError("neighbor Gram has odd diagonal")
    return Lattice(gram, basis=(H, p))
