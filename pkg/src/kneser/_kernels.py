"""Compiled kernels for lattice reduction and vector enumeration.

Everything here follows one discipline: floating point may steer (basis
reduction decisions, search-tree pruning) but never decide.  Every
counted or emitted vector has its norm recomputed in int64 before it is
accepted, and the pruning bound carries a margin so float slop can only
admit extra candidates, never hide real ones.
"""

import math

import numpy as np
from numba import njit

__all__ = ["gso_from_gram", "lll_gram", "enum_core", "count_pairs_with_dot"]


@njit(cache=True)
def gso_from_gram(W):
    """Gram-Schmidt data (mu, |b*|^2) from a float Gram matrix."""
    n = W.shape[0]
    mu = np.zeros((n, n), np.float64)
    b2 = np.zeros(n, np.float64)
    for i in range(n):
        for j in range(i):
            s = W[i, j]
            for l in range(j):
                s -= mu[i, l] * mu[j, l] * b2[l]
            mu[i, j] = s / b2[j]
        s = W[i, i]
        for l in range(i):
            s -= mu[i, l] * mu[i, l] * b2[l]
        b2[i] = s
    return mu, b2


@njit(cache=True)
def lll_gram(G):
    """LLL-reduce a positive definite int64 Gram matrix.

    Returns ``(W, U)`` with ``W = U G U^T`` exactly (integer row
    operations mirrored on both); the float Gram-Schmidt data only picks
    which operations to do, so a drifting decision can cost time but not
    correctness.  An iteration cap guarantees termination either way.
    """
    n = G.shape[0]
    W = G.copy()
    U = np.eye(n, dtype=np.int64)
    delta = 0.99
    mu, b2 = gso_from_gram(W.astype(np.float64))
    k = 1
    iters = 0
    maxiter = 10000 + 200 * n * n
    while k < n and iters < maxiter:
        iters += 1
        for j in range(k - 1, -1, -1):
            q = np.rint(mu[k, j])
            if q != 0.0:
                qi = np.int64(q)
                wkk = W[k, k] - 2 * qi * W[k, j] + qi * qi * W[j, j]
                for t in range(n):
                    if t != k:
                        W[k, t] -= qi * W[j, t]
                        W[t, k] = W[k, t]
                W[k, k] = wkk
                for t in range(n):
                    U[k, t] -= qi * U[j, t]
                for l in range(j):
                    mu[k, l] -= q * mu[j, l]
                mu[k, j] -= q
        if b2[k] >= (delta - mu[k, k - 1] * mu[k, k - 1]) * b2[k - 1]:
            k += 1
        else:
            for t in range(n):
                tmp = W[k - 1, t]
                W[k - 1, t] = W[k, t]
                W[k, t] = tmp
            for t in range(n):
                tmp = W[t, k - 1]
                W[t, k - 1] = W[t, k]
                W[t, k] = tmp
            for t in range(n):
                tmp = U[k - 1, t]
                U[k - 1, t] = U[k, t]
                U[k, t] = tmp
            mu, b2 = gso_from_gram(W.astype(np.float64))
            if k > 1:
                k -= 1
    return W, U


@njit(cache=True)
def enum_core(W, mu, b2, bound, mode, target, counts, out, maxout):
    """Walk the Fincke-Pohst tree over vectors with norm <= ``bound``.

    One representative per antipodal pair is visited (topmost nonzero
    coordinate positive) and each accepted leaf stands for both signs.

    mode 0: add 2 to ``counts[norm]`` per pair; returns 0.
    mode 1: write both signs of every vector with exact norm ``target``
            into ``out`` (coordinates in the reduced basis); returns the
            number written, or -1 if ``maxout`` would be exceeded.

    Exact integer partials (``wx``, ``qp``) ride along the tree walk, so
    the leaf norm costs O(1) and is exact regardless of float error.
    """
    n = W.shape[0]
    x = np.zeros(n, np.int64)
    lo = np.zeros(n, np.int64)
    hi = np.zeros(n, np.int64)
    cs = np.zeros(n, np.float64)
    rho = np.zeros(n + 1, np.float64)
    qp = np.zeros(n + 1, np.int64)
    wx = np.zeros((n + 1, n), np.int64)
    za = np.zeros(n, np.uint8)
    eps = 0.5
    nfound = 0

    k = n - 1
    za[k] = 1
    cs[k] = 0.0
    r = math.sqrt((bound + eps) / b2[k])
    lo[k] = np.int64(math.ceil(-r - 1e-9))
    hi[k] = np.int64(math.floor(r + 1e-9))
    if lo[k] < 0:
        lo[k] = 0
    x[k] = lo[k] - 1

    while True:
        x[k] += 1
        if x[k] > hi[k]:
            k += 1
            if k >= n:
                break
            continue
        if k == 0:
            v0 = x[0]
            norm = qp[1] + v0 * (2 * wx[1, 0] + v0 * W[0, 0])
            if 0 < norm <= bound:
                if mode == 0:
                    counts[norm] += 2
                elif norm == target:
                    if nfound + 2 > maxout:
                        return -1
                    for t in range(n):
                        out[nfound, t] = x[t]
                        out[nfound + 1, t] = -x[t]
                    nfound += 2
            continue
        d = x[k] - cs[k]
        rk = rho[k + 1] + b2[k] * d * d
        if rk > bound + eps:
            continue
        rho[k] = rk
        vk = x[k]
        for t in range(n):
            wx[k, t] = wx[k + 1, t] + vk * W[k, t]
        qp[k] = qp[k + 1] + vk * (2 * wx[k + 1, k] + vk * W[k, k])
        kk = k - 1
        za[kk] = 1 if (za[k] == 1 and vk == 0) else 0
        c = 0.0
        for i in range(kk + 1, n):
            c -= mu[i, kk] * x[i]
        cs[kk] = c
        rem = bound + eps - rk
        if rem < 0.0:
            rem = 0.0
        r = math.sqrt(rem / b2[kk])
        lo[kk] = np.int64(math.ceil(c - r - 1e-9))
        hi[kk] = np.int64(math.floor(c + r + 1e-9))
        if za[kk] == 1 and lo[kk] < 0:
            lo[kk] = 0
        x[kk] = lo[kk] - 1
        k = kk
    return nfound


@njit(cache=True)
def _echelon(a, m, n):
    """Upper-echelon form by integer row operations, in place.

    Returns the number of nonzero rows.  No modular reduction: exact,
    but intermediates can grow, so callers keep the input entries small.
    """
    top = 0
    for col in range(n):
        piv = -1
        for i in range(top, m):
            if a[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != top:
            for j in range(n):
                tmp = a[top, j]
                a[top, j] = a[piv, j]
                a[piv, j] = tmp
        for i in range(top + 1, m):
            while a[i, col] != 0:
                q = a[top, col] // a[i, col]
                for j in range(n):
                    a[top, j] -= q * a[i, j]
                    tmp = a[top, j]
                    a[top, j] = a[i, j]
                    a[i, j] = tmp
        if a[top, col] < 0:
            for j in range(n):
                a[top, j] = -a[top, j]
        top += 1
        if top == m:
            break
    return top


@njit(cache=True)
def _ext_gcd(a, b):
    """(g, u, v) with u*a + v*b = g = gcd(a, b) > 0, for a, b > 0."""
    r0, r1 = a, b
    s0, s1 = np.int64(1), np.int64(0)
    t0, t1 = np.int64(0), np.int64(1)
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


@njit(cache=True)
def _hnf_modular(A, mod):
    """Hermite form of  span(A) + mod * Z^n,  all entries kept in [0, mod).

    One sweep over columns.  Each column's gcd pivot (fused subtract-swap
    Euclid over the active rows, tails re-reduced every step) is combined
    with the virtual row  mod * e_col  through an extended gcd; the
    unimodular complement of that combination has a zero in the pivot
    column and stays active, so nothing of the span is lost.  Every
    intermediate is bounded by mod**2, which keeps int64 exact for
    mod up to 2**16.
    """
    m, n = A.shape
    a = np.zeros((m + n, n), np.int64)
    for i in range(m):
        for j in range(n):
            a[i, j] = A[i, j] % mod
    nact = m
    top = 0
    for col in range(n):
        piv = -1
        for i in range(top, nact):
            if a[i, col] != 0:
                piv = i
                break
        if piv < 0:
            # no active row touches this column: the virtual row is the
            # pivot; displace the current top row to the end, still active
            for j in range(n):
                a[nact, j] = a[top, j]
            nact += 1
            for j in range(n):
                a[top, j] = 0
            a[top, col] = mod
            top += 1
            continue
        if piv != top:
            for j in range(n):
                tmp = a[top, j]
                a[top, j] = a[piv, j]
                a[piv, j] = tmp
        for i in range(top + 1, nact):
            while a[i, col] != 0:
                q = a[top, col] // a[i, col]
                for j in range(col, n):
                    a[top, j] -= q * a[i, j]
                    tmp = a[top, j]
                    a[top, j] = a[i, j]
                    a[i, j] = tmp
                for j in range(col + 1, n):
                    a[top, j] %= mod
                    a[i, j] %= mod
        av = a[top, col]
        g, u, _ = _ext_gcd(av, mod)
        minv = mod // g
        # remnant row: (mod/g) * top row, zero in the pivot column
        for j in range(col + 1, n):
            a[nact, j] = (minv * a[top, j]) % mod
        a[nact, col] = 0
        nact += 1
        for j in range(col + 1, n):
            a[top, j] = (u * a[top, j]) % mod
        a[top, col] = g
        top += 1
    # entries above each pivot into [0, pivot); re-reduce tails so no
    # intermediate exceeds mod**2
    for t in range(n):
        d = a[t, t]
        for i in range(t):
            q = a[i, t] // d
            if q != 0:
                for j in range(t, n):
                    a[i, j] -= q * a[t, j]
                for j in range(t + 1, n):
                    a[i, j] %= mod
    return a[:n].copy()


@njit(cache=True)
def hnf_mod(A, mod):
    """Row-style Hermite normal form of an int64 matrix.

    ``mod > 0`` computes the form of  span(A) + mod * Z^n  with all
    intermediates bounded by mod**2 (exact in int64 for mod <= 2**16);
    the result then always has full rank n.  ``mod == 0`` is the plain
    integer Hermite form of the row span.

    Returns ``(H, r)``: ``H`` is n x n with the echelon rows on top,
    ``r`` is the rank.
    """
    m, n = A.shape
    if mod > 0:
        return _hnf_modular(A, mod), n
    top = _echelon(A, m, n)
    H = np.zeros((n, n), np.int64)
    r = 0
    ridx = np.full(n, -1, np.int64)
    for i in range(top):
        col = -1
        for j in range(n):
            if A[i, j] != 0:
                col = j
                break
        if col >= 0:
            for j in range(n):
                H[r, j] = A[i, j]
            ridx[r] = col
            r += 1
    for t in range(r):
        col = ridx[t]
        d = H[t, col]
        for i in range(t):
            q = H[i, col] // d
            if q != 0:
                for j in range(n):
                    H[i, j] -= q * H[t, j]
    return H, r


@njit(cache=True)
def bfs_component(roots, G, limit):
    """Size of the non-orthogonality component of roots[0], capped.

    Stops and returns as soon as the count exceeds ``limit``.
    """
    k = roots.shape[0]
    n = roots.shape[1]
    RG = np.zeros((k, n), np.int64)
    for i in range(k):
        for j in range(n):
            s = np.int64(0)
            for t in range(n):
                s += roots[i, t] * G[t, j]
            RG[i, j] = s
    visited = np.zeros(k, np.uint8)
    stack = np.empty(k, np.int64)
    stack[0] = 0
    top = 1
    visited[0] = 1
    cnt = 1
    while top > 0:
        top -= 1
        i = stack[top]
        for j in range(k):
            if visited[j] == 0:
                s = np.int64(0)
                for t in range(n):
                    s += RG[i, t] * roots[j, t]
                if s != 0:
                    visited[j] = 1
                    cnt += 1
                    if cnt > limit:
                        return cnt
                    stack[top] = j
                    top += 1
    return cnt


@njit(cache=True)
def count_pairs_with_dot(XG, Y, c):
    """Number of index pairs (i, j) with <XG[i], Y[j]> == c."""
    tot = 0
    for i in range(XG.shape[0]):
        for j in range(Y.shape[0]):
            s = np.int64(0)
            for t in range(XG.shape[1]):
                s += XG[i, t] * Y[j, t]
            if s == c:
                tot += 1
    return tot
