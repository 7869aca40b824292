"""Neighbor construction against brute-force counting oracles."""

import numpy as np
import pytest

from kneser.lattice import Lattice, intersect, is_even_unimodular, sublattice_index
from kneser.neighbors import (
    IsotropicLine,
    isotropic_lines,
    lift_isotropic,
    line_count,
    neighbor,
    sample_isotropic_line,
    sample_isotropic_lines,
)
from kneser.shortvec import theta_prefix, vectors_of_norm

from test_lattice import cartan_E
from test_shortvec import glue_e16


def brute_force_line_count(gram, p):
    """Count isotropic lines by scanning all of F_p^n in chunks."""
    G = np.array(gram, dtype=np.int64)
    n = len(gram)
    total = p**n
    hits = 0
    for start in range(0, total, 1 << 16):
        stop = min(start + (1 << 16), total)
        idx = np.arange(start, stop, dtype=np.int64)
        V = np.zeros((len(idx), n), dtype=np.int64)
        rem = idx
        for j in range(n - 1, -1, -1):
            rem, dig = np.divmod(rem, p)
            V[:, j] = dig
        nonzero = np.any(V != 0, axis=1)
        norms = (V @ G * V).sum(axis=1)
        hits += int((nonzero & (norms % (2 * p) == 0)).sum())
    assert hits % (p - 1) == 0
    return hits // (p - 1)


E8 = Lattice(cartan_E(8), label="E8")


# ---------------------------------------------------------------------------
# the count contract


def test_line_count_closed_form():
    assert line_count(8, 2) == 135
    assert line_count(8, 3) == 1120
    assert line_count(8, 5) == 19656
    assert line_count(16, 2) == 32895
    assert line_count(16, 3) == 7176640
    assert line_count(24, 2) == 8390655


@pytest.mark.parametrize("p", [2, 3, 5])
def test_e8_lines_match_formula_and_brute_force(p):
    lines = list(isotropic_lines(E8, p))
    assert len(lines) == line_count(8, p)
    assert len(lines) == brute_force_line_count(cartan_E(8), p)
    reps = [l.rep for l in lines]
    assert reps == sorted(reps)
    assert len(set(reps)) == len(reps)
    G = np.array(cartan_E(8), dtype=np.int64)
    for l in lines[:: max(1, len(lines) // 50)]:
        x = np.array(l.rep, dtype=np.int64)
        assert int(x @ G @ x) % (2 * p) == 0
        lead = next(v for v in l.rep if v != 0)
        assert lead == 1


def test_rank16_line_count():
    e16 = glue_e16()
    lines = list(isotropic_lines(e16, 2))
    assert len(lines) == 32895
    assert brute_force_line_count(e16.gram_rows(), 2) == 32895


# ---------------------------------------------------------------------------
# lifting


@pytest.mark.parametrize("p", [2, 3])
def test_lift_conditions(p):
    for i, line in enumerate(isotropic_lines(E8, p)):
        if i >= 40:
            break
        v = lift_isotropic(E8, line)
        G = np.array(cartan_E(8), dtype=np.int64)
        assert int(v @ G @ v) % (2 * p * p) == 0
        assert np.all(v >= 0) and np.all(v < p * p)
        assert tuple(int(x) for x in v % p) == line.rep
        assert np.any(v % p != 0)


def test_lift_exercises_hensel_correction():
    G = np.array(cartan_E(8), dtype=np.int64)
    corrected = 0
    for line in isotropic_lines(E8, 2):
        x = np.array(line.rep, dtype=np.int64)
        if int(x @ G @ x) % 8 != 0:
            v = lift_isotropic(E8, line)
            assert int(v @ G @ v) % 8 == 0
            corrected += 1
    assert corrected > 0


def test_lift_rejects_anisotropic_line():
    # (1, 0, ..., 0) has norm 2, not divisible by 2p
    bad = IsotropicLine(3, (1,) + (0,) * 7)
    with pytest.raises(ValueError, match="not isotropic"):
        lift_isotropic(E8, bad)


# ---------------------------------------------------------------------------
# the neighbor itself


def test_all_2_neighbors_of_e8_are_e8():
    for i, line in enumerate(isotropic_lines(E8, 2)):
        N = neighbor(E8, line)
        assert is_even_unimodular(N)
        assert len(vectors_of_norm(N, 2)) == 240
        if i < 8:
            assert sublattice_index(intersect(E8, N), E8) == 2


@pytest.mark.parametrize("p", [3, 5])
def test_sampled_p_neighbors_of_e8(p):
    rng = np.random.default_rng(7)
    for _ in range(4):
        line = sample_isotropic_line(E8, p, rng)
        N = neighbor(E8, line)
        assert is_even_unimodular(N)
        assert theta_prefix(N, 1) == (1, 240)
        assert sublattice_index(intersect(E8, N), E8) == p


def test_neighbor_of_neighbor_composes():
    line = next(iter(isotropic_lines(E8, 2)))
    N = neighbor(E8, line)
    again = [l for l in isotropic_lines(N, 2)]
    assert len(again) == 135
    NN = neighbor(N, again[17])
    assert is_even_unimodular(NN)


@pytest.mark.parametrize("p", [2, 3])
def test_neighbor_independent_of_lift(p):
    G = np.array(cartan_E(8), dtype=np.int64)
    count = 0
    for line in isotropic_lines(E8, p):
        if count >= 10:
            break
        count += 1
        v = lift_isotropic(E8, line)
        w = (G @ v) % p
        k = next(i for i in range(8) if w[i] != 0)
        i2 = next(i for i in range(8) if i != k)
        c = (int(w[i2]) * pow(int(w[k]), p - 2, p)) % p
        z = np.zeros(8, dtype=np.int64)
        z[i2], z[k] = 1, -c
        assert int(z @ G @ v) % p == 0
        v2 = v + p * z
        N1 = neighbor(E8, line)
        N2 = neighbor(E8, line, lift=v2)
        assert np.array_equal(N1.gram, N2.gram)
        assert np.array_equal(N1.basis[0], N2.basis[0])
        assert N1.basis[1] == N2.basis[1]


def test_neighbor_rejects_bad_lifts():
    line = next(iter(isotropic_lines(E8, 3)))
    v = lift_isotropic(E8, line)
    with pytest.raises(ValueError, match="norm"):
        neighbor(E8, line, lift=v + 1)  # breaks the norm condition
    other = [l for l in isotropic_lines(E8, 3)][5]
    w = lift_isotropic(E8, other)
    with pytest.raises(ValueError, match="line"):
        neighbor(E8, line, lift=w)


# ---------------------------------------------------------------------------
# line objects and sampling


def test_isotropic_line_validation():
    with pytest.raises(ValueError):
        IsotropicLine(3, (2, 0, 1))  # leading entry not 1
    with pytest.raises(ValueError):
        IsotropicLine(3, (0, 4, 1))  # out of range
    with pytest.raises(ValueError):
        IsotropicLine(3, (0, 0, 0))
    with pytest.raises(ValueError):
        IsotropicLine(4, (1, 0, 0))  # not prime
    with pytest.raises(ValueError):
        IsotropicLine(257, (1,) * 8)  # beyond the exact range


def test_sampling_is_deterministic_and_valid():
    a = sample_isotropic_lines(E8, 3, 64, np.random.default_rng(123))
    b = sample_isotropic_lines(E8, 3, 64, np.random.default_rng(123))
    assert np.array_equal(a, b)
    G = np.array(cartan_E(8), dtype=np.int64)
    norms = (a @ G * a).sum(axis=1)
    assert np.all(norms % 6 == 0)
    lead_idx = np.argmax(a != 0, axis=1)
    assert np.all(a[np.arange(len(a)), lead_idx] == 1)


def test_sampling_uniform_chi_square():
    # 1e5 draws over the 135 lines of E8 mod 2; bound is mean + 5 sigma
    draws = sample_isotropic_lines(E8, 2, 100_000, np.random.default_rng(2024))
    seen = {}
    for row in draws:
        seen[tuple(int(x) for x in row)] = seen.get(tuple(int(x) for x in row), 0) + 1
    assert len(seen) == 135
    expect = 100_000 / 135
    chi2 = sum((c - expect) ** 2 / expect for c in seen.values())
    assert chi2 < 134 + 5 * (2 * 134) ** 0.5
