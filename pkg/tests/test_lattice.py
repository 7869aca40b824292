"""Exact-arithmetic checks for the lattice core.

Oracles that the implementation must match:

* rational Gaussian elimination for determinants (independent of the
  Bareiss code path);
* textbook Cartan matrices with their known determinants and
  discriminant groups;
* brute-force membership scans for small intersections.
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kneser.lattice import (
    Lattice,
    canonical_basis,
    det_exact,
    determinant,
    direct_sum,
    discriminant_group,
    from_text,
    hnf,
    intersect,
    is_even_unimodular,
    smith_normal_form,
    sublattice_index,
    to_text,
)


# ---------------------------------------------------------------------------
# oracle helpers


def det_gauss(mat):
    """Determinant over Q by straightforward elimination."""
    a = [[Fraction(int(x)) for x in row] for row in mat]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    assert det.denominator == 1
    return int(det)


def cartan_A(n):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = -1
    return g


def cartan_D(n):
    # path 0..n-3 with both n-2 and n-1 attached to n-3
    assert n >= 3
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
    for i in range(n - 3):
        g[i][i + 1] = g[i + 1][i] = -1
    g[n - 3][n - 2] = g[n - 2][n - 3] = -1
    g[n - 3][n - 1] = g[n - 1][n - 3] = -1
    return g


def cartan_E(n):
    # E_n as A_{n-1} chain 0..n-2 plus node n-1 attached to node 2
    assert n in (6, 7, 8)
    g = cartan_A(n - 1)
    for row in g:
        row.append(0)
    g.append([0] * n)
    g[n - 1][n - 1] = 2
    g[2][n - 1] = g[n - 1][2] = -1
    return g


int_entries = st.integers(min_value=-30, max_value=30)


def square_matrices(max_n=5):
    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: st.lists(
            st.lists(int_entries, min_size=n, max_size=n), min_size=n, max_size=n
        )
    )


# ---------------------------------------------------------------------------
# determinants


@given(square_matrices())
@settings(max_examples=150, deadline=None)
def test_det_matches_gauss_oracle(mat):
    assert det_exact(mat) == det_gauss(mat)


@pytest.mark.parametrize(
    "gram, det",
    [
        (cartan_A(1), 2),
        (cartan_A(2), 3),
        (cartan_A(3), 4),
        (cartan_A(24), 25),
        (cartan_D(4), 4),
        (cartan_D(8), 4),
        (cartan_D(24), 4),
        (cartan_E(6), 3),
        (cartan_E(7), 2),
        (cartan_E(8), 1),
    ],
)
def test_root_lattice_determinants(gram, det):
    assert determinant(Lattice(gram)) == det


def test_e8_is_even_unimodular():
    assert is_even_unimodular(Lattice(cartan_E(8)))


@pytest.mark.parametrize("gram", [cartan_A(1), cartan_D(24), cartan_E(7)])
def test_root_lattices_not_unimodular(gram):
    assert not is_even_unimodular(Lattice(gram))


def test_odd_unimodular_rejected():
    assert not is_even_unimodular(Lattice(np.eye(8, dtype=int)))


def test_gram_validation():
    with pytest.raises(ValueError):
        Lattice([[2, 1], [0, 2]])  # not symmetric
    with pytest.raises(ValueError):
        Lattice([[2, 1, 0], [1, 2, 0]])  # not square


def test_direct_sum_blocks_and_det():
    L = direct_sum(Lattice(cartan_E(8)), Lattice(cartan_A(2)))
    assert L.rank == 10
    assert determinant(L) == 1 * 3
    assert L.gram[0, 9] == 0 and L.gram[9, 0] == 0
    assert L.gram[8, 9] == -1


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


@given(square_matrices(4))
@settings(max_examples=120, deadline=None)
def test_hnf_diag_product_is_abs_det(mat):
    h = hnf(mat)
    n = len(mat)
    d = det_gauss(mat)
    if d == 0:
        assert len(h) < n
    else:
        prod = 1
        for i, row in enumerate(h):
            piv = row[i]
            assert piv > 0
            for r in h[:i]:
                assert 0 <= r[i] < piv
            prod *= piv
        assert prod == abs(d)


def test_hnf_canonical_under_row_ops():
    base = [[2, 3, 1], [0, 4, 5], [1, 1, 1]]
    mixed = [
        [r + 2 * s for r, s in zip(base[0], base[2])],
        base[2],
        [r - s for r, s in zip(base[1], base[0])],
        base[1],
    ]
    assert hnf(base) == hnf(mixed)


@given(square_matrices(4))
@settings(max_examples=100, deadline=None)
def test_snf_transforms(mat):
    d, U, V = smith_normal_form(mat)
    n = len(mat)
    assert abs(det_gauss(U)) == 1
    assert abs(det_gauss(V)) == 1
    prod = np.array(
        [[sum(int(U[i][k]) * int(mat[k][j]) for k in range(n)) for j in range(n)]
         for i in range(n)],
        dtype=object,
    )
    prod = prod @ np.array(V, dtype=object)
    for i in range(n):
        for j in range(n):
            expect = d[i] if (i == j and i < len(d)) else 0
            assert prod[i, j] == expect
    for a, b in zip(d, d[1:]):
        assert a > 0 and b % a == 0


# ---------------------------------------------------------------------------
# canonical_basis


def test_canonical_basis_identity():
    L = canonical_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1)
    assert np.array_equal(L.gram, np.eye(3, dtype=int))
    num, den = L.basis
    assert den == 1
    assert np.array_equal(num, np.eye(3, dtype=int))


def _d8_plus_generators():
    gens = []
    for i in range(7):
        row = [0] * 8
        row[i], row[i + 1] = 1, -1
        gens.append([Fraction(x) for x in row])
    row = [0] * 8
    row[6], row[7] = 1, 1
    gens.append([Fraction(x) for x in row])
    gens.append([Fraction(1, 2)] * 8)
    return gens


def test_canonical_basis_builds_e8_from_glue():
    L = canonical_basis(_d8_plus_generators(), 2)
    assert L.rank == 8
    assert is_even_unimodular(L)


def test_canonical_basis_idempotent():
    L = canonical_basis(_d8_plus_generators(), 2)
    num, den = L.basis
    gens = [[Fraction(int(x), den) for x in row] for row in num.tolist()]
    L2 = canonical_basis(gens, den)
    assert np.array_equal(L.gram, L2.gram)
    assert np.array_equal(L.basis[0], L2.basis[0])
    assert L.basis[1] == L2.basis[1]


def test_canonical_basis_ignores_generator_presentation():
    gens = _d8_plus_generators()
    shuffled = gens[::-1] + [[a + b for a, b in zip(gens[0], gens[3])]]
    L1 = canonical_basis(gens, 2)
    L2 = canonical_basis(shuffled, 2)
    assert np.array_equal(L1.gram, L2.gram)
    assert np.array_equal(L1.basis[0], L2.basis[0])


def test_canonical_basis_rank_deficient():
    with pytest.raises(ValueError, match="rank deficient"):
        canonical_basis([[1, 2, 3], [2, 4, 6], [0, 0, 0]], 1)


def test_canonical_basis_rejects_non_integral_scale():
    with pytest.raises(ValueError):
        canonical_basis([[Fraction(1, 3), 0], [0, 1]], 2)


def test_canonical_basis_rejects_fractional_gram():
    with pytest.raises(ValueError):
        canonical_basis([[Fraction(1, 2), 0], [0, 1]], 2)


# ---------------------------------------------------------------------------
# sublattice index


def test_sublattice_index_basic():
    Z2 = Lattice([[1, 0], [0, 1]])
    sub = canonical_basis([[1, 1], [1, -1]], 1)
    assert sublattice_index(sub, Z2) == 2


@given(
    st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3),
    st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3),
)
@settings(max_examples=60, deadline=None)
def test_sublattice_index_multiplicative(c2, c3):
    if det_gauss(c2) == 0 or det_gauss(c3) == 0:
        return
    Z3 = Lattice(np.eye(3, dtype=int))
    L2 = canonical_basis(c2, 1)
    b2 = L2.basis[0].tolist()
    prod = [
        [sum(c3[i][k] * b2[k][j] for k in range(3)) for j in range(3)]
        for i in range(3)
    ]
    L3 = canonical_basis(prod, 1)
    L3_in_L2 = canonical_basis(c3, 1, gram=L2.gram)
    assert sublattice_index(L3, Z3) == sublattice_index(L3_in_L2, L2) * sublattice_index(L2, Z3)


def test_sublattice_index_rejects_fractional_embedding():
    sup = Lattice([[1, 0], [0, 1]])
    sub = canonical_basis([[Fraction(1, 2), 0], [0, 1]], 2, gram=[[4, 0], [0, 4]])
    with pytest.raises(ValueError, match="not a sublattice"):
        sublattice_index(sub, sup)


def test_sublattice_index_rejects_singular_embedding():
    sup = Lattice([[2, 0], [0, 2]])
    sub = Lattice([[2, 2], [2, 2]], basis=([[1, 0], [1, 0]], 1))
    with pytest.raises(ValueError, match="not a sublattice"):
        sublattice_index(sub, sup)


def test_sublattice_index_without_embedding():
    sup = Lattice([[2, 0], [0, 2]])
    with pytest.raises(ValueError):
        sublattice_index(Lattice([[2, 0], [0, 2]]), sup)


# ---------------------------------------------------------------------------
# discriminant groups


@pytest.mark.parametrize(
    "gram, factors, qvals",
    [
        (cartan_A(1), (2,), {Fraction(0), Fraction(1, 4)}),
        (cartan_A(2), (3,), {Fraction(0), Fraction(1, 3)}),
        (cartan_D(4), (2, 2), {Fraction(0), Fraction(1, 2)}),
        (cartan_E(6), (3,), {Fraction(0), Fraction(2, 3)}),
        (cartan_E(7), (2,), {Fraction(0), Fraction(3, 4)}),
        (cartan_E(8), (), {Fraction(0)}),
    ],
)
def test_discriminant_groups_of_root_lattices(gram, factors, qvals):
    A = discriminant_group(Lattice(gram))
    assert A.invariant_factors == factors
    assert set(A.qvalues.values()) == qvals


def test_discriminant_group_d8_has_isotropic_glue():
    # the even glue class is what makes the unimodular extension possible
    A = discriminant_group(Lattice(cartan_D(8)))
    assert A.invariant_factors == (2, 2)
    zero_q = [e for e in A.elements() if A.q(e) == 0]
    assert len(zero_q) == 3  # identity plus two isotropic classes


@pytest.mark.parametrize("gram", [cartan_A(3), cartan_A(24), cartan_D(5), cartan_D(6)])
def test_discriminant_order_equals_determinant(gram):
    A = discriminant_group(Lattice(gram))
    assert A.order == determinant(Lattice(gram))


def test_dn_discriminant_order_four():
    for n in (3, 4, 5, 6, 7, 8):
        assert discriminant_group(Lattice(cartan_D(n))).order == 4


def test_discriminant_q_is_quadratic():
    A = discriminant_group(Lattice(cartan_A(3)))
    (d,) = A.invariant_factors
    for x in range(d):
        for k in range(d):
            assert A.q(((k * x) % d,)) == (k * k * A.q((x,))) % 1
    B = discriminant_group(Lattice(cartan_D(5)))
    for x in B.elements():
        for y in B.elements():
            for z in B.elements():
                xz = tuple((a + c) % m for a, c, m in zip(x, z, B.invariant_factors))
                yz = tuple((b + c) % m for b, c, m in zip(y, z, B.invariant_factors))
                s = tuple((a + b) % m for a, b, m in zip(x, y, B.invariant_factors))
                lhs = B.bilinear(s, z)
                rhs = (B.bilinear(x, z) + B.bilinear(y, z)) % 1
                assert lhs == rhs
                assert B.bilinear(x, z) == B.bilinear(z, x)
                del xz, yz


def test_discriminant_rejects_singular():
    with pytest.raises(ValueError):
        discriminant_group(Lattice([[2, 2], [2, 2]]))


def test_discriminant_enumeration_cap():
    big = np.eye(24, dtype=int) * 2  # order 2^24 group
    with pytest.raises(ValueError, match="too large"):
        discriminant_group(Lattice(big))


# ---------------------------------------------------------------------------
# intersections


def test_intersect_small_case():
    sup = Lattice([[2, 0], [0, 2]])
    sub = canonical_basis([[Fraction(1, 2), Fraction(1, 2)], [0, 2]], 2, gram=sup.gram)
    got = intersect(sup, sub)
    assert got.basis[0].tolist() == [[1, 1], [0, 2]]
    assert got.gram_rows() == [[4, 4], [4, 8]]
    assert sublattice_index(got, sup) == 2


def test_intersect_matches_membership_scan():
    sup = Lattice([[9, 0], [0, 9]])
    sub = canonical_basis([[Fraction(1, 3), Fraction(2, 3)], [0, 3]], 3, gram=sup.gram)
    got = intersect(sup, sub)
    # brute force: integer points of sub within a box
    num, den = sub.basis
    pts = set()
    for k in range(-30, 31):
        for m in range(-30, 31):
            x = k * num[0] + m * num[1]
            if x[0] % den == 0 and x[1] % den == 0:
                pts.add((int(x[0]) // den, int(x[1]) // den))
    bnum, bden = got.basis
    assert bden == 1
    expect = set()
    for k in range(-10, 11):
        for m in range(-10, 11):
            x = k * bnum[0] + m * bnum[1]
            expect.add((int(x[0]), int(x[1])))
    assert expect <= pts
    inside = {p for p in pts if abs(p[0]) <= 6 and abs(p[1]) <= 6}
    assert inside <= expect


# ---------------------------------------------------------------------------
# file format


def test_text_round_trip_with_label():
    L = Lattice(cartan_E(8), label="E8")
    text = to_text(L)
    back = from_text(text)
    assert back.label == "E8"
    assert np.array_equal(back.gram, L.gram)
    assert to_text(back) == text


def test_text_round_trip_fancy_labels():
    for label in ("A1^24", "A11 D7 E6", "D16+ E8", "Leech"):
        L = Lattice(cartan_A(2), label=label)
        assert from_text(to_text(L)).label == label


def test_text_round_trip_without_label():
    L = Lattice([[2, -1], [-1, 2]])
    back = from_text(to_text(L))
    assert back.label is None
    assert np.array_equal(back.gram, L.gram)


def test_from_text_rejects_malformed():
    with pytest.raises(ValueError):
        from_text("rank: 2\n")
    with pytest.raises(ValueError):
        from_text("rank: 2\ngram:\n2 0\n")
    with pytest.raises(ValueError):
        from_text("gram:\n2\n")
