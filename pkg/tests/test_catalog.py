"""Builders, glue, the Golay code, stores, and neighbor-walk discovery."""

from fractions import Fraction

import numpy as np
import pytest

from kneser.catalog import (
    GOLAY_GENERATOR,
    GlueData,
    LatticeStore,
    build_Dn_plus,
    build_a1_24,
    build_d16_e8,
    build_e8_cubed,
    build_leech,
    discover_classes,
    glue,
    golay_codewords,
)
from kneser.lattice import Lattice
from kneser.roots import NIEMEIER_LABELS, classify_gram16, decompose, niemeier_label
from kneser.shortvec import theta_prefix, vectors_of_norm


def d_basis(n):
    rows = []
    for i in range(n - 1):
        r = [0] * n
        r[i], r[i + 1] = 1, -1
        rows.append(r)
    r = [0] * n
    r[n - 2], r[n - 1] = 1, 1
    rows.append(r)
    return rows


# ---------------------------------------------------------------------------
# direct builders


def test_dn_plus_rank8_is_the_even_unimodular_one():
    L = build_Dn_plus(1)
    assert L.label == "E8"
    assert L.is_even_unimodular()
    assert theta_prefix(L, 2) == (1, 240, 2160)


def test_dn_plus_rank16():
    L = build_Dn_plus(2)
    assert L.label == "E16"
    assert L.is_even_unimodular()
    assert classify_gram16(L.gram) == "E16"


def test_dn_plus_rank24():
    L = build_Dn_plus(3)
    assert L.is_even_unimodular()
    assert niemeier_label(L) == "D24"
    assert len(vectors_of_norm(L, 2)) == 1104


def test_dn_plus_rejects_other_ranks():
    for k in (0, 4, -1):
        with pytest.raises(ValueError):
            build_Dn_plus(k)


def test_direct_sum_builders():
    assert niemeier_label(build_d16_e8()) == "D16 E8"
    assert niemeier_label(build_e8_cubed()) == "E8^3"


# ---------------------------------------------------------------------------
# Golay code


def test_golay_code_invariants():
    words = golay_codewords()
    assert words.shape == (4096, 24)
    assert len({tuple(w) for w in words}) == 4096
    wts = words.sum(axis=1)
    assert set(np.unique(wts)) == {0, 8, 12, 16, 24}
    assert np.all(wts % 4 == 0)
    # self-dual: self-orthogonal of dimension exactly half the length
    assert np.all((GOLAY_GENERATOR @ GOLAY_GENERATOR.T) % 2 == 0)


def test_golay_weight_distribution():
    wts = golay_codewords().sum(axis=1)
    hist = {w: int(np.sum(wts == w)) for w in (0, 8, 12, 16, 24)}
    assert hist == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


# ---------------------------------------------------------------------------
# glue


def test_glue_a1_24_with_golay():
    L = build_a1_24()
    assert L.is_even_unimodular()
    assert niemeier_label(L) == "A1^24"
    assert len(vectors_of_norm(L, 2)) == 48


def test_glue_ambient_mode_d16():
    g = [[Fraction(1, 2)] * 16]
    L = glue(GlueData(basis=d_basis(16), glue_vectors=g), label="E16")
    assert L.is_even_unimodular()
    assert classify_gram16(L.gram) == "E16"
    assert theta_prefix(L, 2) == theta_prefix(build_Dn_plus(2), 2)


def test_glue_rejects_vector_outside_dual():
    gd = GlueData(root_gram=[[2, -1], [-1, 2]], glue_vectors=[[Fraction(1, 2), 0]])
    with pytest.raises(ValueError, match="outside the dual"):
        glue(gd)


def test_glue_rejects_odd_norm():
    gd = GlueData(
        root_gram=(2 * np.eye(2, dtype=int)).tolist(),
        glue_vectors=[[Fraction(1, 2), Fraction(1, 2)]],
    )
    with pytest.raises(ValueError, match="non-even norm"):
        glue(gd)


def test_glue_rejects_nonintegral_pairing():
    gram = (2 * np.eye(8, dtype=int)).tolist()
    c1 = [1, 1, 1, 1, 0, 0, 0, 0]
    c2 = [0, 1, 1, 1, 1, 0, 0, 0]
    gv = [[Fraction(c, 2) for c in c1], [Fraction(c, 2) for c in c2]]
    with pytest.raises(ValueError, match="pair non-integrally"):
        glue(GlueData(root_gram=gram, glue_vectors=gv))


def test_glue_rejects_too_small_glue_group():
    gram = (2 * np.eye(4, dtype=int)).tolist()
    gv = [[Fraction(1, 2)] * 4]
    with pytest.raises(ValueError, match="too small"):
        glue(GlueData(root_gram=gram, glue_vectors=gv))


def test_glue_rejects_new_roots():
    # gluing D8 up to determinant 1 creates the 128 spinor roots
    g = [[Fraction(1, 2)] * 8]
    with pytest.raises(ValueError, match="root overflow"):
        glue(GlueData(basis=d_basis(8), glue_vectors=g))


# ---------------------------------------------------------------------------
# the rootless class


@pytest.fixture(scope="module")
def leech():
    return build_leech()


def test_leech_is_even_unimodular_and_rootless(leech):
    assert leech.label == "Leech"
    assert leech.is_even_unimodular()
    assert theta_prefix(leech, 2) == (1, 0, 196560)


def test_leech_basis_denominator(leech):
    num, den = leech.basis
    assert den == 47
    assert niemeier_label(leech) == "Leech"


# ---------------------------------------------------------------------------
# stores


def test_store_round_trip(tmp_path, leech):
    store = LatticeStore()
    store.put(build_Dn_plus(3), "seed")
    store.put(leech, "47-neighbor of D24")
    store.put(build_a1_24(), "glue over the Golay code")
    store.save(tmp_path / "cat")

    back = LatticeStore(tmp_path / "cat")
    assert back.labels() == store.labels()
    for label in store.labels():
        assert back.get(label).gram.tolist() == store.get(label).gram.tolist()
        assert back.recipe(label) == store.recipe(label)


def test_store_orders_labels_canonically(leech):
    store = LatticeStore()
    store.put(build_a1_24(), "a")
    store.put(leech, "b")
    store.put(build_Dn_plus(3), "c")
    assert store.labels() == ("D24", "A1^24", "Leech")


def test_store_requires_labels():
    store = LatticeStore()
    with pytest.raises(ValueError, match="label"):
        store.put(Lattice([[2]]), "unlabeled")


def test_store_missing_manifest(tmp_path):
    with pytest.raises(FileNotFoundError):
        LatticeStore(tmp_path / "nope")


# ---------------------------------------------------------------------------
# discovery


def test_discovery_walk_is_deterministic():
    runs = []
    for _ in range(2):
        rng = np.random.default_rng(99)
        store = discover_classes([build_Dn_plus(3)], (2, 3), 25, rng)
        runs.append(store)
    a, b = runs
    assert a.labels() == b.labels()
    assert len(a) >= 6
    for label in a.labels():
        assert a.get(label).gram.tolist() == b.get(label).gram.tolist()
        assert a.recipe(label) == b.recipe(label)


def test_discovery_labels_and_recipes_are_wellformed():
    rng = np.random.default_rng(5)
    store = discover_classes([build_Dn_plus(3)], 2, 20, rng)
    for label in store.labels():
        assert label in NIEMEIER_LABELS
        recipe = store.recipe(label)
        assert recipe == "seed" or recipe.startswith("p=")
        if label not in ("Leech",):
            L = store.get(label)
            roots = vectors_of_norm(L, 2)
            rs = decompose(roots, L.gram)
            assert rs.label == label


def test_discovery_requires_primes():
    with pytest.raises(ValueError, match="prime"):
        discover_classes([build_Dn_plus(3)], (), 5, np.random.default_rng(0))
