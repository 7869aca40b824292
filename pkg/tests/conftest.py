"""Shared fixtures for the expensive session-wide computations.

The exact rank-16 count at p=2 (65790 classified neighbors) and the
24-class discovery store are each built once per test session and
shared between the unit tests and the acceptance suite.
"""

import numpy as np
import pytest

from kneser.catalog import build_Dn_plus, build_leech, discover_classes
from kneser.hecke import tp_matrix_rank16


@pytest.fixture(scope="session")
def exact_n2_rank16():
    """Exhaustive 2-neighbor classification of both rank-16 classes."""
    return tp_matrix_rank16(2)


@pytest.fixture(scope="session")
def leech_lattice():
    return build_leech()


@pytest.fixture(scope="session")
def class_store(leech_lattice):
    """Store holding all 24 rank-24 classes, found by random walking.

    Seeds are the two classes with direct constructions; the walk uses
    mixed primes and a generous per-class budget, stopping as soon as
    every class is present.
    """
    store = discover_classes(
        [build_Dn_plus(3), leech_lattice],
        p=(2, 3),
        budget=100_000,
        rng=np.random.default_rng(20),
    )
    return store
