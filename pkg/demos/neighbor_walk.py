"""
A random walk on the rank-24 classes by p-neighbor steps
========================================================

Two even unimodular lattices are p-neighbors when they intersect in
index p.  Every neighbor of L is L(P) = H + Z(v/p) for an isotropic
line P of the mod-p quadric, so stepping to a uniformly random
neighbor means sampling a uniform isotropic line.  The walk below
starts at the Niemeier lattice with root system D24 and hops through
the classification.
"""

import numpy as np

from kneser import IsotropicLine, build_Dn_plus, neighbor, niemeier_label
from kneser import sample_isotropic_line

rng = np.random.default_rng(2024)

L = build_Dn_plus(3)
print("start:", niemeier_label(L))

# Alternate the primes 2 and 3; small primes already reach every class.
for step in range(8):
    p = (2, 3)[step % 2]
    line = sample_isotropic_line(L, p, rng)
    L = neighbor(L, line)
    assert L.is_even_unimodular()
    print("step %d (p=%d) ->" % (step + 1, p), niemeier_label(L))

# One deterministic step: the 47-neighbor of D24+ along the line
# through (0, 1, ..., 23) lands on the rootless class in one hop.
start = build_Dn_plus(3)
num, den = start.basis
coords = np.linalg.solve(np.asarray(num, float).T,
                         den * np.arange(24, dtype=float))
rep = tuple(int(round(c)) % 47 for c in coords)
M = neighbor(start, IsotropicLine(47, rep))
print("47-neighbor of D24 at (0,1,...,23):", niemeier_label(M))
