"""
Building even unimodular lattices and reading off their root systems
====================================================================

Even unimodular lattices exist only in ranks divisible by 8.  This
script builds the classical examples in ranks 8, 16, and 24, checks
their invariants, and classifies each one by its norm-2 vectors.
"""

import numpy as np

from kneser import (
    build_Dn_plus,
    build_leech,
    decompose,
    niemeier_label,
    theta_prefix,
    vectors_of_norm,
)

# D_{8k}^+ glues a spinor coset onto the checkerboard lattice D_{8k}.
# k = 1 gives E8, k = 2 the second rank-16 class, k = 3 a Niemeier
# lattice with the largest possible root system.
for k in (1, 2, 3):
    L = build_Dn_plus(k)
    roots = vectors_of_norm(L, 2)
    rs = decompose(roots, L.gram)
    print("%-6s rank %2d  det %d  %4d roots  system %s (h = %d)"
          % (L.label, L.rank, L.determinant(), len(roots), rs.label,
             rs.components[0].coxeter))

# The Leech lattice is glued from the binary Golay code.  It is the
# unique rank-24 class with no roots at all.
leech = build_leech()
print("%-6s rank %2d  det %d  %4d roots"
      % (leech.label, leech.rank, leech.determinant(),
         len(vectors_of_norm(leech, 2))))
print("label:", niemeier_label(leech))

# Theta-series prefixes r(m) = #{x : x.x = 2m}.  E8 starts with the
# famous 240; Leech skips straight to its 196560 minimal vectors.
for L in (build_Dn_plus(1), leech):
    counts = np.asarray(theta_prefix(L, 3))
    print("theta(%s) = %s" % (L.label, counts.tolist()))
