"""
Modular forms behind the neighbor counts
========================================

The eigenvalues of the neighbor-count matrices are Hecke eigenvalues
of level-one modular forms.  This script exercises the exact
q-expansion arithmetic: the discriminant form and Ramanujan numbers,
the Eisenstein identity that pins both down, the 691 congruence, and
the genus-2 congruence checked modulo 41.
"""

from kneser import (
    GENUS2_TABLE,
    delta,
    dim_cuspforms,
    eigen_lookup,
    eigenform,
    eisenstein,
    harder_check,
    r_leech,
    tau,
)

# Ramanujan tau, read off the product expansion of Delta.
print("tau(p) for small p:", [tau(p) for p in (2, 3, 5, 7)])

# E4^3 - E6^2 = 1728 Delta ties the Eisenstein series to Delta; both
# sides are computed by unrelated routes.
E4, E6 = eisenstein(4, 50), eisenstein(6, 50)
assert E4**3 - E6**2 == delta(50) * 1728
print("E4^3 - E6^2 = 1728 Delta: checked to 50 coefficients")

# Dimensions of level-one cusp spaces; the first interesting weights.
print("dim S_k for k = 12..26:",
      [dim_cuspforms(k) for k in range(12, 27, 2)])

# The five one-dimensional cusp spaces each carry one eigenform.
for k in (12, 16, 18, 20, 22):
    f = eigenform(k, 5)
    print("weight %2d eigenform: a(2) = %6d, a(3) = %8d, a(5) = %d"
          % (k, f.a(2), f.a(3), f.a(5)))

# 691 | 1 + p^11 - tau(p) makes the rootless-neighbor count integral:
# r(p) = 65520/691 (1 + p^11 - tau(p)).
for p in (2, 3, 5):
    print("rootless p-neighbor count at p=%d: %d" % (p, r_leech(p)))

# A vector-valued genus-2 eigenvalue table supports the congruence
# tau_{4,10}(p) = tau_22(p) + p^8 + p^13 mod 41 at every tabulated p.
print("genus-2 table:", len(GENUS2_TABLE), "eigenvalues,",
      "tau_{4,10}(2) =", eigen_lookup(4, 10, 2))
print("congruence holds at all tabulated primes:",
      all(harder_check(p) for p in GENUS2_TABLE.primes))
