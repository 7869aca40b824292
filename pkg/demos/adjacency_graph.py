"""
The p-neighbor graph on the 24 rank-24 classes
==============================================

Sampling random p-neighbors of every class gives a lower bound for
the adjacency of the neighbor graph.  The package ships exact
reference graphs for p = 3 and p = 7; sampled edges must stay inside
them.  For p = 7 the graph is already diameter 2, and the Leech row
shows the Coxeter-number criterion: the rootless class can only be a
p-neighbor of a rooted class with h <= p.
"""

import numpy as np

from kneser import (
    NIEMEIER_CLASSES,
    build_Dn_plus,
    build_leech,
    discover_classes,
    fixture_adjacency24,
    graph_diameter,
    sampled_adjacency24,
)

rng = np.random.default_rng(7)

# A store of representatives, found by random neighbor walks.  A small
# budget is enough here; the acceptance suite runs the full discovery.
store = discover_classes([build_Dn_plus(3), build_leech()],
                         p=(2, 3), budget=3000, rng=rng)
print("classes found: %d/24" % len(store))

p = 7
X = fixture_adjacency24(p)
print("reference graph at p=%d: diameter %d" % (p, graph_diameter(X)))

S = sampled_adjacency24(p, 60, rng, store)
inside = ~(S.entries & ~X.entries).any()
print("sampled edges: %d, all inside reference: %s"
      % (int(S.entries.sum()), bool(inside)))

# Rows of the reference restricted to the Leech column illustrate the
# criterion h <= p.
leech_col = list(X.labels).index("Leech")
for cls in NIEMEIER_CLASSES:
    if cls.label == "Leech":
        continue
    row = X.row(cls.label)
    tag = "adjacent" if row[leech_col] else "not adjacent"
    if cls.coxeter in (6, 7, 8):
        print("  h(%s) = %d: %s to Leech at p=%d"
              % (cls.label, cls.coxeter, tag, p))
