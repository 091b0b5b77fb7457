#!/usr/bin/env python3
"""Eighteen rays in dimension 4, one per edge of a 9-vertex graph.

Two rays are orthogonal whenever their edges share a vertex, so the four
rays at each vertex form a basis.  A KS value assignment would have to
pick exactly one ray per basis, i.e. cover all nine vertices by disjoint
edges - impossible for an odd vertex count.  The inequality built from
the same data gives an experimentally testable version of that clash:
classical maximum 4, quantum value 9/2 in every state.
"""

from fractions import Fraction

import ksray as K
from ksray.quadform import make_form

g9 = K.base_graph_9()
print(f"base graph: {g9.vertex_count} vertices, {g9.edge_count} edges, "
      f"all degrees {sorted(set(g9.degree(v) for v in g9.vertices))}")

s18 = K.build_18ray()
for label, vec in s18.rays:
    print(f"  {label:<4} {tuple(int(c) for c in vec)}")

# The line graph of the base graph is exactly the shared-vertex relation.
lg = K.line_graph(g9)
og = K.orthogonality_graph(s18)
lg_edges = set(map(frozenset, lg.edges()))
og_edges = set(map(frozenset, og.edges()))
print(f"\nshared-vertex pairs: {len(lg_edges)}; "
      f"all orthogonal pairs: {len(og_edges)} "
      f"(the rays satisfy {len(og_edges - lg_edges)} extra orthogonalities)")
assert lg_edges <= og_edges

# No KS value assignment exists - two independent proofs.
print("\nKS value assignments found:", len(K.find_ks_assignments(s18)))
print("disjoint-edge cover of 9 vertices possible:",
      K.disjoint_edge_cover_exists(g9))

# The inequality: classical bound 4, quantum value 9/2.
l4 = K.build_L4()
classical = K.max_exhaustive(l4)
q = K.scalar_identity_check(K.quantum_operator(l4, s18))
print(f"\nclassical maximum: {classical.maximum}   quantum value: {q}")
assert (classical.maximum, q) == (Fraction(4), Fraction(9, 2))

# Experiment: putting the 9 extra orthogonal pairs into the quadratic part
# changes neither side.
full = make_form(
    s18.labels,
    linear={l: 1 for l in s18.labels},
    quadratic={(a, b): -1 for a, b in og.edges()},
)
print("with all orthogonal pairs included:",
      K.max_exhaustive(full).maximum, "vs",
      K.scalar_identity_check(K.quantum_operator(full, s18)))

# Hexagon residues: under KS constraints at an independent vertex triple,
# six rays suffice for a test (bound 1 versus quantum 3/2).
for triple in K.independent_triples(g9):
    hexagon = K.build_hexagon(triple)
    constraints = K.partial_constraints(s18, [K.rays_at_vertex(v) for v in triple])
    bound = K.max_over_constrained(hexagon, s18, constraints)
    q_hex = K.scalar_identity_check(K.quantum_operator(hexagon, s18))
    print(f"hexagon {triple}: rays {' '.join(hexagon.variables)}  "
          f"constrained max {bound.maximum}, quantum {q_hex}")
