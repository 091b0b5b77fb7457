#!/usr/bin/env python3
"""Thirteen rays in dimension 3.

The smallest construction in the package: three coordinate axes z_k, six
axis sums/differences y_k^(+-), and four diagonals h_alpha.  KS value
assignments exist for this set, yet no noncontextual value assignment can
reproduce the quantum statistics: the inequality built on the set has
classical maximum 7/2, strictly below the quantum value 11/3 that every
qutrit state attains.
"""

from fractions import Fraction

import ksray as K

s13 = K.build_13ray()
print(f"rays ({s13.ray_count}):")
for label, vec in s13.rays:
    print(f"  {label:<4} {tuple(int(c) for c in vec)}")

og = K.orthogonality_graph(s13)
print(f"\northogonality relation: {og.edge_count} orthogonal pairs")

bases = K.enumerate_bases(s13)
print(f"complete bases (triples of mutually orthogonal rays): {len(bases)}")
for basis in bases:
    print("  ", " ".join(basis.rays))

# The inequality: weight 1 on y and z rays, 1/2 on h rays, minus every
# orthogonal product.
l3 = K.build_L3(s13)
classical = K.max_exhaustive(l3)
print(f"\nclassical maximum over all 2^13 assignments: {classical.maximum}")
print(f"  attained at 1-rays: "
      f"{[v for v, bit in classical.argmax.items() if bit]}")
assert classical.maximum == Fraction(7, 2)

op = K.quantum_operator(l3, s13)
q = K.scalar_identity_check(op)
print(f"operator form equals q * identity with q = {q}")
assert q == Fraction(11, 3)
print(f"state-independent violation: {q} > {classical.maximum}")

# KS value assignments exist here (unlike in dimension 4), but they all
# kill the quadratic terms, pinning the expression strictly below q.
ks = K.find_ks_assignments(s13)
print(f"\nKS value assignments: {len(ks)}")
sample = ks[0]
print("  example, 1-rays:", [v for v, bit in sorted(sample.items()) if bit])
quad_part = sum(c * sample[a] * sample[b] for (a, b), c in l3.quadratic.items())
print(f"  quadratic part on a KS assignment: {quad_part}")
