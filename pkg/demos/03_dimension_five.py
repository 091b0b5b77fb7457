#!/usr/bin/env python3
"""Twenty-five rays in dimension 5.

Two copies of the 13-ray set, one on coordinates 1..3 (lowercase labels)
and one on coordinates 3..5 (uppercase), overlap in a single shared ray
(z3 = Z1), leaving 25 distinct rays.  The composed inequality couples the
copies through the bridge variables z1, z2, Z2, Z3 and separates all
noncontextual models (classical maximum 43/6) from quantum mechanics
(22/3 in every state).
"""

from fractions import Fraction

import ksray as K

s25 = K.build_25ray()
print(f"rays: {s25.ray_count} distinct (aliases: {s25.aliases})")
print("z1 =", tuple(int(c) for c in s25.vector("z1")),
      " Z1 =", tuple(int(c) for c in s25.vector("Z1")),
      " shared with z3:", s25.vector("Z1") == s25.vector("z3"))

l5 = K.build_L5()
print(f"\ninequality: {len(l5.variables)} variables, "
      f"{len(l5.quadratic)} quadratic terms")
print("the shared ray carries weight", l5.linear["z3"])

classical = K.max_exhaustive(l5)
q = K.scalar_identity_check(K.quantum_operator(l5, s25))
print(f"classical maximum over 2^25 assignments: {classical.maximum}")
print(f"quantum value: {q}")
assert classical.maximum == Fraction(43, 6) and q == Fraction(22, 3)

# This set still admits KS value assignments, and on those the expression
# collapses to 12 explicit projections with bound 7/6 versus quantum 4/3.
ks = K.find_ks_assignments(s25)
print(f"\nKS value assignments: {len(ks)}")
for a in ks[:2]:
    y = sum(a[l] for l in s25.labels if l.startswith("y"))
    z = a["z1"] + a["z2"] + a["z3"]
    print("  sample 1-rays:", [v for v, bit in sorted(a.items()) if bit],
          f" (y-sum + z-sum + 3(Z2+Z3) = {y + z + 3 * (a['Z2'] + a['Z3'])})")

l5p = K.build_L5prime()
constrained = K.max_over_constrained(l5p, s25, K.full_constraints(s25))
q5p = K.scalar_identity_check(K.quantum_operator(l5p, s25))
print(f"\n12-projection residue: max over KS assignments {constrained.maximum}, "
      f"quantum {q5p}")
assert constrained.maximum == Fraction(7, 6) and q5p == Fraction(4, 3)
