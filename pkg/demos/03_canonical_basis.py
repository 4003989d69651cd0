#!/usr/bin/env python3
"""The invariant module over F2[t] and its canonical basis.

Invariants pair against involution classes: restrict to a splitting cube,
expand in the subset basis (with x_i^2 = t*x_i), and read off the top
coefficient.  Stiefel-Whitney classes of the reflection representation pair
as a delta against the degree, which is what makes the class basis work.
"""

from weylinv import (build_root_system, canonical_basis, classify_involutions,
                     coxeter_rep, expand, pairing, sw)

f4 = build_root_system("F4")
classes = classify_involutions(f4)
cox = coxeter_rep(f4)

print("pairing table of F4: rows sw(cox,i), columns involution classes")
ids = [c.class_id for c in classes]
print("          " + "  ".join(f"{i:>5}" for i in ids))
for i in range(f4.rank + 1):
    row = [str(pairing(sw(cox, i), cls)) for cls in classes]
    print(f"sw(cox,{i})  " + "  ".join(f"{v:>5}" for v in row))

print("\nso the invariant module of F4 is free with this basis:")
basis = canonical_basis(classes)
print(f"  rank {basis.rank}, degrees {','.join(map(str, basis.degrees))}")

# Expansion writes any invariant expression in class coordinates.
expr = sw(cox, 1) * sw(cox, 1)  # degree 2
vec = expand(expr, classes)
print(f"\nsw(cox,1)^2 expands as {vec.to_json_dict()['coeffs']}")
print("(the t at the degree-1 classes is the relation w1^2 = t*w1 in rank 1)")

# The famous example: E8 has a free module of rank 10.
e8 = build_root_system("E8")
basis8 = canonical_basis(classify_involutions(e8))
print(f"\nE8: free module of rank {basis8.rank}, degrees "
      f"{','.join(map(str, basis8.degrees))}")
