#!/usr/bin/env python3
"""Build root systems in exact rational coordinates and poke at their geometry.

Every root is stored with exact Fractions, so orthogonality tests, Cartan
integers and reflections never see a floating-point number.
"""

from weylinv import build_root_system, find_subsystem, group_order, reflect

# An irreducible system: G2, with its two root lengths.
g2 = build_root_system("G2")
print(f"G2: {len(g2.roots)} roots, {g2.n_positive} positive, |W| = {group_order(g2)}")
for i in g2.simple_indices:
    root = g2.roots[i]
    print(f"  simple root {root.coords}  length^2 = {root.norm2}")

# Reflecting a root in another root stays inside the system.
alpha = g2.roots[0]
image = reflect(g2, g2.simple_indices[0], alpha.coords)
print(f"reflecting {alpha.coords} gives {image}, a root again:",
      g2.index_of(image) is not None)

# Products just concatenate coordinates.
prod = build_root_system("A1xD6")
print(f"\nA1xD6: rank {prod.rank}, ambient dimension {prod.ambient_dim}, "
      f"{len(prod.roots)} roots")

# Subsystems: E6 contains a D5 (this pairing shows up again in demo 04).
e6 = build_root_system("E6")
emb = find_subsystem(e6, "D5")
print(f"\nE6 contains D5 spanned by roots {emb.sub_simple_roots}; "
      f"its closure has {len(emb.closure())} roots")

# ... but A2 has only one root length, so no B2 inside:
print("B2 inside A2:", find_subsystem(build_root_system("A2"), "B2"))
