#!/usr/bin/env python3
"""Classify involutions and cubes up to conjugacy.

An involution is determined by its (-1)-eigenspace; its degree is the
dimension of that eigenspace, and it always factors as a product of
reflections in pairwise orthogonal roots (a splitting).
"""

from weylinv import (build_root_system, classify_cubes, classify_involutions,
                     enumerate_cubes, involution_from_cube, split_involution)

b2 = build_root_system("B2")

print("every cube (= set of pairwise orthogonal positive roots) of B2:")
for cube in enumerate_cubes(b2):
    coords = [b2.roots[i].coords for i in cube.roots]
    print(f"  {coords}")

# The two rank-2 cubes span the same plane, so they give the SAME involution:
pairs = [c for c in enumerate_cubes(b2) if len(c) == 2]
invs = [involution_from_cube(c) for c in pairs]
print("\nboth rank-2 cubes multiply to -1:",
      (invs[0].element.images == invs[1].element.images).all())
print("its canonical splitting picks", [b2.roots[i].coords
      for i in split_involution(invs[0]).roots])

print("\ninvolution classes of B2 (id, short refl, long refl, -1):")
for cls in classify_involutions(b2):
    print(f"  {cls.class_id}: degree {cls.degree}, size {cls.size}")

print("\ncube classes of B2 (the two rank-2 cubes are NOT conjugate):")
for cc in classify_cubes(b2):
    print(f"  rank {cc.rank}, size {cc.size}, rep {cc.representative.roots}")

# The showpiece tables: E6 and E7 (E8 takes ~10s, same call).
for name in ("E6", "E7"):
    rs = build_root_system(name)
    classes = classify_involutions(rs)
    print(f"\n{name}: {len(classes)} classes, degrees "
          f"{[c.degree for c in classes]}")
    print(f"     sizes {[c.size for c in classes]}")
