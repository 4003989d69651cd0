"""Involutions and cubes of a Weyl group, classified up to conjugacy.

An involution is determined by its (-1)-eigenspace, and that eigenspace is
spanned by the roots it contains, so involutions are keyed internally by the
bitmask of positive roots the element negates.  Cubes (sets of pairwise
orthogonal positive roots) are keyed by their bitmask as well.  Conjugation
then acts by permuting mask bits, which keeps the E8 classification cheap:
bit permutations are applied through precomputed byte translation tables.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .roots import InternalError, RootSystem, SubsystemEmbedding
from .weyl import (GroupElement, compose, coxeter_trace, group_order,
                   identity, orbit_partition, subgroup_order)


class CacheError(ValueError):
    """A cache file failed validation and should be recomputed."""


def mask_of_perm(images: np.ndarray, rs: RootSystem) -> int:
    """Bitmask of the positive roots that a root permutation negates."""
    P = rs.n_positive
    bits = images[:P] == np.arange(P, 2 * P, dtype=images.dtype)
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(),
                          "little")


class MaskPermuter:
    """Apply a fixed permutation of bit positions via byte lookup tables."""

    __slots__ = ("tables", "nbytes")

    def __init__(self, perm: Sequence[int], nbits: int):
        self.nbytes = (nbits + 7) // 8
        self.tables = []
        for byte_idx in range(self.nbytes):
            table = [0] * 256
            for val in range(256):
                out = 0
                v = val
                while v:
                    low = v & -v
                    i = 8 * byte_idx + low.bit_length() - 1
                    if i < nbits:
                        out |= 1 << perm[i]
                    v ^= low
                table[val] = out
            self.tables.append(table)

    def __call__(self, mask: int) -> int:
        out = 0
        byte_idx = 0
        while mask:
            out |= self.tables[byte_idx][mask & 0xFF]
            mask >>= 8
            byte_idx += 1
        return out


def _simple_mask_permuters(rs: RootSystem) -> list[MaskPermuter]:
    permuters = getattr(rs, "_mask_permuters", None)
    if permuters is None:
        permuters = [MaskPermuter(rs.positive_perm(p), rs.n_positive)
                     for p in rs.simple_reflection_perms()]
        rs._mask_permuters = permuters
    return permuters


# -- cubes ------------------------------------------------------------------


class Cube:
    """Pairwise orthogonal positive roots, i.e. a 2-elementary subgroup."""

    __slots__ = ("home", "roots", "mask")

    def __init__(self, home: RootSystem, roots: Sequence[int]):
        roots = tuple(sorted(roots))
        for i in roots:
            if not (0 <= i < home.n_positive):
                raise ValueError(f"cube root {i} is not a positive root index")
        for a in range(len(roots)):
            for b in range(a + 1, len(roots)):
                if home.inner(roots[a], roots[b]) != 0:
                    raise ValueError(
                        f"cube roots {roots[a]} and {roots[b]} are not orthogonal")
        self.home = home
        self.roots = roots
        self.mask = 0
        for i in roots:
            self.mask |= 1 << i

    def __len__(self) -> int:
        return len(self.roots)

    def __eq__(self, other):
        return (isinstance(other, Cube) and self.home is other.home
                and self.roots == other.roots)

    def __hash__(self):
        return hash(self.roots)

    def __repr__(self):
        return f"Cube{self.roots}"

    def element(self) -> GroupElement:
        """Product of the generating reflections (order immaterial)."""
        g = identity(self.home)
        for i in self.roots:
            g = GroupElement(g.images[self.home.reflection_perm(i)], self.home)
        return g


def enumerate_cubes(rs: RootSystem) -> Iterator[Cube]:
    """Every clique of the orthogonality graph on positive roots.

    Streams in depth-first lexicographic order, the empty cube first.
    """
    for bits in _clique_masks(rs):
        yield Cube(rs, _mask_bits(bits))


def _clique_masks(rs: RootSystem) -> Iterator[int]:
    orth = rs.orth_masks
    full = (1 << rs.n_positive) - 1

    def rec(mask: int, cand: int) -> Iterator[int]:
        yield mask
        m = cand
        while m:
            low = m & -m
            b = low.bit_length() - 1
            m ^= low
            yield from rec(mask | low, cand & orth[b] & -(low << 1))

    yield from rec(0, full)


def _mask_bits(mask: int) -> list[int]:
    bits = []
    while mask:
        low = mask & -mask
        bits.append(low.bit_length() - 1)
        mask ^= low
    return bits


# -- involutions ------------------------------------------------------------


class Involution:
    """A group element squaring to the identity, keyed by its (-1)-eigenspace."""

    __slots__ = ("element", "mask", "degree", "_key")

    def __init__(self, element: GroupElement):
        if not compose(element, element).is_identity():
            raise ValueError("element does not square to the identity")
        self.element = element
        self.mask = mask_of_perm(element.images, element.home)
        trace = coxeter_trace(element)
        self.degree = (element.home.rank - trace) // 2
        self._key = None

    @property
    def eigenspace_key(self) -> tuple[tuple[Fraction, ...], ...]:
        """Reduced-echelon basis of the (-1)-eigenspace, exact rationals."""
        if self._key is None:
            rs = self.element.home
            rows = [rs.roots[i].coords for i in _greedy_roots(rs, self.mask)]
            self._key = rref(rows)
        return self._key

    def __repr__(self):
        return f"Involution(degree {self.degree} of {self.element.home.type_spec})"


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row echelon form over the rationals; zero rows dropped."""
    mat = [list(map(Fraction, row)) for row in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        sel = next((r for r in range(pivot_row, len(mat)) if mat[r][col]), None)
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        inv = 1 / mat[pivot_row][col]
        mat[pivot_row] = [v * inv for v in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col]:
                c = mat[r][col]
                mat[r] = [a - c * b for a, b in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(row) for row in mat[:pivot_row] if any(row))


def _greedy_roots(rs: RootSystem, mask: int) -> tuple[int, ...]:
    """First root in the eigenspace, then recurse in its orthogonal complement."""
    picked = []
    m = mask
    while m:
        low = m & -m
        b = low.bit_length() - 1
        picked.append(b)
        m &= rs.orth_masks[b]
    return tuple(picked)


def split_involution(inv: Involution) -> Cube:
    """A splitting of an involution into commuting reflections (greedy)."""
    rs = inv.element.home
    roots = _greedy_roots(rs, inv.mask)
    if len(roots) != inv.degree:
        raise InternalError(
            f"splitting of a degree-{inv.degree} involution found only "
            f"{len(roots)} orthogonal roots in its eigenspace")
    return Cube(rs, roots)


def involution_from_cube(cube: Cube) -> Involution:
    inv = Involution(cube.element())
    if inv.degree != len(cube):
        raise InternalError("cube product has wrong eigenvalue multiplicity")
    return inv


@dataclass(frozen=True)
class InvolutionClass:
    """One conjugacy class of involutions."""

    representative: Involution
    degree: int
    size: int
    splitting: Cube
    class_id: str

    @property
    def home(self) -> RootSystem:
        return self.representative.element.home

    def __repr__(self):
        return f"InvolutionClass({self.class_id}, size {self.size})"


def _involution_masks(rs: RootSystem) -> dict[int, list[int]]:
    """All involutions, keyed by eigenroot bitmask, grouped by degree.

    Breadth-first over degrees: a degree-(k+1) involution is a degree-k one
    times a reflection orthogonal to its eigenspace, and extending only past
    the highest eigenroot bit still reaches everything (drop the top root of
    any splitting of the eigenspace and you get a valid parent).  Parents
    carry their permutations only while their level is the frontier, so
    memory stays proportional to the largest degree layer.
    """
    P = rs.n_positive
    full = (1 << P) - 1
    refl = [rs.reflection_perm(i) for i in range(P)]
    ident = identity(rs).images

    by_degree: dict[int, list[int]] = {0: [0]}
    frontier: dict[int, tuple[np.ndarray, int]] = {0: (ident, full)}
    degree = 0
    while frontier:
        nxt: dict[int, tuple[np.ndarray, int]] = {}
        for mask in sorted(frontier):
            images, cand = frontier[mask]
            allowed = cand & -(1 << mask.bit_length()) if mask else cand
            while allowed:
                low = allowed & -allowed
                b = low.bit_length() - 1
                allowed ^= low
                child = images[refl[b]]
                cmask = mask_of_perm(child, rs)
                if cmask not in nxt:
                    nxt[cmask] = (child, cand & rs.orth_masks[b])
        degree += 1
        if nxt:
            by_degree[degree] = sorted(nxt)
        frontier = nxt
    return by_degree


def classify_involutions(rs: RootSystem) -> list[InvolutionClass]:
    """Conjugacy classes of involutions, sorted by (degree, size, minimal key).

    Results are memoized on the root system.
    """
    cached = getattr(rs, "_involution_classes", None)
    if cached is not None:
        return cached

    by_degree = _involution_masks(rs)
    permuters = _simple_mask_permuters(rs)
    raw: list[tuple[int, int, int]] = []  # (degree, size, min mask)
    total = 0
    for degree, masks in sorted(by_degree.items()):
        total += len(masks)
        for component in orbit_partition(masks, permuters):
            raw.append((degree, len(component), component[0]))
    if sum(size for _, size, _ in raw) != total:
        raise InternalError("class sizes do not add up to the involution count")

    raw.sort(key=lambda t: (t[0], t[1], t[2]))
    classes = []
    per_degree_counter: dict[int, int] = {}
    for degree, size, min_mask in raw:
        ordinal = per_degree_counter.get(degree, 0)
        per_degree_counter[degree] = ordinal + 1
        cube = Cube(rs, _greedy_roots(rs, min_mask))
        inv = involution_from_cube(cube)
        if inv.degree != degree or inv.mask != min_mask:
            raise InternalError("class representative does not match its key")
        classes.append(InvolutionClass(
            representative=inv, degree=degree, size=size, splitting=cube,
            class_id=f"d{degree}.{ordinal}"))
    rs._involution_classes = classes
    return classes


def involution_count(rs: RootSystem) -> int:
    return sum(cls.size for cls in classify_involutions(rs))


# -- cube classes -----------------------------------------------------------


@dataclass(frozen=True)
class CubeClass:
    """One conjugacy class of cubes."""

    representative: Cube
    rank: int
    size: int

    def __repr__(self):
        return f"CubeClass(rank {self.rank}, size {self.size})"


def _cube_orbit_scan(rs: RootSystem, cover_mask: Optional[int] = None,
                     ) -> list[tuple[int, int, int, bool]]:
    """Orbit-partition every clique; returns (rank, size, min mask, covered)."""
    permuters = _simple_mask_permuters(rs)
    visited: set[int] = set()
    classes = []
    for mask in _clique_masks(rs):
        if mask in visited:
            continue
        visited.add(mask)
        min_mask = mask
        size = 1
        covered = cover_mask is not None and mask & ~cover_mask == 0
        frontier = [mask]
        while frontier:
            nxt = []
            for m in frontier:
                for act in permuters:
                    img = act(m)
                    if img not in visited:
                        visited.add(img)
                        nxt.append(img)
                        size += 1
                        if img < min_mask:
                            min_mask = img
                        if cover_mask is not None and img & ~cover_mask == 0:
                            covered = True
            frontier = nxt
        classes.append((bin(min_mask).count("1"), size, min_mask, covered))
    classes.sort()
    return classes


def classify_cubes(rs: RootSystem) -> list[CubeClass]:
    """Conjugacy classes of cubes, sorted by (rank, size, minimal key)."""
    cached = getattr(rs, "_cube_classes", None)
    if cached is None:
        cached = [CubeClass(Cube(rs, _mask_bits(mask)), rank, size)
                  for rank, size, mask, _ in _cube_orbit_scan(rs)]
        rs._cube_classes = cached
    return cached


# -- odd-index reductions ----------------------------------------------------


@dataclass(frozen=True)
class ReductionReport:
    """Outcome of checking a subgroup reduction: index parity + cube coverage."""

    ambient_type: str
    sub_type: str
    index: int
    index_odd: bool
    cube_classes: tuple[tuple[int, int, bool], ...]  # (rank, size, covered)
    all_covered: bool
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "ambient": self.ambient_type,
            "subsystem": self.sub_type,
            "index": self.index,
            "index_odd": self.index_odd,
            "cube_classes": [
                {"rank": r, "size": s, "covered": c}
                for r, s, c in self.cube_classes],
            "all_covered": self.all_covered,
            "passed": self.passed,
        }


def verify_reduction(rs: RootSystem, sub: SubsystemEmbedding) -> ReductionReport:
    """Check that a subsystem has odd index and catches every cube class."""
    if sub.ambient is not rs:
        raise ValueError("embedding does not live in the given root system")
    total = group_order(rs)
    sub_order = subgroup_order(rs, sub.sub_simple_roots)
    if total % sub_order:
        raise InternalError("subgroup order does not divide the group order")
    index = total // sub_order
    scan = _cube_orbit_scan(rs, cover_mask=sub.positive_closure_mask())
    rows = tuple((rank, size, covered) for rank, size, _, covered in scan)
    all_covered = all(covered for _, _, covered in rows)
    odd = index % 2 == 1
    return ReductionReport(
        ambient_type=str(rs.type_spec),
        sub_type=str(sub.sub_type),
        index=index,
        index_odd=odd,
        cube_classes=rows,
        all_covered=all_covered,
        passed=odd and all_covered,
    )


# -- JSON cache ---------------------------------------------------------------


def atlas_json_dict(rs: RootSystem) -> dict:
    """Serializable snapshot of the classification of one type."""
    classes = classify_involutions(rs)
    cube_classes = classify_cubes(rs)
    return {
        "type": str(rs.type_spec),
        "group_order": group_order(rs),
        "involution_classes": [
            {
                "degree": cls.degree,
                "size": cls.size,
                "splitting_roots": list(cls.splitting.roots),
                "representative_eigenspace": [
                    [str(v) for v in row]
                    for row in cls.representative.eigenspace_key],
            }
            for cls in classes],
        "cube_classes": [
            {
                "rank": cc.rank,
                "size": cc.size,
                "representative_roots": list(cc.representative.roots),
            }
            for cc in cube_classes],
    }


def atlas_json_bytes(rs: RootSystem) -> bytes:
    return (json.dumps(atlas_json_dict(rs), indent=2, sort_keys=True) + "\n"
            ).encode()


def validate_atlas_dict(rs: RootSystem, data: dict) -> None:
    """Cheap structural validation of a cached snapshot against its system."""
    try:
        if data["type"] != str(rs.type_spec):
            raise CacheError("cached type does not match")
        if not isinstance(data["group_order"], int) or data["group_order"] < 1:
            raise CacheError("bad group order")
        for entry in data["involution_classes"]:
            cube = Cube(rs, entry["splitting_roots"])
            if len(cube) != entry["degree"]:
                raise CacheError("splitting does not match stated degree")
            if entry["size"] < 1:
                raise CacheError("bad class size")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CacheError):
            raise
        raise CacheError(f"malformed atlas cache: {exc}") from exc


def atlas_from_json_dict(rs: RootSystem, data: dict,
                         ) -> tuple[list[InvolutionClass], list[CubeClass]]:
    """Rebuild a classification from a cached snapshot, verifying as it goes.

    Splittings are re-multiplied and eigenspaces re-echelonized, so a stale
    or hand-edited cache cannot smuggle in a wrong table; sizes and the
    stated group order are cross-checked where recomputation is cheap.
    """
    validate_atlas_dict(rs, data)
    if data["group_order"] != group_order(rs):
        raise CacheError("cached group order disagrees with recomputation")
    classes = []
    per_degree: dict[int, int] = {}
    for entry in data["involution_classes"]:
        cube = Cube(rs, entry["splitting_roots"])
        inv = involution_from_cube(cube)
        degree = entry["degree"]
        if inv.degree != degree:
            raise CacheError("cached splitting has the wrong degree")
        stored = [[str(v) for v in row] for row in inv.eigenspace_key]
        if stored != entry["representative_eigenspace"]:
            raise CacheError("cached eigenspace does not match its splitting")
        ordinal = per_degree.get(degree, 0)
        per_degree[degree] = ordinal + 1
        classes.append(InvolutionClass(
            representative=inv, degree=degree, size=entry["size"],
            splitting=cube, class_id=f"d{degree}.{ordinal}"))
    keys = [(c.degree, c.size, c.representative.mask) for c in classes]
    if keys != sorted(keys):
        raise CacheError("cached classes are out of canonical order")
    cube_classes = []
    for entry in data["cube_classes"]:
        cube = Cube(rs, entry["representative_roots"])
        if len(cube) != entry["rank"]:
            raise CacheError("cached cube class has the wrong rank")
        cube_classes.append(CubeClass(cube, entry["rank"], entry["size"]))
    ckeys = [(cc.rank, cc.size, cc.representative.mask) for cc in cube_classes]
    if ckeys != sorted(ckeys):
        raise CacheError("cached cube classes are out of canonical order")
    rs._involution_classes = classes
    rs._cube_classes = cube_classes
    return classes, cube_classes
