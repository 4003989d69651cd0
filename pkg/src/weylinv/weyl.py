"""Weyl group elements as permutations of the root list.

Elements are length-2P index arrays (image of root i is images[i]); the
underlying linear map is recovered on demand as an integer matrix in the
simple-root basis.  The group order comes from a deterministic Schreier-Sims
stabilizer chain on the root action, with the simple roots as base; no
order formulas or lookup tables are involved.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .roots import InternalError, Root, RootSystem


class GroupElement:
    """A permutation of the roots induced by an orthogonal map."""

    __slots__ = ("images", "home", "_hash")

    def __init__(self, images: np.ndarray, home: RootSystem):
        self.images = images
        self.home = home
        self._hash = None

    def __eq__(self, other):
        return (isinstance(other, GroupElement)
                and self.home is other.home
                and np.array_equal(self.images, other.images))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images.tobytes())
        return self._hash

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def __call__(self, root_index: int) -> int:
        return int(self.images[root_index])

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, _id_images(self.home)))

    def __repr__(self):
        n = int(np.count_nonzero(self.images != _id_images(self.home)))
        return f"GroupElement(moves {n} roots of {self.home.type_spec})"


def _id_images(rs: RootSystem) -> np.ndarray:
    cached = getattr(rs, "_id_images", None)
    if cached is None:
        cached = np.arange(len(rs.roots), dtype=np.int16)
        cached.setflags(write=False)
        rs._id_images = cached
    return cached


def identity(rs: RootSystem) -> GroupElement:
    return GroupElement(_id_images(rs), rs)


def _check_same_home(x: GroupElement, y: GroupElement) -> None:
    if x.home is not y.home:
        raise ValueError("elements live in different root systems")


def compose(x: GroupElement, y: GroupElement) -> GroupElement:
    """x after y: the permutation sending i to x(y(i))."""
    _check_same_home(x, y)
    return GroupElement(x.images[y.images], x.home)


def invert(x: GroupElement) -> GroupElement:
    inv = np.empty_like(x.images)
    inv[x.images] = np.arange(len(x.images), dtype=x.images.dtype)
    return GroupElement(inv, x.home)


def order_of(x: GroupElement) -> int:
    n = 1
    acc = x
    ident = _id_images(x.home)
    while not np.array_equal(acc.images, ident):
        acc = compose(acc, x)
        n += 1
    return n


def reflection_element(rs: RootSystem, alpha) -> GroupElement:
    """The root permutation of the reflection in a root of rs."""
    if isinstance(alpha, Root):
        idx = alpha.index
    elif isinstance(alpha, int):
        idx = alpha
    else:
        idx = rs.index_of(alpha)
    return GroupElement(rs.reflection_perm(idx), rs)


def simple_reflections(rs: RootSystem) -> list[GroupElement]:
    return [GroupElement(p, rs) for p in rs.simple_reflection_perms()]


def element_matrix(x: GroupElement) -> np.ndarray:
    """Matrix of x in the simple-root basis (integer, hence exact).

    Column j holds the simple-basis coordinates of the image of the j-th
    simple root.
    """
    rs = x.home
    r = rs.rank
    mat = np.empty((r, r), dtype=np.int64)
    for j, si in enumerate(rs.simple_indices):
        mat[:, j] = rs.roots[int(x.images[si])].scoords
    return mat


def coxeter_trace(x: GroupElement) -> int:
    """Trace of x on the span of the roots (the reflection representation)."""
    return int(np.trace(element_matrix(x)))


def length_parity(x: GroupElement) -> int:
    """(-1)^(number of positive roots sent negative); equals det(x)."""
    P = x.home.n_positive
    flipped = int(np.count_nonzero(x.images[:P] >= P))
    return -1 if flipped & 1 else 1


# -- stabilizer chain ------------------------------------------------------


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int, n: int):
        self.point = point
        self.gens: list[np.ndarray] = []
        self.transversal: dict[int, np.ndarray] = {
            point: np.arange(n, dtype=np.int16)}


class StabChain:
    """Deterministic Schreier-Sims chain for a permutation group on roots.

    base_hint seeds the base (for Weyl groups: the simple roots, whose
    pointwise stabilizer is trivial); extra base points are appended
    automatically if a residue still moves something.  The orbit at level i
    is taken under the generators of levels >= i: those are exactly the
    known generators fixing the first i base points.
    """

    def __init__(self, generators: Sequence[np.ndarray], n: int,
                 base_hint: Sequence[int] = ()):
        self.n = n
        self.levels: list[_Level] = []
        self._base_hint = list(base_hint)
        self._identity = np.arange(n, dtype=np.int16)
        for gen in generators:
            gen = np.asarray(gen, dtype=np.int16)
            if not np.array_equal(gen, self._identity):
                self._place(gen)
        self._complete()

    @property
    def base(self) -> list[int]:
        return [lvl.point for lvl in self.levels]

    def order(self) -> int:
        out = 1
        for lvl in self.levels:
            out *= len(lvl.transversal)
        return out

    def contains(self, perm: np.ndarray) -> bool:
        residue = self._sift(0, np.asarray(perm, dtype=np.int16))
        return residue is None

    # internals

    def _place(self, residue: np.ndarray) -> int:
        """Attach a non-identity element at the first level it does not fix."""
        for idx, lvl in enumerate(self.levels):
            if residue[lvl.point] != lvl.point:
                lvl.gens.append(residue)
                return idx
        for p in self._base_hint:
            if residue[p] != p:
                self.levels.append(_Level(p, self.n))
                break
        else:
            moved = int(np.flatnonzero(residue != self._identity)[0])
            self.levels.append(_Level(moved, self.n))
        self.levels[-1].gens.append(residue)
        return len(self.levels) - 1

    def _sift(self, level: int, perm: np.ndarray):
        """Reduce perm through levels >= level; None means membership."""
        g = perm
        for lvl in self.levels[level:]:
            img = int(g[lvl.point])
            rep = lvl.transversal.get(img)
            if rep is None:
                return g
            inv = np.empty_like(rep)
            inv[rep] = self._identity
            g = inv[g]
        if np.array_equal(g, self._identity):
            return None
        return g

    def _gens_from(self, lvl_idx: int) -> list[np.ndarray]:
        out = []
        for lvl in self.levels[lvl_idx:]:
            out.extend(lvl.gens)
        return out

    def _complete(self) -> None:
        """Process levels bottom-up until every Schreier generator sifts."""
        i = len(self.levels) - 1
        while i >= 0:
            landed = self._process(i)
            i = i - 1 if landed is None else landed

    def _process(self, lvl_idx: int):
        """Rebuild the orbit at one level and test its Schreier generators.

        Returns the level index where a non-sifting residue was placed, or
        None if all Schreier generators reduce to the identity.
        """
        lvl = self.levels[lvl_idx]
        gens = self._gens_from(lvl_idx)
        lvl.transversal = {lvl.point: self._identity}
        frontier = [lvl.point]
        while frontier:
            nxt = []
            for p in frontier:
                t_p = lvl.transversal[p]
                for gen in gens:
                    q = int(gen[p])
                    if q not in lvl.transversal:
                        lvl.transversal[q] = gen[t_p]
                        nxt.append(q)
            frontier = nxt
        for p in sorted(lvl.transversal):
            t_p = lvl.transversal[p]
            for gen in gens:
                t_q = lvl.transversal[int(gen[p])]
                inv = np.empty_like(t_q)
                inv[t_q] = self._identity
                schreier = inv[gen[t_p]]
                residue = self._sift(lvl_idx + 1, schreier)
                if residue is not None:
                    return self._place(residue)
        return None


def group_order(rs: RootSystem) -> int:
    """|W| from a stabilizer chain on the root permutation action."""
    if rs._order is None:
        chain = StabChain(rs.simple_reflection_perms(), len(rs.roots),
                          base_hint=rs.simple_indices)
        rs._order = chain.order()
        rs._chain = chain
    return rs._order


def stab_chain(rs: RootSystem) -> StabChain:
    group_order(rs)
    return rs._chain


def subgroup_order(rs: RootSystem, generator_indices: Sequence[int]) -> int:
    """Order of the subgroup generated by reflections in the given roots."""
    gens = [rs.reflection_perm(i) for i in generator_indices]
    chain = StabChain(gens, len(rs.roots),
                      base_hint=[rs.positive_index(i) for i in generator_indices])
    return chain.order()


def enumerate_group(rs: RootSystem, limit: int | None = None) -> list[GroupElement]:
    """Every element of W by breadth-first closure of the simple reflections.

    Brute force on purpose: this is the oracle the fast paths are checked
    against.  Only sensible for small groups.
    """
    gens = simple_reflections(rs)
    ident = identity(rs)
    seen = {ident.images.tobytes(): ident}
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = compose(s, g)
                key = h.images.tobytes()
                if key not in seen:
                    seen[key] = h
                    new.append(h)
                    if limit is not None and len(seen) > limit:
                        raise ValueError("group larger than stated limit")
        frontier = new
    return list(seen.values())


# -- generic orbit partition ----------------------------------------------


def orbit_partition(items: Iterable[Hashable],
                    action: Sequence[Callable[[Hashable], Hashable]],
                    ) -> list[list[Hashable]]:
    """Connected components of the item set under a generator action.

    Components come back sorted by their minimal key, each with the minimal
    key first; an action image outside the item set is an enumeration bug
    and is rejected.
    """
    universe = set(items)
    pending = sorted(universe)
    seen: set = set()
    classes: list[list[Hashable]] = []
    for start in pending:
        if start in seen:
            continue
        seen.add(start)
        component = [start]
        frontier = [start]
        while frontier:
            nxt = []
            for key in frontier:
                for act in action:
                    img = act(key)
                    if img in seen:
                        continue
                    if img not in universe:
                        raise InternalError(
                            "orbit action left the key set; enumeration is incomplete")
                    seen.add(img)
                    component.append(img)
                    nxt.append(img)
            frontier = nxt
        component.sort()
        classes.append(component)
    return classes
