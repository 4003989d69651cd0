"""Root system construction, reflection geometry, subsystem search."""

from fractions import Fraction

import pytest

from weylinv import TypeSpec, build_root_system, find_subsystem, reflect


def closure_oracle(simples):
    """Reflection closure with plain Fraction arithmetic, no library reuse."""
    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    def mirror(v, alpha):
        c = 2 * dot(v, alpha) / dot(alpha, alpha)
        return tuple(x - c * a for x, a in zip(v, alpha))

    roots = {tuple(map(Fraction, s)) for s in simples}
    changed = True
    while changed:
        changed = False
        for r in list(roots):
            for s in simples:
                image = mirror(r, tuple(map(Fraction, s)))
                if image not in roots:
                    roots.add(image)
                    changed = True
    return roots


# -- TypeSpec -----------------------------------------------------------------

def test_typespec_roundtrip():
    for text in ["A1", "a1", "A1xD6", "b4", "E8", "G2", "A1xA1xA1"]:
        spec = TypeSpec.parse(text)
        assert TypeSpec.parse(str(spec)) == spec
    assert str(TypeSpec.parse("a1xd6")) == "A1xD6"
    assert str(TypeSpec.parse("A1Xd6")) == "A1xD6"  # separator case-insensitive too


@pytest.mark.parametrize("bad", ["E5", "E9", "F3", "F5", "G3", "G1", "D1",
                                 "A0", "B0", "H3", "Q2", "", "A", "1A"])
def test_typespec_rejects_illegal(bad):
    with pytest.raises(ValueError):
        TypeSpec.parse(bad)


def test_typespec_error_names_offender():
    with pytest.raises(ValueError, match="E5"):
        TypeSpec.parse("A1xE5")


# -- construction ----------------------------------------------------------------

def test_a1_roots(system):
    rs = system("A1")
    assert len(rs.roots) == 2
    assert rs.n_positive == 1


def test_g2_closure_matches_oracle(system):
    rs = system("G2")
    simples = [rs.roots[i].coords for i in rs.simple_indices]
    oracle = closure_oracle(simples)
    assert len(oracle) == 12
    assert {r.coords for r in rs.roots} == oracle


def test_e8_closure_matches_oracle(system):
    rs = system("E8")
    simples = [rs.roots[i].coords for i in rs.simple_indices]
    oracle = closure_oracle(simples)
    assert len(oracle) == 240
    assert {r.coords for r in rs.roots} == oracle


@pytest.mark.parametrize("name,total", [
    ("A2", 6), ("B2", 8), ("C3", 18), ("D4", 24), ("F4", 48),
    ("E6", 72), ("E7", 126), ("A1xD6", 62),
])
def test_root_counts_match_oracle(system, name, total):
    rs = system(name)
    simples = [rs.roots[i].coords for i in rs.simple_indices]
    assert len(closure_oracle(simples)) == total
    assert len(rs.roots) == total


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "G2", "F4", "E6"])
def test_plus_minus_pairing_and_lengths(system, name):
    rs = system(name)
    P = rs.n_positive
    assert len(rs.roots) == 2 * P
    for i in range(P):
        neg = rs.roots[rs.negative_index(i)]
        assert neg.coords == tuple(-c for c in rs.roots[i].coords)
        assert rs.roots[i].positive and not neg.positive
    for r in rs.roots:
        assert r.norm2 in (1, 2, 3, 4)
        assert any(r.coords)


@pytest.mark.parametrize("name", ["A2", "B3", "C3", "G2", "F4", "D4"])
def test_cartan_integers_and_reflection_stability(system, name):
    rs = system(name)
    for i in range(rs.n_positive):
        for j in range(rs.n_positive):
            num = 2 * rs.inner(i, j)
            den = rs.inner(j, j)
            assert (num / den).denominator == 1
    # the image of every root under every simple reflection is a root
    for si in rs.simple_indices:
        perm = rs.reflection_perm(si)
        assert sorted(int(v) for v in perm) == list(range(len(rs.roots)))


# entry (i, j) is 2(a_i, a_j)/(a_j, a_j); note B3's short last root makes
# the (2, 3) entry -2 while C3 has it the other way around
STANDARD_CARTAN = {
    "A2": [[2, -1], [-1, 2]],
    "B3": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
    "C3": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
    "D4": [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
    "F4": [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    "G2": [[2, -1], [-3, 2]],
}


@pytest.mark.parametrize("name", sorted(STANDARD_CARTAN))
def test_cartan_matrix_of_each_factor(system, name):
    rs = system(name)
    si = rs.simple_indices
    got = [[rs.cartan(i, j) for j in si] for i in si]
    assert got == STANDARD_CARTAN[name]


def test_cartan_matrix_of_product_is_block_diagonal(system):
    rs = system("A1xA2")
    si = rs.simple_indices
    got = [[rs.cartan(i, j) for j in si] for i in si]
    assert got == [[2, 0, 0], [0, 2, -1], [0, -1, 2]]


def test_positivity_by_first_simple_coordinate(system):
    rs = system("B3")
    for r in rs.roots:
        lead = next(v for v in r.scoords if v)
        assert (lead > 0) == r.positive


def test_canonical_order_positive_first_by_height(system):
    rs = system("F4")
    heights = [r.height for r in rs.roots[:rs.n_positive]]
    assert heights == sorted(heights)
    assert heights[0] == 1


# -- reflect --------------------------------------------------------------------

def test_reflect_root_to_negative(system):
    rs = system("A1")
    alpha = rs.roots[0].coords
    assert reflect(rs, rs.roots[0], alpha) == tuple(-c for c in alpha)


def test_reflect_fixes_orthogonal_vector(system):
    rs = system("B2")
    e1_minus_e2 = rs.index_of((Fraction(1), Fraction(-1)))
    fixed = (Fraction(1), Fraction(1))
    assert reflect(rs, e1_minus_e2, fixed) == fixed


def test_reflect_is_involution_on_all_b2_roots(system):
    rs = system("B2")
    for m in range(len(rs.roots)):
        for r in rs.roots:
            once = reflect(rs, m, r.coords)
            assert reflect(rs, m, once) == r.coords


def test_reflect_rejects_dimension_mismatch(system):
    rs = system("B2")
    with pytest.raises(ValueError):
        reflect(rs, 0, (Fraction(1),))
    with pytest.raises(ValueError):
        reflect(rs, (Fraction(5), Fraction(7)), (Fraction(1), Fraction(0)))


# -- find_subsystem ---------------------------------------------------------------

def test_find_subsystem_d5_in_e6(system):
    rs = system("E6")
    emb = find_subsystem(rs, "D5")
    assert emb is not None
    tc = emb.sub_simple_roots
    # chosen roots realize the D5 Cartan matrix
    sub = build_root_system("D5")
    si = sub.simple_indices
    want = [[sub.cartan(i, j) for j in si] for i in si]
    got = [[rs.cartan(a, b) for b in tc] for a in tc]
    assert got == want


def test_find_subsystem_d8_closure_size(system):
    rs = system("E8")
    emb = find_subsystem(rs, "D8")
    assert emb is not None
    closure = emb.closure()
    assert len(closure) == 112
    # closure is stable under its own reflections
    idx_set = set(closure)
    for i in closure:
        perm = rs.reflection_perm(i)
        assert all(int(perm[j]) in idx_set for j in closure)


def test_find_subsystem_not_found(system):
    assert find_subsystem(system("A2"), "B2") is None


def test_find_subsystem_respects_lengths(system):
    rs = system("G2")
    emb = find_subsystem(rs, "A1xA1")
    assert emb is not None
    a, b = emb.sub_simple_roots
    assert rs.inner(a, b) == 0
    # G2 orthogonal pairs are always one short, one long
    assert {rs.roots[a].norm2, rs.roots[b].norm2} == {1, 3}


# -- JSON export -------------------------------------------------------------------

def test_root_system_json_schema(system):
    rs = system("B2")
    data = rs.to_json_dict()
    assert data["type"] == "B2"
    assert data["rank"] == 2
    assert len(data["roots"]) == 8
    for row in data["roots"]:
        for value in row:
            num = Fraction(value)  # "p/q" strings parse back
            assert isinstance(num, Fraction)
    # half-integer coordinates survive the round trip for E8
    e8 = system("E8").to_json_dict()
    assert any("/" in v for row in e8["roots"] for v in row)
