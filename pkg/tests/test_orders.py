import itertools

import pytest
from hypothesis import given, settings, strategies as st

from polygb.errors import BadIndex, VertexNotInP
from polygb.geometry import Vertex, validate
from polygb.io import load_fixture
from polygb.orders import (ALL_ISOMETRIES, EVEN, ODD, ExponentVector, Isometry, VertexOrder, grevlex,
                           monomial_compare, parity_class, rotate, symmetry_for, vertex_compare)


def _sorted(i, vs):
    return sorted(vs, key=lambda v: [vertex_compare(i, v, w) for w in vs].count(1))


def test_unit_cell_order_one():
    a, b, c, d = (0, 1), (0, 0), (1, 1), (1, 0)
    assert vertex_compare(1, a, b) < 0
    assert vertex_compare(1, b, c) < 0
    assert vertex_compare(1, c, d) < 0


def test_order_five_example():
    assert vertex_compare(5, (1, 0), (0, 0)) < 0


def test_corner_case_chain():
    # labels of the shared-lower-left configuration, translated to the origin
    r, c, a, q, s, b, d = (0, 2), (0, 1), (0, 0), (1, 2), (1, 0), (2, 1), (2, 0)
    chain = [r, c, a, q, s, b, d]
    for u, w in zip(chain, chain[1:]):
        assert vertex_compare(1, u, w) < 0


@pytest.mark.parametrize("i", range(1, 9))
def test_vertex_orders_are_strict_total(i):
    box = [(x, y) for x in range(4) for y in range(4)]
    for u, w in itertools.product(box, box):
        assert vertex_compare(i, u, w) == -vertex_compare(i, w, u)
        assert (vertex_compare(i, u, w) == 0) == (u == w)
    for u, w, z in itertools.product(box[:8], box[:8], box[:8]):
        if vertex_compare(i, u, w) < 0 and vertex_compare(i, w, z) < 0:
            assert vertex_compare(i, u, z) < 0


def test_bad_index():
    with pytest.raises(BadIndex):
        vertex_compare(9, (0, 0), (1, 0))
    with pytest.raises(BadIndex):
        parity_class(0)
    assert parity_class(3) == ODD and parity_class(8) == EVEN


def test_rotate():
    vs = [(0, 1), (0, 0), (1, 1), (1, 0)]
    base = VertexOrder.build(1, vs)
    assert base.vertex_list == ((0, 1), (0, 0), (1, 1), (1, 0))
    assert rotate(base, base.smallest) is base
    rot = rotate(base, (1, 1))
    assert rot.vertex_list == ((1, 1), (1, 0), (0, 1), (0, 0))
    assert rot.smallest == (1, 1)
    with pytest.raises(VertexNotInP):
        rotate(base, (5, 5))


def test_rotating_at_successive_minima_cycles_back():
    P = load_fixture("fig8a")
    base = VertexOrder.build(3, P.vertices)
    order = base
    for _ in range(len(base.vertex_list)):
        order = rotate(order, order.vertex_list[1])
    assert order.vertex_list == base.vertex_list


def _brute_symmetry(i, box):
    """The unique isometry s with a <1 b iff s(a) <i s(b) on every pair of the box."""
    found = []
    for s in ALL_ISOMETRIES:
        if all((vertex_compare(1, a, b) < 0) == (vertex_compare(i, s(a), s(b)) < 0)
               for a, b in itertools.permutations(box, 2)):
            found.append(s)
    return found


@pytest.mark.parametrize("size", [5, 6])
@pytest.mark.parametrize("i", range(1, 9))
def test_symmetry_table_brute_force(i, size):
    box = [(x, y) for x in range(size) for y in range(size)]
    assert _brute_symmetry(i, box) == [symmetry_for(i)]


def test_symmetry_examples():
    assert symmetry_for(1) == Isometry(((1, 0), (0, 1)))
    assert symmetry_for(3)((2, 5)) == (-2, -5)
    for i in range(1, 9):
        s = symmetry_for(i)
        assert s.inverse()(s((3, 7))) == (3, 7)


def test_leading_term_law_on_fixture_cells():
    for name in ("fig8a", "fig8c", "fig10", "figQ"):
        P = load_fixture(name)
        for i in range(1, 9):
            order = grevlex(i, P.vertices)
            for iv in P.inner_intervals:
                diag = ExponentVector.of(*iv.diagonal_corners)
                anti = ExponentVector.of(*iv.anti_diagonal_corners)
                expected = 1 if i in ODD else -1
                assert monomial_compare(order, diag, anti) == expected


def test_exponent_vector():
    e = ExponentVector({(0, 0): 2, (1, 0): 0, (2, 1): 1})
    assert e.degree == 3 and len(e) == 2
    assert e.text() == "x_0_0^2*x_2_1"
    assert ExponentVector().text() == "1"
    assert ExponentVector.of((0, 0)).divides(e)
    assert not e.divides(ExponentVector.of((0, 0)))
    with pytest.raises(ValueError):
        ExponentVector({(0, 0): -1})


VERTS = [Vertex(x, y) for x in range(3) for y in range(2)]
monomials = st.dictionaries(st.sampled_from(VERTS), st.integers(0, 3), max_size=6).map(ExponentVector)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8), st.sampled_from(VERTS), monomials, monomials, monomials)
def test_grevlex_is_a_monomial_order(i, rot, m1, m2, m3):
    order = grevlex(i, VERTS, rot)
    c12 = order.compare(m1, m2)
    assert c12 == -order.compare(m2, m1)
    assert (c12 == 0) == (m1 == m2)
    if c12 > 0:
        assert order.compare(m1 * m3, m2 * m3) > 0
        assert m1.degree >= m2.degree
    if c12 > 0 and order.compare(m2, m3) > 0:
        assert order.compare(m1, m3) > 0
    assert order.compare(m1, ExponentVector()) >= 0


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), monomials, monomials)
def test_grevlex_tie_break_smallest_variable(i, m1, m2):
    """Equal degree: the monomial with the smaller exponent at the smallest differing variable wins."""
    order = grevlex(i, VERTS)
    if m1.degree != m2.degree or m1 == m2:
        return
    for v in order.vertex_list:
        if m1.get(v) != m2.get(v):
            assert (order.compare(m1, m2) > 0) == (m1.get(v) < m2.get(v))
            break


def test_labels():
    P = validate({(0, 0)})
    assert grevlex(4, P.vertices).label() == "<4"
    assert grevlex(4, P.vertices, (1, 1)).label() == "<4@(1,1)"
