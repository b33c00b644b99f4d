import json
import random
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_polyominoes
from polygb import gbasis as gb
from polygb.conditions import (OBSTRUCTIONS, pi, pi_profile, primality_sufficient, prop21,
                               prop21_violations, thin_obstructions)
from polygb.errors import BadIndex, NotThin, VertexNotInP
from polygb.families import make_thin_cycle
from polygb.geometry import is_thin, validate
from polygb.io import load_fixture
from polygb.orders import EVEN, ODD

CELL = validate({(0, 0)})
BAR = validate({(0, 0), (1, 0), (2, 0), (3, 0)})
ANNULUS = validate({(x, y) for x in range(3) for y in range(3)} - {(1, 1)})
STAIRCASE = validate({(0, 0), (1, 0), (1, 1), (2, 1)})
# cells (0,0) and (1,1) meet at (1,1); (0,1) bridges them from above
CORNER_L = validate({(0, 0), (0, 1), (1, 1)})


def test_prop21_trivial_cases():
    for P in (CELL, BAR):
        assert prop21(P, "odd") and prop21(P, "even")
        assert prop21_violations(P, "odd") == []


def test_prop21_examples():
    assert prop21(ANNULUS, "odd") and prop21(ANNULUS, "even")
    fig8a = load_fixture("fig8a")
    assert not prop21(fig8a, "odd")
    assert prop21_violations(fig8a, "odd")


def test_prop21_parity_spellings():
    P = load_fixture("fig8b")
    assert prop21(P, "odd") == prop21(P, ODD) == prop21(P, 3)
    assert prop21(P, "even") == prop21(P, EVEN) == prop21(P, 8)
    with pytest.raises(ValueError):
        prop21(P, "sideways")


def test_prop21_matches_engine_small():
    for P in naive_polyominoes(5):
        for i in range(1, 9):
            assert gb.is_quadratic_gb(P, i) == prop21(P, i), (sorted(P.cells), i)


def test_pi_trivial_bar():
    for v in BAR.vertices:
        assert pi_profile(BAR, v) == frozenset()


def test_pi_one_on_diagonal_meeting():
    # I = cell (0,0), J = cell (1,1); v = (0,1) is the upper-left of I, q = (2,2), s = (2,1)
    # [v,q] is inner and [a,s] is not: condition (I)
    v = (0, 1)
    assert pi(CORNER_L, v, 1)
    assert gb.is_quadratic_gb(CORNER_L, 1)
    assert not gb.is_quadratic_gb(CORNER_L, 1, v)


def test_pi_one_case_two():
    # K = cell (0,1) with lower-right (1,1); L = cell (1,0) with upper-left (1,1)
    # test interval [(1,1),(2,2)] = cell (1,1) inner, [(0,0),(1,1)] = cell (0,0) missing
    P = validate({(0, 1), (1, 0), (1, 1)})
    assert pi(P, (1, 1), 1)
    assert not gb.is_quadratic_gb(P, 1, (1, 1))
    # filling the missing cell breaks the second half of the condition
    assert not pi(load_fixture("figQ"), (1, 1), 1)


def test_pi_errors():
    with pytest.raises(BadIndex):
        pi(CELL, (0, 0), 9)
    with pytest.raises(BadIndex):
        pi(CELL, (0, 0), 0)
    with pytest.raises(VertexNotInP):
        pi(CELL, (3, 3), 1)


def test_pi_behavioural_law_exhaustive_small():
    """Under a quadratic base order, pi_k(v) holds exactly when rotating at v breaks quadraticity."""
    for P in naive_polyominoes(4):
        for k in range(1, 9):
            if not gb.is_quadratic_gb(P, k):
                continue
            for v in sorted(P.vertices):
                assert pi(P, v, k) == (not gb.is_quadratic_gb(P, k, v)), (sorted(P.cells), v, k)


def test_no_vertex_has_both_conjugate_conditions_when_thin():
    for P in naive_polyominoes(6):
        if not is_thin(P):
            continue
        for v in P.vertices:
            prof = pi_profile(P, v)
            assert not {1, 3} <= prof
            assert not {5, 7} <= prof


def test_report_single_cell_certified():
    r = primality_sufficient(CELL)
    assert r.certified and r.parity == "odd"
    assert set(r.assignment) == set(CELL.vertices)
    assert all(k in ODD for k in r.assignment.values())


def test_report_thin_cycle_runs_of_three():
    for runs in ("R3,U3,L3,D3", "R3,U3,R3,U3,L3,U3,L3,D3,L3,D3,R3,D3"):
        P, shortest = make_thin_cycle(runs)
        assert shortest == 3
        assert primality_sufficient(P).certified


def test_report_fig8a_undecided():
    r = primality_sufficient(load_fixture("fig8a"))
    assert not r.certified and r.assignment is None and r.parity is None
    assert r.violations["odd"] > 0


def _check_report_invariant(P, r):
    if not r.certified:
        return
    cls = ODD if r.parity == "odd" else EVEN
    assert all(r.predictions[i] for i in cls)
    for v in P.vertices:
        k = r.assignment[v]
        assert k in cls and k not in r.profiles[v]
        assert not pi(P, v, k)


def test_report_invariant_and_json():
    for P in list(naive_polyominoes(4)) + [load_fixture(n) for n in ("fig8b", "fig8c", "fig10")]:
        r = primality_sufficient(P)
        _check_report_invariant(P, r)
        doc = json.loads(r.to_json())
        assert sorted(doc) == ["assignment", "certified", "parity", "pi_profiles", "predictions", "violations"]
        assert len(doc["predictions"]) == 8
        assert r.to_json() == primality_sufficient(P).to_json()


def test_thin_obstructions():
    assert thin_obstructions(ANNULUS, "odd") == [] == thin_obstructions(ANNULUS, "even")
    assert ("SKEW_I", (0, 0)) in thin_obstructions(STAIRCASE, "odd")
    assert thin_obstructions(load_fixture("fig8a"), "odd")
    with pytest.raises(NotThin):
        thin_obstructions(load_fixture("figQ"), "odd")
    assert set(OBSTRUCTIONS["odd"]).isdisjoint(OBSTRUCTIONS["even"])


def test_thin_equivalence_small():
    for P in naive_polyominoes(6):
        if is_thin(P):
            for parity in ("odd", "even"):
                assert prop21(P, parity) == (thin_obstructions(P, parity) == [])


@lru_cache(maxsize=None)
def _quadratic_orders(name):
    P = load_fixture(name)
    return [k for k in range(1, 9) if gb.is_quadratic_gb(P, k)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_pi_law_sampled_on_rings(seed):
    rng = random.Random(seed)
    name = rng.choice(["fig8c", "fig10"])
    P = load_fixture(name)
    cls = _quadratic_orders(name)
    if not cls:
        return
    k = rng.choice(cls)
    v = rng.choice(sorted(P.vertices))
    if not pi(P, v, k):
        assert gb.is_quadratic_gb(P, k, v)
