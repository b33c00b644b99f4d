"""Combinatorial criteria for quadratic Groebner bases and primality.

* ``prop21``: the interval condition equivalent to the inner 2-minors being
  the reduced Groebner basis under the odd (resp. even) orders.
* ``pi``: the vertex condition that can block the rotated order ``<_v^k``.
  It is written out for ``k = 1`` and transported to the other orders by the
  grid symmetry that turns order ``k`` into order 1.
* ``primality_sufficient``: the certificate built from the two.
* ``thin_obstructions``: forbidden local configurations of thin polyominoes.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

from .errors import BadIndex, NotThin, VertexNotInP
from .geometry import Polyomino, Vertex, is_thin, pattern_matches, validate
from .orders import EVEN, ODD, check_index, symmetry_for

OBSTRUCTIONS = {
    "odd": ("DIAG_NE", "SKEW_I", "SKEW_II"),
    "even": ("DIAG_NW", "SKEW_III", "SKEW_IV"),
}


def _parity_name(parity) -> str:
    if parity in ("odd", "even"):
        return parity
    if parity in (ODD, "O"):
        return "odd"
    if parity in (EVEN, "E"):
        return "even"
    if isinstance(parity, int):
        check_index(parity)
        return "odd" if parity % 2 else "even"
    raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")


def _indexes(P: Polyomino):
    """Inner intervals keyed by each of their four corners."""
    by_ll, by_ur, by_ul, by_lr = (defaultdict(list) for _ in range(4))
    for iv in P.inner_intervals:
        by_ll[iv.lower_left].append(iv)
        by_ur[iv.upper_right].append(iv)
        by_ul[iv.upper_left].append(iv)
        by_lr[iv.lower_right].append(iv)
    return by_ll, by_ur, by_ul, by_lr


def _inner(inner, ll, ur) -> bool:
    return (ll[0], ll[1], ur[0], ur[1]) in inner


def prop21_violations(P: Polyomino, parity) -> List[Tuple]:
    """Pairs of inner intervals that break the quadratic condition for ``parity``."""
    parity = _parity_name(parity)
    inner = P.inner_interval_set
    by_ll, _, by_ul, _ = _indexes(P)
    bad = []
    if parity == "odd":
        # [a,b] and [b,e] meet diagonally at b
        for first in P.inner_intervals:
            a, b = first.diagonal_corners
            for second in by_ll.get(b, ()):
                f, g = second.anti_diagonal_corners
                if not (_inner(inner, a, f) or _inner(inner, a, g)):
                    bad.append((first, second))
    else:
        # d is the lower-right corner of [a,b] and the upper-left corner of [e,f]
        for first in P.inner_intervals:
            a, b = first.diagonal_corners
            d = first.lower_right
            for second in by_ul.get(d, ()):
                e, f = second.diagonal_corners
                low = _inner(inner, (a.x, e.y), d)   # anti-diagonal corners a, e
                high = _inner(inner, d, (f.x, b.y))  # anti-diagonal corners b, f
                if not (low or high):
                    bad.append((first, second))
    return bad


def prop21(P: Polyomino, parity) -> bool:
    return not prop21_violations(P, parity)


def _pi_one(P: Polyomino, v: Vertex) -> bool:
    inner = P.inner_interval_set
    by_ll, _, by_ul, by_lr = _indexes(P)
    # (I): v upper-left of [a,b]; [b,q] inner with lower-right corner s
    for first in by_ul.get(v, ()):
        a, b = first.diagonal_corners
        for second in by_ll.get(b, ()):
            q, s = second.upper_right, second.lower_right
            if _inner(inner, v, q) and not _inner(inner, a, s):
                return True
    # (II): v lower-right of K=[a,b] and upper-left of L=[p,q]
    for K in by_lr.get(v, ()):
        a, b = K.diagonal_corners
        for L in by_ul.get(v, ()):
            p, q = L.diagonal_corners
            if _inner(inner, v, (q.x, b.y)) and not _inner(inner, (a.x, p.y), v):
                return True
    return False


@lru_cache(maxsize=4096)
def _transport(P: Polyomino, k: int) -> Tuple[Polyomino, Tuple[int, int], object]:
    """Image of P under the isometry turning order ``k`` into order 1, plus the shift."""
    tau = symmetry_for(k).inverse()
    image = [tau.map_cell(c) for c in P.cells]
    dx = -min(c[0] for c in image)
    dy = -min(c[1] for c in image)
    Q = validate([(x + dx, y + dy) for x, y in image])
    return Q, (dx, dy), tau


def pi(P: Polyomino, v, k: int) -> bool:
    """Whether vertex ``v`` satisfies the blocking condition for order ``k``."""
    if not isinstance(k, int) or isinstance(k, bool):
        raise BadIndex(f"order index must be in 1..8, got {k!r}")
    check_index(k)
    v = Vertex(*v)
    if v not in P.vertices:
        raise VertexNotInP(f"vertex {tuple(v)} is not a vertex of the polyomino")
    if k == 1:
        return _pi_one(P, v)
    Q, (dx, dy), tau = _transport(P, k)
    w = tau(v)
    return _pi_one(Q, Vertex(w[0] + dx, w[1] + dy))


def pi_profile(P: Polyomino, v) -> FrozenSet[int]:
    return frozenset(k for k in range(1, 9) if pi(P, v, k))


@dataclass
class ConditionReport:
    predictions: Dict[int, bool]
    profiles: Dict[Vertex, FrozenSet[int]]
    assignment: Optional[Dict[Vertex, int]] = None
    certified: bool = False
    parity: Optional[str] = None
    violations: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        def vkey(v):
            return f"{v.x},{v.y}"
        return {
            "predictions": {str(i): self.predictions[i] for i in sorted(self.predictions)},
            "pi_profiles": {vkey(v): sorted(self.profiles[v]) for v in sorted(self.profiles)},
            "assignment": None if self.assignment is None else
            {vkey(v): self.assignment[v] for v in sorted(self.assignment)},
            "certified": self.certified,
            "parity": self.parity,
            "violations": dict(sorted(self.violations.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def primality_sufficient(P: Polyomino) -> ConditionReport:
    """Check, per parity class, the quadratic condition plus a free order at every vertex."""
    quad = {"odd": prop21(P, "odd"), "even": prop21(P, "even")}
    predictions = {i: quad["odd" if i % 2 else "even"] for i in range(1, 9)}
    profiles = {v: pi_profile(P, v) for v in sorted(P.vertices)}
    report = ConditionReport(predictions, profiles,
                             violations={p: len(prop21_violations(P, p)) for p in quad})
    for name, cls in (("odd", ODD), ("even", EVEN)):
        if not quad[name]:
            continue
        choice = {}
        for v, prof in profiles.items():
            free = [k for k in cls if k not in prof]
            if not free:
                break
            choice[v] = free[0]
        else:
            report.assignment = choice
            report.certified = True
            report.parity = name
            break
    return report


def thin_obstructions(P: Polyomino, parity) -> List[Tuple[str, Tuple[int, int]]]:
    """Every forbidden configuration of the parity class found in a thin polyomino."""
    if not is_thin(P):
        raise NotThin("thin_obstructions needs a polyomino without a 2x2 block")
    out = []
    for name in OBSTRUCTIONS[_parity_name(parity)]:
        out.extend((name, t) for t in pattern_matches(P, name))
    return out
