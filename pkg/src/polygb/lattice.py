"""The lattice spanned by cell vectors and exact membership tests.

Ambient coordinates: the vertices of the bounding box ``[(0, 0), (m, n)]`` of
the canonical polyomino, numbered row-major by :func:`ambient_index`.  The
offset to the 1-based box used in the literature is kept in ``origin`` so that
exported vectors can be compared with external runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch
from .geometry import Polyomino
from .orders import ExponentVector


def ambient_index(v, m: int, n: int) -> int:
    """Row-major index of vertex ``v`` in the box ``[(0, 0), (m, n)]``."""
    x, y = v
    if not (0 <= x <= m and 0 <= y <= n):
        raise DimensionMismatch(f"vertex {tuple(v)} outside the box [(0,0),({m},{n})]")
    return y * (m + 1) + x


def ambient_vector(e: ExponentVector, m: int, n: int) -> List[int]:
    out = [0] * ((m + 1) * (n + 1))
    for v, k in e.items():
        out[ambient_index(v, m, n)] += k
    return out


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Row-style HNF of the integer row lattice (zero rows dropped).

    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.
    """
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    out: List[List[int]] = []
    for col in range(len(A[0])):
        active = [r for r in A if r[col]]
        if not active:
            continue
        rest = [r for r in A if not r[col]]
        # Euclid on the column until a single row carries it
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        for i, o in enumerate(out):
            q = o[col] // piv[col]
            if q:
                out[i] = [a - q * b for a, b in zip(o, piv)]
        out.append(piv)
        A = rest
        if not A:
            break
    return out


def _pivot(row: Sequence[int]) -> int:
    for j, a in enumerate(row):
        if a:
            return j
    return -1


@dataclass(frozen=True)
class LatticeBasis:
    m: int
    n: int
    rows: Tuple[Tuple[int, ...], ...]
    hnf: Tuple[Tuple[int, ...], ...]
    origin: Tuple[int, int] = (1, 1)

    @property
    def dimension(self) -> int:
        return (self.m + 1) * (self.n + 1)

    @property
    def rank(self) -> int:
        return len(self.hnf)

    def residue(self, w: Sequence[int]) -> Tuple[int, ...]:
        """Canonical coset representative of ``w`` modulo the lattice."""
        if len(w) != self.dimension:
            raise DimensionMismatch(f"expected length {self.dimension}, got {len(w)}")
        w = list(w)
        for row in self.hnf:
            j = _pivot(row)
            q = w[j] // row[j]
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        return tuple(w)

    def index_of(self, v) -> int:
        return ambient_index(v, self.m, self.n)


def cell_vectors(P: Polyomino) -> LatticeBasis:
    """One row ``e_ij + e_(i+1)(j+1) - e_(i+1)j - e_i(j+1)`` per cell."""
    m, n = P.width, P.height
    rows = []
    for c in sorted(P.cells):
        r = [0] * ((m + 1) * (n + 1))
        r[ambient_index((c.x, c.y), m, n)] += 1
        r[ambient_index((c.x + 1, c.y + 1), m, n)] += 1
        r[ambient_index((c.x + 1, c.y), m, n)] -= 1
        r[ambient_index((c.x, c.y + 1), m, n)] -= 1
        rows.append(tuple(r))
    hnf = hermite_normal_form(rows)
    return LatticeBasis(m, n, tuple(rows), tuple(tuple(r) for r in hnf))


def membership(L: LatticeBasis, w: Sequence[int]) -> bool:
    """True iff ``w`` is an integer combination of the cell vectors."""
    if len(w) != L.dimension:
        raise DimensionMismatch(f"expected length {L.dimension}, got {len(w)}")
    w = list(w)
    for row in L.hnf:
        j = _pivot(row)
        if w[j] % row[j]:
            return False
        q = w[j] // row[j]
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    return not any(w)


def binomial_in_lattice_ideal(L: LatticeBasis, f) -> bool:
    plus = ambient_vector(f.plus, L.m, L.n)
    minus = ambient_vector(f.minus, L.m, L.n)
    return membership(L, [a - b for a, b in zip(plus, minus)])


def find_witness_bruteforce(P: Polyomino, max_degree: Optional[int] = None,
                            min_degree: int = 2, budget: Optional[int] = None):
    """Search for ``x^a - x^b`` in the lattice ideal but not in ``I_P``, by degree.

    Monomials of each degree are grouped by lattice coset and by normal form
    modulo a basis of ``I_P``; two monomials in one coset with different normal
    forms give a witness.  Returns a Binomial or None.  The default degree
    bound ``2 * rank`` is a heuristic, not a completeness guarantee.
    """
    from .gbasis import Binomial, buchberger, inner_2_minors, order_for, ring_for, _nf_monomial

    if max_degree is None:
        max_degree = 2 * P.rank
    L = cell_vectors(P)
    order = order_for(P, 1)
    B = buchberger(inner_2_minors(P), order, budget)
    ring = ring_for(order)
    packed = [ring.from_binomial(f) for f in B.elements]
    vertices = sorted(P.vertices)
    idx = [L.index_of(v) for v in vertices]
    for d in range(min_degree, max_degree + 1):
        seen: Dict[Tuple[int, ...], Dict[int, ExponentVector]] = {}
        for combo in itertools.combinations_with_replacement(range(len(vertices)), d):
            w = [0] * L.dimension
            for k in combo:
                w[idx[k]] += 1
            res = L.residue(w)
            mono = ExponentVector((vertices[k], 1) for k in combo)
            nf = _nf_monomial(ring.encode(mono), packed, ring.guard)
            bucket = seen.setdefault(res, {})
            if nf not in bucket:
                if bucket:
                    other = next(iter(bucket.values()))
                    return Binomial(mono, other)
                bucket[nf] = mono
    return None
