"""Polyomino ideals: quadratic Groebner bases, combinatorial criteria and primality."""

from .conditions import (ConditionReport, pi, primality_sufficient, prop21,
                         thin_obstructions)
from .errors import InputError, PolyGBError, Timeout
from .families import (GridSpec, enumerate_fixed, make_grid, make_subgrid, make_thin_cycle,
                       split_P1_P2)
from .gbasis import (Binomial, GroebnerBasis, buchberger, colon_by_variable, inner_2_minors,
                     is_prime, is_quadratic_gb, reduce, saturate_all, spoly)
from .geometry import Cell, Interval, Polyomino, Vertex, holes, inner_intervals, is_thin, validate
from .io import load, load_fixture, parse_ascii
from .lattice import LatticeBasis, cell_vectors, membership
from .orders import ExponentVector, MonomialOrder, VertexOrder, grevlex, rotate, symmetry_for

__version__ = "0.1.0"
