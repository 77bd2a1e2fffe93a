"""Polyomino ideals and their toric representation for rectangles with a
convex polyomino removed."""

from .algebra import Binomial, Monomial, MonomialOrder, buchberger, ideal_equal
from .grid import Cell, Interval, Point, Polyomino, classify, polyomino_from_cells
from .instance import Instance, emit_instance, parse_instance, random_instance
from .intervals import lambda_family, special_interval
from .toric import build_toric_map, inner_minor_generators, markov_basis, verify_theorem

__version__ = "0.1.0"
