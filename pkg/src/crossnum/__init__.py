"""Exact k-edge, crossing-number and allowable-sequence computations."""
from .geom import Point, PointSet, generate, orientation
from .kedges import edge_vector, crossing_brute, crossing_from_edges, lower_bound_leq_k
from .allowseq import HalfPeriod, from_point_set
from .decomp import search_decomposition, main_theorem_check
from .digraph import build_D0
from .bounds import k30_report

__version__ = "0.1.0"
