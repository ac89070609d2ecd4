"""Tutte polynomials, Fourier analysis on Z_q, and graph polynomials mod (x_v^q - 1)."""

from .graph import Multigraph, build_family, contract, delete, graph_stats
from .tutte import BiPoly, tutte_dc, tutte_subset

__version__ = "0.1.0"
