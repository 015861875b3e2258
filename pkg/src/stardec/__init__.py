"""Star-decomposition engine: decide, construct and certify k-star
decompositions; orientation solvers; connectivity certificates; builders for
the counterexample families; isomorph-free enumeration of regular graphs."""

__version__ = "0.1.0"

from .graph import Graph, from_edge_list, parse_graph6, write_graph6  # noqa: F401
