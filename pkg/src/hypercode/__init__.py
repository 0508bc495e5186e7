"""Binary codes on t-partite regular hypergraphs: construction, decoding and spectrum bounds."""

from .gf2 import BitMatrix, BitVector, nullspace_basis, random_parity_matrix, rank
from .hypergraph_code import HypergraphCode, brute_weight_distribution, build, contains
from .hypergraphs import Graph, Hypergraph, path_hypergraph, random_hypergraph
from .kernels import BACKEND
from .local_codes import LocalCode, SizingError, make_named_code

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BitMatrix",
    "BitVector",
    "Graph",
    "Hypergraph",
    "HypergraphCode",
    "LocalCode",
    "SizingError",
    "brute_weight_distribution",
    "build",
    "contains",
    "make_named_code",
    "nullspace_basis",
    "path_hypergraph",
    "random_hypergraph",
    "random_parity_matrix",
    "rank",
]
