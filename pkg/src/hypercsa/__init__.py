"""hypercsa: a self-indexing hypergraph compressor.

Build an index from an edge list, persist it, and answer degree,
contains and exists queries directly on the compressed form, or
decompress it back losslessly.

    >>> from hypercsa import parse_edge_list, build_index
    >>> g, node_map = parse_edge_list("0,1,2,3\\n1,2,3\\n2\\n0,1,2,4\\n2\\n")
    >>> idx = build_index(g, node_map=node_map)
    >>> idx.degree(2)
    5
    >>> idx.exists((1, 2, 3))
    1
"""
from .builder import (
    adjust_psi,
    build_degree_bitvector,
    build_index,
    build_psi_csa,
    construct_text,
)
from .errors import (
    BadMagicError,
    ChecksumMismatchError,
    EdgeListParseError,
    HypercsaError,
    IndexFormatError,
    InternalInvariantError,
    QueryUsageError,
    TruncatedIndexError,
    UnknownLabelError,
    UnsupportedVersionError,
    ValidationError,
)
from .index import HyperIndex
from .kernels import BACKEND
from .model import (
    Hypergraph,
    NodeMap,
    canonicalize,
    edge_multiset,
    parse_edge_list,
    write_edge_list,
)
from .naive import NaiveEngine, naive_suffix_sort

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BadMagicError",
    "ChecksumMismatchError",
    "EdgeListParseError",
    "HyperIndex",
    "Hypergraph",
    "HypercsaError",
    "IndexFormatError",
    "InternalInvariantError",
    "NaiveEngine",
    "NodeMap",
    "QueryUsageError",
    "TruncatedIndexError",
    "UnknownLabelError",
    "UnsupportedVersionError",
    "ValidationError",
    "adjust_psi",
    "build_degree_bitvector",
    "build_index",
    "build_psi_csa",
    "canonicalize",
    "construct_text",
    "edge_multiset",
    "naive_suffix_sort",
    "parse_edge_list",
    "write_edge_list",
    "__version__",
]
