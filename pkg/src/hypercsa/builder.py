"""Index construction pipeline.

Three steps: flatten the canonical hypergraph into an integer text, build
the suffix-array side (degree-boundary bitvector plus the text-cycle
permutation over a sentinel-wrapped copy), then rewire that single cycle
into one cycle per edge and gap-encode it.

The sentinel wrap puts a unique highest symbol before the text and a
unique lowest one after it, which resolves suffix ties between equal
edges (two identical single-node loops would otherwise compare equal as
rotations). After the rewiring these two sentinel positions must form a
2-cycle of their own; it is removed and all positions shift down by one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .bitvec import RankSelectBitVector
from .errors import InternalInvariantError, ValidationError
from .index import HyperIndex
from .model import Hypergraph, NodeMap, canonicalize
from .permutation import DEFAULT_SAMPLE_PERIOD, GapEncodedPermutation


def construct_text(g: Hypergraph) -> np.ndarray:
    """Concatenate the canonical edges' node sequences.

    The result has one symbol per incidence; partitioning it after every
    non-ascending step recovers the canonical edge list.
    """
    g = canonicalize(g.validate())
    if g.edge_count == 0:
        return np.empty(0, dtype=np.int64)
    return np.fromiter(
        (v for e in g.edges for v in e), dtype=np.int64, count=g.incidence_count
    )


def build_degree_bitvector(text: np.ndarray, node_count: int) -> RankSelectBitVector:
    """Unary degree encoding: a one at each cumulative-frequency boundary.

    Length is len(text) + 1; the extra trailing one keeps the interval of
    the highest node well-defined via select.
    """
    freq = np.bincount(text, minlength=node_count)
    if len(freq) > node_count:
        raise ValidationError("text contains a node id >= node_count")
    if (freq == 0).any():
        missing = int(np.flatnonzero(freq == 0)[0])
        raise ValidationError(f"node {missing} has no occurrence in the text")
    boundaries = np.concatenate(([0], np.cumsum(freq)))
    return RankSelectBitVector.from_positions(len(text) + 1, boundaries)


@dataclass
class SuffixArrayWorkspace:
    """Transient suffix-array state over the sentinel-wrapped text."""

    x: np.ndarray
    sa: np.ndarray
    sa_inv: np.ndarray
    psi_csa: np.ndarray


def build_psi_csa(text: np.ndarray) -> SuffixArrayWorkspace:
    """Suffix-sort the sentinel-wrapped text and derive its cycle map.

    x = [highest symbol] + (text shifted by one) + [0]. The cycle map sends
    each suffix-order position to the position holding the next text
    position, one single cycle over all len(text) + 2 entries.
    """
    text = np.asarray(text, dtype=np.int64)
    m = len(text)
    x = np.empty(m + 2, dtype=np.int64)
    x[0] = (int(text.max()) if m else 0) + 2
    x[1 : m + 1] = text + 1
    x[m + 1] = 0
    sa = np.asarray(kernels.suffix_array_ints(x), dtype=np.int64)
    if sa[0] != m + 1 or sa[m + 1] != 0:
        raise InternalInvariantError("sentinel suffixes not at the expected rank")
    sa_inv = np.empty(m + 2, dtype=np.int64)
    sa_inv[sa] = np.arange(m + 2)
    psi_csa = sa_inv[(sa + 1) % (m + 2)]
    return SuffixArrayWorkspace(x, sa, sa_inv, psi_csa)


def adjust_psi(ws: SuffixArrayWorkspace) -> np.ndarray:
    """Turn the single text cycle into one cycle per edge.

    Runs the sequential cycle walk over the sentinel-wrapped permutation,
    then checks that the two sentinel positions pair up, drops them, and
    shifts the remaining positions down by one.
    """
    psi = ws.psi_csa.copy()
    m = len(psi) - 2
    kernels.adjust_cycle_walk(psi)
    if psi[0] != m + 1 or psi[m + 1] != 0:
        raise InternalInvariantError(
            "sentinel cycle corrupt after adjustment; suffix array is broken"
        )
    return psi[1 : m + 1] - 1


def build_index(
    g: Hypergraph,
    sample_period: int = DEFAULT_SAMPLE_PERIOD,
    node_map: NodeMap = None,
) -> HyperIndex:
    """Run the full pipeline on a valid hypergraph."""
    g = canonicalize(g.validate())
    if g.edge_count == 0:
        raise ValidationError("cannot index an empty hypergraph")
    if node_map is None:
        node_map = NodeMap.identity(g.node_count)
    text = construct_text(g)
    degree_bits = build_degree_bitvector(text, g.node_count)
    psi = adjust_psi(build_psi_csa(text))
    encoded = GapEncodedPermutation.encode(psi, sample_period)
    return HyperIndex(
        degree_bits=degree_bits,
        psi=encoded,
        node_map=node_map,
        node_count=g.node_count,
        edge_count=g.edge_count,
        incidence_count=g.incidence_count,
        sample_period=sample_period,
    )
