"""Reference engine: incidence lists and exhaustive scans.

Deliberately simple. This is the ground truth the succinct engine is
differential-tested against, and the baseline the benchmarks compare with.
Edges are stored fully materialized; correctness beats space here.
"""
from __future__ import annotations

import numpy as np

from .errors import QueryUsageError, UnknownLabelError
from .model import Hypergraph, NodeMap, edge_multiset


class NaiveEngine:
    """Incidence-list engine answering the same queries as the index."""

    def __init__(self, edges):
        """edges: iterable of label tuples (any order, labels arbitrary)."""
        self.edges = [tuple(sorted(e)) for e in edges]
        self.edge_sets = [frozenset(e) for e in self.edges]
        self.incidence = {}
        for idx, e in enumerate(self.edges):
            for label in e:
                self.incidence.setdefault(label, []).append(idx)

    @classmethod
    def from_hypergraph(cls, g: Hypergraph, node_map: NodeMap = None) -> "NaiveEngine":
        if node_map is None:
            return cls(g.edges)
        return cls(
            tuple(node_map.to_external(v) for v in e) for e in g.edges
        )

    def degree(self, label) -> int:
        if label not in self.incidence:
            raise UnknownLabelError(f"label {label} does not occur in the graph")
        return len(self.incidence[label])

    def contains(self, labels) -> list:
        """All edges (with multiplicity) that are supersets of the query."""
        query = set(labels)
        if not query:
            raise QueryUsageError("contains query needs at least one node")
        for label in query:
            if label not in self.incidence:
                raise UnknownLabelError(f"label {label} does not occur in the graph")
        anchor = min(query, key=lambda lab: (len(self.incidence[lab]), lab))
        return [
            self.edges[i]
            for i in self.incidence[anchor]
            if query <= self.edge_sets[i]
        ]

    def contains_scan(self, labels) -> list:
        """contains by full edge-table scan, no per-node shortcuts."""
        query = set(labels)
        if not query:
            raise QueryUsageError("contains query needs at least one node")
        return [e for e, s in zip(self.edges, self.edge_sets) if query <= s]

    def exists(self, labels) -> int:
        """Multiplicity of the exact edge."""
        labels = tuple(labels)
        if not labels:
            raise QueryUsageError("exists query needs at least one node")
        if len(set(labels)) != len(labels):
            raise QueryUsageError("exists query repeats a label")
        if any(label not in self.incidence for label in labels):
            return 0
        target = tuple(sorted(labels))
        return sum(1 for e in self.edges if e == target)

    def decompress(self) -> list:
        """The edge multiset in normalized order."""
        return edge_multiset(self.edges)


def naive_suffix_sort(seq) -> list:
    """Comparison-sorted suffix order; the oracle for suffix array code."""
    s = tuple(seq)
    return sorted(range(len(s)), key=lambda i: s[i:])


def reference_psi(text) -> np.ndarray:
    """Edge-cycle permutation built directly, without the cycle-walk pass.

    Recovers edge boundaries from the text partition rule, suffix-sorts the
    sentinel-wrapped text with the naive oracle, and wires each edge's
    positions into its own cycle through the inverse suffix array. Used to
    cross-check the production construction.
    """
    text = np.asarray(text, dtype=np.int64)
    m = len(text)
    high = int(text.max()) + 2 if m else 1
    x = np.concatenate(([high], text + 1, [0]))
    sa = naive_suffix_sort(x)
    inv = np.empty(m + 2, dtype=np.int64)
    inv[sa] = np.arange(m + 2)

    psi = np.empty(m, dtype=np.int64)
    start = 0
    for i in range(m):
        last = i + 1 == m or text[i] >= text[i + 1]
        # X position of text position j is j + 1.
        if last:
            psi[inv[i + 1] - 1] = inv[start + 1] - 1
            start = i + 1
        else:
            psi[inv[i + 1] - 1] = inv[i + 2] - 1
    return psi
