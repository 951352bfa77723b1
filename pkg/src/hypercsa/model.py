"""Hypergraph model: parsing, validation, canonical form, writing.

A hypergraph here is a multiset of non-empty hyperedges over dense node
ids 0..node_count-1. Within one edge no node repeats (a repeated highest
node would corrupt the cycle structure of the index), but the same edge
may occur any number of times.

Input labels need not be dense: parse_edge_list maps arbitrary
non-negative integer labels to dense ids in ascending label order, so the
relative order of labels is preserved and sorted inputs stay sorted.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, TextIO, Union

import numpy as np

from .errors import EdgeListParseError, UnknownLabelError, ValidationError

_SEPARATORS = re.compile(r"[,\s]+")
_COMMENT_PREFIXES = ("#", "%")


@dataclass(frozen=True)
class Hypergraph:
    """A multiset of hyperedges over dense node ids."""

    node_count: int
    edges: tuple

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def incidence_count(self) -> int:
        """Total number of node slots over all edges (sum of edge ranks)."""
        return sum(len(e) for e in self.edges)

    def validate(self) -> "Hypergraph":
        for e in self.edges:
            if len(e) == 0:
                raise ValidationError("empty hyperedge")
            if len(set(e)) != len(e):
                raise ValidationError(f"edge {e} repeats a node")
            for v in e:
                if not 0 <= v < self.node_count:
                    raise ValidationError(
                        f"node id {v} out of range [0, {self.node_count})"
                    )
        return self


@dataclass(frozen=True)
class NodeMap:
    """Order-preserving bijection between external labels and dense ids."""

    dense_to_external: tuple
    external_to_dense: dict = field(repr=False)

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> "NodeMap":
        ordered = sorted(set(labels))
        return cls(tuple(ordered), {lab: i for i, lab in enumerate(ordered)})

    @classmethod
    def identity(cls, n: int) -> "NodeMap":
        rng = range(n)
        return cls(tuple(rng), {i: i for i in rng})

    def __len__(self) -> int:
        return len(self.dense_to_external)

    @property
    def is_identity(self) -> bool:
        return all(i == lab for i, lab in enumerate(self.dense_to_external))

    def to_dense(self, label: int) -> int:
        try:
            return self.external_to_dense[label]
        except KeyError:
            raise UnknownLabelError(f"label {label} does not occur in the graph") from None

    def to_external(self, dense: int) -> int:
        return self.dense_to_external[dense]


def parse_edge_list(source: Union[str, Iterable[str], TextIO]):
    """Parse edge-list text into a (Hypergraph, NodeMap) pair.

    One edge per line: non-negative integer labels separated by commas
    and/or whitespace. Blank lines and lines starting with '#' or '%' are
    skipped. Duplicate lines are kept (edge multiset). A repeated label
    within one line is an error, as is a line holding only separators.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source
    raw_edges = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(_COMMENT_PREFIXES):
            continue
        tokens = [tok for tok in _SEPARATORS.split(stripped) if tok]
        if not tokens:
            raise ValidationError("edge line holds only separators", lineno)
        labels = []
        for tok in tokens:
            try:
                value = int(tok)
            except ValueError:
                raise EdgeListParseError(f"malformed token {tok!r}", lineno) from None
            if value < 0:
                raise EdgeListParseError(f"negative label {value}", lineno)
            labels.append(value)
        if len(set(labels)) != len(labels):
            raise ValidationError(
                "edge repeats a node; an edge must contain each node exactly once",
                lineno,
            )
        raw_edges.append(labels)

    node_map = NodeMap.from_labels(lab for edge in raw_edges for lab in edge)
    dense = node_map.external_to_dense
    edges = tuple(tuple(dense[lab] for lab in edge) for edge in raw_edges)
    return Hypergraph(len(node_map), edges).validate(), node_map


def is_canonical(g: Hypergraph) -> bool:
    """One O(M) scan: nodes ascending per edge, edges in canonical order."""
    prev = None
    for e in g.edges:
        if any(e[i] >= e[i + 1] for i in range(len(e) - 1)):
            return False
        if prev is not None and e > prev:
            return False
        prev = e
    return True


def canonicalize(g: Hypergraph) -> Hypergraph:
    """Sort nodes ascending inside edges, then edges descending.

    Descending here is plain sequence comparison, so an edge that extends
    another sorts before the shorter one ((0, 1) before (0,)). The index
    construction depends on this: it guarantees that at every edge
    boundary of the flattened text the following suffix is strictly
    smaller, which is what turns edge boundaries into detectable descents.
    Already-canonical input is detected in one scan and returned unchanged.
    """
    if is_canonical(g):
        return g
    edges = sorted((tuple(sorted(e)) for e in g.edges), reverse=True)
    return Hypergraph(g.node_count, tuple(edges))


def write_edge_list(g: Hypergraph, node_map: NodeMap = None) -> str:
    """Render one edge per line, nodes comma-separated ascending.

    External labels are restored through node_map when given. Output uses
    LF line endings.
    """
    out = []
    for e in canonicalize(g).edges:
        nodes = e if node_map is None else [node_map.to_external(v) for v in e]
        out.append(",".join(str(v) for v in nodes))
    return "\n".join(out) + ("\n" if out else "")


def edge_multiset(edges) -> list:
    """Normalized form for order-insensitive multiset comparison."""
    return sorted(tuple(sorted(e)) for e in edges)


def text_to_edges(text: np.ndarray) -> list:
    """Recover the canonical edge list from an index text.

    The text is partitioned after every position i with text[i] >=
    text[i+1]; each part is one edge's ascending node sequence.
    """
    edges = []
    current = []
    arr = np.asarray(text).tolist()
    for i, v in enumerate(arr):
        current.append(v)
        if i + 1 == len(arr) or v >= arr[i + 1]:
            edges.append(tuple(current))
            current = []
    return edges
