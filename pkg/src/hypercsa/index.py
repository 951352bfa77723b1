"""The assembled self-index: container, queries, persistence, stats."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import queries
from .bitvec import RankSelectBitVector
from .errors import InternalInvariantError
from .model import NodeMap
from .permutation import GapEncodedPermutation


@dataclass
class HyperIndex:
    """Immutable self-index over one hypergraph.

    Holds the degree-boundary bitvector, the gap-encoded edge-cycle
    permutation, the label map and the counting parameters. All query
    methods are thread-safe for concurrent readers.
    """

    degree_bits: RankSelectBitVector
    psi: GapEncodedPermutation
    node_map: NodeMap
    node_count: int
    edge_count: int
    incidence_count: int
    sample_period: int

    def __post_init__(self):
        # Interval boundaries (the positions of the ones in the degree
        # bitvector) are derived once; the query walks bisect them instead
        # of issuing one rank call per visited position.
        from .bitvec import _one_positions

        boundaries = _one_positions(self.degree_bits.words, self.degree_bits.nbits)
        self.node_boundaries = boundaries
        self.node_boundaries_list = boundaries.tolist()

    # -- queries ---------------------------------------------------------

    def degree(self, label: int) -> int:
        return queries.degree(self, label)

    def node_interval(self, v: int):
        return queries.node_interval(self, v)

    def node_at(self, pos: int) -> int:
        return queries.node_at(self, pos)

    def extract_edge_at(self, pos: int) -> tuple:
        return queries.extract_edge_at(self, pos)

    def contains(self, labels, prune: bool = True) -> list:
        return queries.contains(self, labels, prune=prune)

    def exists(self, labels) -> int:
        return queries.exists(self, labels)

    def decompress(self):
        return queries.decompress(self)

    # -- persistence -------------------------------------------------------

    def to_bytes(self) -> bytes:
        from . import storage

        return storage.to_bytes(self)

    @classmethod
    def from_bytes(cls, data: bytes) -> "HyperIndex":
        from . import storage

        return storage.from_bytes(data)

    def save(self, path) -> int:
        data = self.to_bytes()
        with open(path, "wb") as fh:
            fh.write(data)
        return len(data)

    @classmethod
    def load(cls, path) -> "HyperIndex":
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read())

    # -- introspection -----------------------------------------------------

    def stats(self) -> dict:
        d_dirs = self.degree_bits.directory_bits()
        psi_sizes = self.psi.size_bits()
        # Sample tables are bit-packed on disk; report that footprint.
        nblocks = len(self.psi.sample_values)
        wv = max(1, max(self.incidence_count - 1, 1).bit_length())
        wb = max(1, max(self.psi.stream_bits, 1).bit_length())
        return {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "incidence_count": self.incidence_count,
            "sample_period": self.sample_period,
            "d_payload_bits": self.degree_bits.payload_bits(),
            "d_rank_dir_bits": d_dirs["rank"],
            "d_select_dir_bits": d_dirs["select"],
            "psi_stream_bits": psi_sizes["stream"],
            "psi_sample_bits": nblocks * (wv + wb),
            "node_map_identity": self.node_map.is_identity,
            "node_map_bytes": 0
            if self.node_map.is_identity
            else 1
            + (
                len(self.node_map)
                * max(1, int(self.node_map.dense_to_external[-1]).bit_length())
                + 7
            )
            // 8,
            "file_bytes": len(self.to_bytes()),
        }

    def validate(self) -> "HyperIndex":
        """Full structural check; test and debugging aid, O(M) and up."""
        m = self.incidence_count
        d = self.degree_bits
        if d.nbits != m + 1:
            raise InternalInvariantError("degree bitvector has the wrong length")
        if d.ones_count != self.node_count + 1:
            raise InternalInvariantError("degree bitvector one-count is off")
        if d.get(0) != 1 or d.get(m) != 1:
            raise InternalInvariantError("degree bitvector misses boundary ones")
        psi = self.psi.to_array()
        if len(psi) != m or not (np.sort(psi) == np.arange(m)).all():
            raise InternalInvariantError("stored permutation is not a permutation")
        anchors = int((psi <= np.arange(m)).sum())
        if anchors != self.edge_count:
            raise InternalInvariantError(
                f"expected {self.edge_count} edge anchors, found {anchors}"
            )
        return self
