"""Gap-encoded permutation with sampled random access.

Stores a permutation of {0..n-1} as Elias-delta gap codes with a run-length
shortcut for runs of +1 gaps, plus an absolute sample every `t` positions.
Access decodes at most t-1 gap codes after one sample lookup. Blocks that
were decoded recently are kept in a small bounded cache, which batch query
workloads hit heavily; the cache never changes results, only cost.

Gaps inside a node interval of the index are always positive (the adjusted
permutation increases strictly there); the rare non-positive gap at an
interval boundary is stored via an escape code carrying the absolute value.
"""
from __future__ import annotations

import threading
from collections import OrderedDict

import numpy as np

from . import kernels
from .errors import ValidationError

DEFAULT_SAMPLE_PERIOD = 128
# Bounded decoded-block cache; at the default sample period this caps at
# roughly 8 MB however large the index is.
DEFAULT_CACHE_BLOCKS = 8192
_STREAM_PAD = 32


class GapEncodedPermutation:
    __slots__ = (
        "n",
        "t",
        "stream",
        "sample_values",
        "sample_bitpos",
        "stream_bits",
        "_padded",
        "_cache",
        "_cache_max",
        "_lock",
    )

    def __init__(self, n, t, stream, sample_values, sample_bitpos, stream_bits,
                 cache_blocks=DEFAULT_CACHE_BLOCKS):
        if t < 1:
            raise ValidationError(f"sample period must be >= 1, got {t}")
        self.n = n
        self.t = t
        self.stream = stream
        # Decoders read whole words; guarantee readable bytes past the end.
        self._padded = stream + b"\x00" * _STREAM_PAD
        self.sample_values = np.asarray(sample_values, dtype=np.int64)
        self.sample_bitpos = np.asarray(sample_bitpos, dtype=np.int64)
        self.stream_bits = stream_bits
        self._cache = OrderedDict()
        self._cache_max = cache_blocks
        self._lock = threading.Lock()

    @classmethod
    def encode(cls, values, t: int = DEFAULT_SAMPLE_PERIOD,
               cache_blocks: int = DEFAULT_CACHE_BLOCKS) -> "GapEncodedPermutation":
        values = np.asarray(values, dtype=np.int64)
        n = len(values)
        if t < 1:
            raise ValidationError(f"sample period must be >= 1, got {t}")
        counts = np.bincount(values, minlength=n) if n else np.empty(0)
        if n and (len(counts) != n or not (counts == 1).all()):
            raise ValidationError("input is not a permutation of 0..n-1")
        stream, samples, bitpos, nbits = kernels.encode_gap_stream(values, t)
        return cls(n, t, stream, samples, bitpos, nbits, cache_blocks)

    def __len__(self) -> int:
        return self.n

    def access(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"position {i} out of range [0, {self.n})")
        b, r = divmod(i, self.t)
        if r == 0:
            return int(self.sample_values[b])
        return int(self._block(b)[r])

    __getitem__ = access

    def _block(self, b: int) -> np.ndarray:
        with self._lock:
            cached = self._cache.get(b)
            if cached is not None:
                self._cache.move_to_end(b)
                return cached
        count = min(self.t, self.n - b * self.t)
        block = kernels.decode_gap_block(
            self._padded, int(self.sample_bitpos[b]), int(self.sample_values[b]), count
        )
        with self._lock:
            self._cache[b] = block
            if len(self._cache) > self._cache_max:
                self._cache.popitem(last=False)
        return block

    def cache_clear(self) -> None:
        with self._lock:
            self._cache.clear()

    def to_array(self) -> np.ndarray:
        """Decode the whole permutation (one sequential pass)."""
        return kernels.decode_gap_all(
            self._padded, self.sample_values, self.sample_bitpos, self.t, self.n
        )

    def size_bits(self) -> dict:
        return {
            "stream": self.stream_bits,
            "samples": int(self.sample_values.nbytes + self.sample_bitpos.nbytes) * 8,
        }
