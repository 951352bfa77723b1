"""Plain bitvector with constant-time rank and select.

Layout: bits live in 64-bit words, bit i at word i >> 6, position i & 63
(LSB first). rank uses a single directory of cumulative counts per 512-bit
block plus popcounts over at most eight words, for 0.125 bits of overhead
per bit (budget: 0.25). select samples the position of every 4096th one
and binary-searches the block directory between two samples, then scans
inside one block; its directory costs 64 bits per 4096 ones (budget: 0.2
bits per bit). Exceeding a budget only logs a warning.
"""
from __future__ import annotations

import logging

import numpy as np

logger = logging.getLogger(__name__)

_BLOCK_BITS = 512
_WORDS_PER_BLOCK = _BLOCK_BITS // 64
_SELECT_SAMPLE = 4096

_RANK_BUDGET = 0.25
_SELECT_BUDGET = 0.2


class RankSelectBitVector:
    """Immutable bitvector supporting inclusive rank and 1-based select."""

    __slots__ = ("nbits", "words", "ones_count", "_block_cum", "_select_samples")

    def __init__(self, words: np.ndarray, nbits: int):
        if nbits > len(words) * 64:
            raise ValueError("bit length exceeds word storage")
        self.nbits = nbits
        self.words = np.ascontiguousarray(words, dtype=np.uint64)
        self._build_directories()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_positions(cls, nbits: int, positions) -> "RankSelectBitVector":
        """Build from the sorted positions of the one bits."""
        pos = np.asarray(positions, dtype=np.int64)
        if len(pos) and (pos[0] < 0 or pos[-1] >= nbits):
            raise IndexError("one position out of range")
        words = np.zeros((nbits + 63) // 64, dtype=np.uint64)
        np.bitwise_or.at(
            words, pos >> 6, np.uint64(1) << (pos & 63).astype(np.uint64)
        )
        return cls(words, nbits)

    @classmethod
    def from_bits(cls, bits) -> "RankSelectBitVector":
        """Build from an iterable of 0/1 (a '0101' string works too)."""
        arr = np.array([int(b) for b in bits], dtype=np.uint8)
        return cls.from_positions(len(arr), np.flatnonzero(arr))

    def _build_directories(self):
        counts = np.bitwise_count(self.words).astype(np.int64)
        nblocks = (len(self.words) + _WORDS_PER_BLOCK - 1) // _WORDS_PER_BLOCK
        per_block = np.zeros(nblocks, dtype=np.int64)
        np.add.at(per_block, np.arange(len(self.words)) // _WORDS_PER_BLOCK, counts)
        self._block_cum = np.zeros(nblocks + 1, dtype=np.int64)
        np.cumsum(per_block, out=self._block_cum[1:])
        self.ones_count = int(self._block_cum[-1])

        ones = _one_positions(self.words, self.nbits)
        self._select_samples = ones[::_SELECT_SAMPLE].copy()
        self._check_budgets()

    def _check_budgets(self):
        if self.nbits == 0:
            return
        rank_bits = self._block_cum.nbytes * 8
        select_bits = self._select_samples.nbytes * 8
        if rank_bits > _RANK_BUDGET * self.nbits + 128:
            logger.warning(
                "rank directory exceeds budget: %.3f bits/bit", rank_bits / self.nbits
            )
        if select_bits > _SELECT_BUDGET * self.nbits + 128:
            logger.warning(
                "select directory exceeds budget: %.3f bits/bit",
                select_bits / self.nbits,
            )

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return self.nbits

    def get(self, i: int) -> int:
        if not 0 <= i < self.nbits:
            raise IndexError(f"bit position {i} out of range [0, {self.nbits})")
        return int(self.words[i >> 6]) >> (i & 63) & 1

    def rank(self, pos: int) -> int:
        """Number of ones in positions 0..pos inclusive."""
        if not 0 <= pos < self.nbits:
            raise IndexError(f"rank position {pos} out of range [0, {self.nbits})")
        block = pos >> 9
        count = int(self._block_cum[block])
        w = block * _WORDS_PER_BLOCK
        last = pos >> 6
        words = self.words
        while w < last:
            count += int(words[w]).bit_count()
            w += 1
        mask = (1 << ((pos & 63) + 1)) - 1
        return count + (int(words[last]) & mask).bit_count()

    def select(self, k: int) -> int:
        """Position of the k-th one, 1-based."""
        if not 1 <= k <= self.ones_count:
            raise IndexError(f"select rank {k} out of range [1, {self.ones_count}]")
        samples = self._select_samples
        j = (k - 1) >> 12
        lo = int(samples[j]) >> 9
        hi = (int(samples[j + 1]) >> 9) + 1 if j + 1 < len(samples) else len(self._block_cum) - 1
        # Last block whose cumulative count stays below k.
        block = int(np.searchsorted(self._block_cum[lo : hi + 1], k, side="left")) + lo - 1
        r = k - int(self._block_cum[block])
        w = block * _WORDS_PER_BLOCK
        words = self.words
        while True:
            word = int(words[w])
            c = word.bit_count()
            if r <= c:
                break
            r -= c
            w += 1
        while r > 1:
            word &= word - 1
            r -= 1
        return w * 64 + (word & -word).bit_length() - 1

    def to_bit_array(self) -> np.ndarray:
        """All bits as a uint8 array (testing and stats use only)."""
        bits = np.unpackbits(self.words.view(np.uint8), bitorder="little")
        return bits[: self.nbits]

    # -- sizes -------------------------------------------------------------

    def payload_bits(self) -> int:
        return len(self.words) * 64

    def directory_bits(self) -> dict:
        return {
            "rank": self._block_cum.nbytes * 8,
            "select": self._select_samples.nbytes * 8,
        }


def _one_positions(words: np.ndarray, nbits: int) -> np.ndarray:
    bits = np.unpackbits(words.view(np.uint8), bitorder="little")[:nbits]
    return np.flatnonzero(bits).astype(np.int64)
