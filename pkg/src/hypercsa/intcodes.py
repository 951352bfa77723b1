"""Bit-level integer coding helpers.

All streams are MSB-first: bit 0 of a stream is the most significant bit
of byte 0. Elias delta codes are used for the gap stream of the encoded
successor permutation; fixed-width packing is used for sample tables and
the node-label table in the index file.
"""
from __future__ import annotations

import numpy as np


def delta_length(n: int) -> int:
    """Number of bits of the Elias delta code of n (n >= 1)."""
    b = n.bit_length()
    return 2 * (b.bit_length() - 1) + 1 + b - 1


class BitWriter:
    """Accumulates an MSB-first bit stream into bytes."""

    def __init__(self):
        self._acc = 0
        self._nbits = 0
        self._chunks = []

    def write(self, value: int, width: int) -> None:
        self._acc = (self._acc << width) | (value & ((1 << width) - 1))
        self._nbits += width
        # Flush whole bytes eagerly so the accumulator stays small.
        if self._nbits >= 4096:
            keep = self._nbits & 7
            out = self._acc >> keep
            self._chunks.append(out.to_bytes((self._nbits - keep) // 8, "big"))
            self._acc &= (1 << keep) - 1
            self._nbits = keep

    def write_delta(self, n: int) -> None:
        """Elias delta code of n >= 1."""
        b = n.bit_length()
        z = b.bit_length() - 1
        # gamma(b): z zeros, then b in z+1 bits; then the low b-1 bits of n.
        self.write(b, 2 * z + 1)
        if b > 1:
            self.write(n & ((1 << (b - 1)) - 1), b - 1)

    @property
    def bit_length(self) -> int:
        return sum(len(c) for c in self._chunks) * 8 + self._nbits

    def getvalue(self) -> bytes:
        nbits = self._nbits
        acc = self._acc
        if nbits & 7:
            pad = 8 - (nbits & 7)
            acc <<= pad
            nbits += pad
        tail = acc.to_bytes(nbits // 8, "big") if nbits else b""
        return b"".join(self._chunks) + tail


class BitReader:
    """Reads an MSB-first bit stream produced by BitWriter."""

    def __init__(self, data: bytes, bitpos: int = 0):
        self._data = data
        self.bitpos = bitpos

    def read(self, width: int) -> int:
        pos = self.bitpos
        end = pos + width
        lo_byte = pos >> 3
        hi_byte = (end + 7) >> 3
        window = int.from_bytes(self._data[lo_byte:hi_byte], "big")
        shift = hi_byte * 8 - end
        self.bitpos = end
        return (window >> shift) & ((1 << width) - 1)

    def read_delta(self) -> int:
        data = self._data
        pos = self.bitpos
        z = 0
        while not data[(pos + z) >> 3] >> (7 - ((pos + z) & 7)) & 1:
            z += 1
        self.bitpos = pos + z
        b = self.read(z + 1)
        if b == 1:
            return 1
        return (1 << (b - 1)) | self.read(b - 1)


def pack_uints(values, width: int) -> bytes:
    """Pack a sequence of non-negative ints into width-bit fields."""
    w = BitWriter()
    for v in values:
        w.write(int(v), width)
    return w.getvalue()


def unpack_uints(data: bytes, count: int, width: int) -> np.ndarray:
    r = BitReader(data)
    out = np.empty(count, dtype=np.int64)
    for i in range(count):
        out[i] = r.read(width)
    return out
