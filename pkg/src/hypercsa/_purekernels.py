"""Pure-Python kernels.

These mirror the compiled kernels in hypercsa._kernels and are selected at
import time when the extension is unavailable (or HYPERCSA_PURE is set).
Hot loops favour numpy where the access pattern allows it; the inherently
sequential ones (cycle walk, gap coding) run as plain Python loops.

Gap stream token grammar, per sample block, all codes Elias delta:
    delta(1) delta(k)    run of k consecutive gaps equal to +1
    delta(2) delta(v+1)  escape: absolute value v (used for gaps <= 0)
    delta(g+2)           a single gap g >= 1
Runs of +1 shorter than MIN_RUN are written as plain gap codes.
"""
from __future__ import annotations

import numpy as np

from .intcodes import BitReader, BitWriter

MIN_RUN = 3


def suffix_array_ints(text: np.ndarray) -> np.ndarray:
    """Suffix array of an integer sequence, by prefix doubling.

    O(n log^2 n) via numpy lexsort rounds; fast enough in practice for the
    fallback lane. The compiled lane uses induced sorting instead.
    """
    n = len(text)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    rank = np.asarray(text, dtype=np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        changed = np.empty(n, dtype=np.int64)
        changed[0] = 0
        changed[1:] = (rank[order[1:]] != rank[order[:-1]]) | (
            second[order[1:]] != second[order[:-1]]
        )
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order] = np.cumsum(changed)
        rank = new_rank
        if rank[order[-1]] == n - 1:
            return order.astype(np.int64)
        k *= 2


def adjust_cycle_walk(psi: np.ndarray) -> None:
    """Rewire the single text cycle into one cycle per edge, in place.

    Walks the cycle from position psi[0]; whenever the next position
    decreases (a jump back to the start of a new edge in the underlying
    text), redirect the current position to the previous edge's first-node
    position, closing that edge's cycle.
    """
    p = psi.tolist()
    current = p[0]
    nxt = p[current]
    last_first = 0
    while current != 0:
        if nxt < current:
            p[current] = last_first
            last_first = nxt
        current = nxt
        nxt = p[nxt]
    psi[:] = p


def encode_gap_stream(values: np.ndarray, t: int):
    """Gap-encode a sequence with an absolute sample every t positions.

    Returns (stream bytes, sample values, per-block stream bit offsets,
    total stream bit length). Blocks are self-contained: runs never cross
    a sample position, so block b decodes from bit offset bitpos[b] alone.
    """
    n = len(values)
    nblocks = (n + t - 1) // t if n else 0
    samples = np.empty(nblocks, dtype=np.int64)
    bitpos = np.empty(nblocks, dtype=np.int64)
    w = BitWriter()
    vals = values.tolist()
    for b in range(nblocks):
        start = b * t
        end = min(start + t, n)
        samples[b] = vals[start]
        bitpos[b] = w.bit_length
        prev = vals[start]
        i = start + 1
        while i < end:
            v = vals[i]
            gap = v - prev
            if gap == 1:
                run = 1
                while i + run < end and vals[i + run] - vals[i + run - 1] == 1:
                    run += 1
                if run >= MIN_RUN:
                    w.write_delta(1)
                    w.write_delta(run)
                else:
                    for _ in range(run):
                        w.write_delta(3)
                prev = vals[i + run - 1]
                i += run
            elif gap > 1:
                w.write_delta(gap + 2)
                prev = v
                i += 1
            else:
                w.write_delta(2)
                w.write_delta(v + 1)
                prev = v
                i += 1
    nbits = w.bit_length
    return w.getvalue(), samples, bitpos, nbits


def decode_gap_block(stream: bytes, bitpos: int, first: int, count: int) -> np.ndarray:
    """Decode one sample block: `count` values starting with the sample.

    Runs a manually buffered reader (64-bit refills, leading zeros via
    bit_length) instead of intcodes.BitReader; this is the hot path of
    every permutation access in the fallback lane.
    """
    out = [0] * count
    out[0] = first
    prev = first
    # Bit buffer: `buf` holds `nbuf` not-yet-consumed bits, MSB aligned.
    # Python ints never overflow, so refills can run a little long.
    byte = bitpos >> 3
    buf = stream[byte] & (0xFF >> (bitpos & 7))
    nbuf = 8 - (bitpos & 7)
    byte += 1
    i = 1
    while i < count:
        while nbuf < 16:
            buf = (buf << 32) | int.from_bytes(stream[byte : byte + 4], "big")
            nbuf += 32
            byte += 4
        # Elias delta: zeros, gamma length, payload.
        z = nbuf - buf.bit_length()
        take = 2 * z + 1
        b = buf >> (nbuf - take)
        nbuf -= take
        buf &= (1 << nbuf) - 1
        if b > 1:
            while nbuf < b - 1:
                buf = (buf << 32) | int.from_bytes(stream[byte : byte + 4], "big")
                nbuf += 32
                byte += 4
            x = (buf >> (nbuf - b + 1)) | (1 << (b - 1))
            nbuf -= b - 1
            buf &= (1 << nbuf) - 1
        else:
            x = 1
        if x >= 3:
            prev += x - 2
            out[i] = prev
            i += 1
        elif x == 1:
            while nbuf < 16:
                buf = (buf << 32) | int.from_bytes(stream[byte : byte + 4], "big")
                nbuf += 32
                byte += 4
            z = nbuf - buf.bit_length()
            take = 2 * z + 1
            b = buf >> (nbuf - take)
            nbuf -= take
            buf &= (1 << nbuf) - 1
            if b > 1:
                while nbuf < b - 1:
                    buf = (buf << 32) | int.from_bytes(stream[byte : byte + 4], "big")
                    nbuf += 32
                    byte += 4
                run = (buf >> (nbuf - b + 1)) | (1 << (b - 1))
                nbuf -= b - 1
                buf &= (1 << nbuf) - 1
            else:
                run = 1
            for _ in range(run):
                prev += 1
                out[i] = prev
                i += 1
        else:
            while nbuf < 16:
                buf = (buf << 32) | int.from_bytes(stream[byte : byte + 4], "big")
                nbuf += 32
                byte += 4
            z = nbuf - buf.bit_length()
            take = 2 * z + 1
            b = buf >> (nbuf - take)
            nbuf -= take
            buf &= (1 << nbuf) - 1
            if b > 1:
                while nbuf < b - 1:
                    buf = (buf << 32) | int.from_bytes(stream[byte : byte + 4], "big")
                    nbuf += 32
                    byte += 4
                val = (buf >> (nbuf - b + 1)) | (1 << (b - 1))
                nbuf -= b - 1
                buf &= (1 << nbuf) - 1
            else:
                val = 1
            prev = val - 1
            out[i] = prev
            i += 1
    return np.array(out, dtype=np.int64)


def decode_gap_all(
    stream: bytes,
    samples: np.ndarray,
    bitpos: np.ndarray,
    t: int,
    n: int,
) -> np.ndarray:
    """Decode the full sequence in one sequential pass."""
    out = np.empty(n, dtype=np.int64)
    for b in range(len(samples)):
        start = b * t
        count = min(t, n - start)
        out[start : start + count] = decode_gap_block(
            stream, int(bitpos[b]), int(samples[b]), count
        )
    return out
