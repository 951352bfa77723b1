"""Index file format (version 1).

Little-endian, fixed-width header, then variable sections, then an 8-byte
blake2b checksum of everything before it:

    0   4  magic b"HCSA"
    4   2  format version (u16)
    6   2  flags (bit 0: node map is the identity)
    8   8  node_count (u64)
    16  8  edge_count (u64)
    24  8  incidence_count (u64)
    32  8  sample_period (u64)
    40  8  psi stream bit length (u64)
    48  8  node map section byte length (u64)
    56  8  degree bitvector section byte length (u64)
    64  8  psi sample section byte length (u64)
    72  8  psi stream section byte length (u64)
    80  .  sections in that order
    -8  8  checksum

The node map section is one width byte plus the external labels packed at
that width (absent for identity maps). The bitvector section is its raw
64-bit words; rank and select directories are rebuilt on load, so loading
a file and serializing the result is byte-identical. The psi sample
section is two width bytes plus the packed sample values and the packed
per-block bit offsets.
"""
from __future__ import annotations

import hashlib
import struct

import numpy as np

from .bitvec import RankSelectBitVector
from .errors import (
    BadMagicError,
    ChecksumMismatchError,
    TruncatedIndexError,
    UnsupportedVersionError,
)
from .intcodes import pack_uints, unpack_uints
from .model import NodeMap
from .permutation import GapEncodedPermutation

MAGIC = b"HCSA"
VERSION = 1
_HEADER = struct.Struct("<4sHHQQQQQQQQQ")
_FLAG_IDENTITY_MAP = 1


def _checksum(payload: bytes) -> bytes:
    return hashlib.blake2b(payload, digest_size=8).digest()


def _width_for(max_value: int) -> int:
    return max(1, int(max_value).bit_length())


def to_bytes(index) -> bytes:
    flags = 0
    if index.node_map.is_identity:
        flags |= _FLAG_IDENTITY_MAP
        map_section = b""
    else:
        labels = index.node_map.dense_to_external
        width = _width_for(labels[-1])
        map_section = bytes([width]) + pack_uints(labels, width)

    d_section = index.degree_bits.words.tobytes()

    psi = index.psi
    wv = _width_for(max(index.incidence_count - 1, 1))
    wb = _width_for(max(psi.stream_bits, 1))
    sample_section = (
        bytes([wv, wb])
        + pack_uints(psi.sample_values, wv)
        + pack_uints(psi.sample_bitpos, wb)
    )

    header = _HEADER.pack(
        MAGIC,
        VERSION,
        flags,
        index.node_count,
        index.edge_count,
        index.incidence_count,
        index.sample_period,
        psi.stream_bits,
        len(map_section),
        len(d_section),
        len(sample_section),
        len(psi.stream),
    )
    payload = header + map_section + d_section + sample_section + psi.stream
    return payload + _checksum(payload)


def from_bytes(data: bytes):
    from .index import HyperIndex

    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagicError("not an index file (bad magic)")
    if len(data) < _HEADER.size + 8:
        raise TruncatedIndexError("file ends inside the header")
    (
        _,
        version,
        flags,
        node_count,
        edge_count,
        incidence_count,
        sample_period,
        stream_bits,
        map_len,
        d_len,
        sample_len,
        stream_len,
    ) = _HEADER.unpack_from(data, 0)
    if version != VERSION:
        raise UnsupportedVersionError(f"format version {version} is not supported")
    total = _HEADER.size + map_len + d_len + sample_len + stream_len + 8
    if len(data) < total:
        raise TruncatedIndexError(
            f"file holds {len(data)} bytes, header declares {total}"
        )
    if len(data) > total:
        raise TruncatedIndexError(f"{len(data) - total} trailing bytes after checksum")
    payload, checksum = data[:-8], data[-8:]
    if _checksum(payload) != checksum:
        raise ChecksumMismatchError("payload checksum mismatch")

    pos = _HEADER.size
    map_section = data[pos : pos + map_len]
    pos += map_len
    d_section = data[pos : pos + d_len]
    pos += d_len
    sample_section = data[pos : pos + sample_len]
    pos += sample_len
    stream = data[pos : pos + stream_len]

    if flags & _FLAG_IDENTITY_MAP:
        node_map = NodeMap.identity(node_count)
    else:
        if not map_section:
            raise TruncatedIndexError("node map section is empty")
        width = map_section[0]
        labels = unpack_uints(map_section[1:], node_count, width)
        node_map = NodeMap(
            tuple(int(v) for v in labels),
            {int(v): i for i, v in enumerate(labels)},
        )

    words = np.frombuffer(d_section, dtype="<u8").astype(np.uint64)
    degree_bits = RankSelectBitVector(words, incidence_count + 1)

    if len(sample_section) < 2:
        raise TruncatedIndexError("psi sample section is too short")
    wv, wb = sample_section[0], sample_section[1]
    nblocks = (
        (incidence_count + sample_period - 1) // sample_period if incidence_count else 0
    )
    values_bytes = (nblocks * wv + 7) // 8
    sample_values = unpack_uints(sample_section[2 : 2 + values_bytes], nblocks, wv)
    sample_bitpos = unpack_uints(sample_section[2 + values_bytes :], nblocks, wb)
    psi = GapEncodedPermutation(
        incidence_count, sample_period, stream, sample_values, sample_bitpos, stream_bits
    )

    return HyperIndex(
        degree_bits=degree_bits,
        psi=psi,
        node_map=node_map,
        node_count=node_count,
        edge_count=edge_count,
        incidence_count=incidence_count,
        sample_period=sample_period,
    )
