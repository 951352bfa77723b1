# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: suffix array by induced sorting, the cycle-rewiring
walk, and the gap-stream codec. Signatures mirror hypercsa._purekernels.

Gap streams must carry a few zero pad bytes past the last code; the
permutation wrapper guarantees that.
"""
import numpy as np

ctypedef long long i64
ctypedef unsigned long long u64
ctypedef unsigned char u8


# ---------------------------------------------------------------------------
# suffix array (SA-IS)
# ---------------------------------------------------------------------------

def suffix_array_ints(text):
    """Suffix array of an integer sequence via induced sorting, O(n)."""
    s = np.ascontiguousarray(text, dtype=np.int64)
    cdef Py_ssize_t n = s.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.int64)
    cdef i64 alphabet = int(s.max()) + 1
    full = _sais(s, alphabet)
    # Drop the virtual empty suffix in front.
    return np.ascontiguousarray(full[1:])


cdef inline bint _is_lms(u8[:] types, Py_ssize_t i):
    return i > 0 and types[i] == 1 and types[i - 1] == 0


cdef bint _lms_equal(i64[:] s, u8[:] types, Py_ssize_t a, Py_ssize_t b):
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t i = 0
    cdef bint a_lms, b_lms
    if a == n or b == n:
        return False
    while True:
        a_lms = _is_lms(types, a + i)
        b_lms = _is_lms(types, b + i)
        if i > 0 and a_lms and b_lms:
            return True
        if a_lms != b_lms:
            return False
        if s[a + i] != s[b + i]:
            return False
        i += 1


cdef void _induce_l(i64[:] s, i64[:] sa, i64[:] bucket_sizes, u8[:] types,
                    i64[:] scratch):
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t k = bucket_sizes.shape[0]
    cdef Py_ssize_t i, j
    cdef i64 offset = 1
    for i in range(k):
        scratch[i] = offset
        offset += bucket_sizes[i]
    for i in range(n + 1):
        j = sa[i] - 1
        if sa[i] <= 0:
            continue
        if types[j] == 0:
            sa[scratch[s[j]]] = j
            scratch[s[j]] += 1


cdef void _induce_s(i64[:] s, i64[:] sa, i64[:] bucket_sizes, u8[:] types,
                    i64[:] scratch):
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t k = bucket_sizes.shape[0]
    cdef Py_ssize_t i, j
    cdef i64 offset = 1
    for i in range(k):
        offset += bucket_sizes[i]
        scratch[i] = offset - 1
    for i in range(n, -1, -1):
        j = sa[i] - 1
        if sa[i] <= 0:
            continue
        if types[j] == 1:
            sa[scratch[s[j]]] = j
            scratch[s[j]] -= 1


cdef object _sais(object s_obj, i64 alphabet):
    cdef i64[:] s = s_obj
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t i, j

    types_obj = np.empty(n + 1, dtype=np.uint8)
    cdef u8[:] types = types_obj
    types[n] = 1
    if n > 0:
        types[n - 1] = 0
    for i in range(n - 2, -1, -1):
        if s[i] > s[i + 1]:
            types[i] = 0
        elif s[i] < s[i + 1]:
            types[i] = 1
        else:
            types[i] = types[i + 1]

    bucket_obj = np.bincount(s_obj, minlength=alphabet).astype(np.int64)
    cdef i64[:] bucket_sizes = bucket_obj
    scratch_obj = np.empty(alphabet, dtype=np.int64)
    cdef i64[:] scratch = scratch_obj

    sa_obj = np.full(n + 1, -1, dtype=np.int64)
    cdef i64[:] sa = sa_obj

    # Pass 1: drop LMS suffixes at their bucket tails, then induce.
    cdef i64 offset = 1
    for i in range(alphabet):
        offset += bucket_sizes[i]
        scratch[i] = offset - 1
    for i in range(1, n):
        if types[i] == 1 and types[i - 1] == 0:
            sa[scratch[s[i]]] = i
            scratch[s[i]] -= 1
    sa[0] = n
    _induce_l(s, sa, bucket_sizes, types, scratch)
    _induce_s(s, sa, bucket_sizes, types, scratch)

    # Name LMS substrings in suffix order.
    names_obj = np.full(n + 1, -1, dtype=np.int64)
    cdef i64[:] names = names_obj
    cdef i64 current = 0
    cdef Py_ssize_t last_lms = sa[0]
    cdef Py_ssize_t pos
    names[sa[0]] = 0
    cdef Py_ssize_t lms_count = 1
    for i in range(1, n + 1):
        pos = sa[i]
        if not _is_lms(types, pos):
            continue
        if not _lms_equal(s, types, last_lms, pos):
            current += 1
        last_lms = pos
        names[pos] = current
        lms_count += 1

    summary_obj = np.empty(lms_count, dtype=np.int64)
    offsets_obj = np.empty(lms_count, dtype=np.int64)
    cdef i64[:] summary = summary_obj
    cdef i64[:] offsets = offsets_obj
    j = 0
    for i in range(n + 1):
        if names[i] >= 0:
            summary[j] = names[i]
            offsets[j] = i
            j += 1

    cdef i64[:] summary_sa
    if current + 1 == lms_count:
        summary_sa_obj = np.empty(lms_count + 1, dtype=np.int64)
        summary_sa = summary_sa_obj
        summary_sa[0] = lms_count
        for i in range(lms_count):
            summary_sa[summary[i] + 1] = i
    else:
        summary_sa_obj = _sais(summary_obj, current + 1)
        summary_sa = summary_sa_obj

    # Pass 2: place LMS suffixes in their true order, then induce again.
    for i in range(n + 1):
        sa[i] = -1
    offset = 1
    for i in range(alphabet):
        offset += bucket_sizes[i]
        scratch[i] = offset - 1
    for i in range(lms_count, 1, -1):
        pos = offsets[summary_sa[i]]
        sa[scratch[s[pos]]] = pos
        scratch[s[pos]] -= 1
    sa[0] = n
    _induce_l(s, sa, bucket_sizes, types, scratch)
    _induce_s(s, sa, bucket_sizes, types, scratch)
    return sa_obj


# ---------------------------------------------------------------------------
# cycle rewiring (one cycle per edge)
# ---------------------------------------------------------------------------

def adjust_cycle_walk(psi_arr):
    # In-place contract: reject anything that would force a copy.
    cdef i64[::1] psi = psi_arr
    cdef i64 current = psi[0]
    cdef i64 nxt = psi[current]
    cdef i64 last_first = 0
    while current != 0:
        if nxt < current:
            psi[current] = last_first
            last_first = nxt
        current = nxt
        nxt = psi[nxt]


# ---------------------------------------------------------------------------
# gap-stream codec
# ---------------------------------------------------------------------------

cdef inline int _delta_len(u64 v):
    cdef int b = 0, z = 0
    cdef u64 tmp = v
    while tmp:
        b += 1
        tmp >>= 1
    tmp = <u64> b
    while tmp > 1:
        z += 1
        tmp >>= 1
    return 2 * z + 1 + b - 1


cdef struct _Writer:
    u8 *data
    Py_ssize_t byte
    u64 acc
    int nacc


cdef inline void _put(_Writer *w, u64 value, int width):
    # width <= 32 so the 64-bit accumulator cannot overflow.
    w.acc = (w.acc << width) | value
    w.nacc += width
    while w.nacc >= 8:
        w.nacc -= 8
        w.data[w.byte] = <u8> ((w.acc >> w.nacc) & 0xFF)
        w.byte += 1
    w.acc &= (<u64> 1 << w.nacc) - 1


cdef inline void _put_wide(_Writer *w, u64 value, int width):
    if width > 32:
        _put(w, value >> 32, width - 32)
        _put(w, value & 0xFFFFFFFF, 32)
    else:
        _put(w, value, width)


cdef inline void _put_delta(_Writer *w, u64 v):
    cdef int b = 0, z = 0
    cdef u64 tmp = v
    while tmp:
        b += 1
        tmp >>= 1
    tmp = <u64> b
    while tmp > 1:
        z += 1
        tmp >>= 1
    _put(w, <u64> b, 2 * z + 1)
    if b > 1:
        _put_wide(w, v & ((<u64> 1 << (b - 1)) - 1), b - 1)


def encode_gap_stream(values, i64 t):
    """Mirror of the pure encoder: (stream, samples, bitpos, nbits)."""
    v_obj = np.ascontiguousarray(values, dtype=np.int64)
    cdef i64[:] v = v_obj
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t nblocks = (n + t - 1) // t if n else 0
    samples_obj = np.empty(nblocks, dtype=np.int64)
    bitpos_obj = np.empty(nblocks, dtype=np.int64)
    cdef i64[:] samples = samples_obj
    cdef i64[:] bitpos = bitpos_obj

    cdef Py_ssize_t b, start, end, i, run
    cdef i64 prev, gap
    # Pass 1: exact bit sizes.
    cdef i64 nbits = 0
    for b in range(nblocks):
        start = b * t
        end = min(start + t, n)
        bitpos[b] = nbits
        samples[b] = v[start]
        prev = v[start]
        i = start + 1
        while i < end:
            gap = v[i] - prev
            if gap == 1:
                run = 1
                while i + run < end and v[i + run] - v[i + run - 1] == 1:
                    run += 1
                if run >= 3:
                    nbits += 1 + _delta_len(<u64> run)
                else:
                    nbits += 4 * run
                prev = v[i + run - 1]
                i += run
            elif gap > 1:
                nbits += _delta_len(<u64> (gap + 2))
                prev = v[i]
                i += 1
            else:
                nbits += 4 + _delta_len(<u64> (v[i] + 1))
                prev = v[i]
                i += 1

    stream_obj = np.zeros((nbits + 7) // 8, dtype=np.uint8)
    cdef u8[:] stream = stream_obj
    cdef _Writer w
    w.data = &stream[0] if nbits > 0 else NULL
    w.byte = 0
    w.acc = 0
    w.nacc = 0

    cdef Py_ssize_t r
    for b in range(nblocks):
        start = b * t
        end = min(start + t, n)
        prev = v[start]
        i = start + 1
        while i < end:
            gap = v[i] - prev
            if gap == 1:
                run = 1
                while i + run < end and v[i + run] - v[i + run - 1] == 1:
                    run += 1
                if run >= 3:
                    _put_delta(&w, 1)
                    _put_delta(&w, <u64> run)
                else:
                    for r in range(run):
                        _put_delta(&w, 3)
                prev = v[i + run - 1]
                i += run
            elif gap > 1:
                _put_delta(&w, <u64> (gap + 2))
                prev = v[i]
                i += 1
            else:
                _put_delta(&w, 2)
                _put_delta(&w, <u64> (v[i] + 1))
                prev = v[i]
                i += 1
    if w.nacc > 0:
        w.data[w.byte] = <u8> ((w.acc << (8 - w.nacc)) & 0xFF)
    return stream_obj.tobytes(), samples_obj, bitpos_obj, int(nbits)


cdef struct _Reader:
    const u8 *data
    Py_ssize_t byte
    u64 buf
    int nbuf


cdef inline void _fill(_Reader *r, int need):
    while r.nbuf < need:
        r.buf = (r.buf << 8) | r.data[r.byte]
        r.byte += 1
        r.nbuf += 8


cdef inline u64 _take(_Reader *r, int width):
    cdef u64 out
    r.nbuf -= width
    out = (r.buf >> r.nbuf) & ((<u64> 1 << width) - 1)
    r.buf &= (<u64> 1 << r.nbuf) - 1
    return out


cdef inline u64 _get_delta(_Reader *r):
    cdef int z = 0, b
    cdef u64 hi_part
    _fill(r, 16)
    while ((r.buf >> (r.nbuf - 1 - z)) & 1) == 0:
        z += 1
    _take(r, z)
    b = <int> _take(r, z + 1)
    if b == 1:
        return 1
    if b <= 33:
        _fill(r, b - 1)
        return (<u64> 1 << (b - 1)) | _take(r, b - 1)
    # Wide payload in two refills so the 64-bit buffer never overflows.
    _fill(r, b - 33)
    hi_part = _take(r, b - 33)
    _fill(r, 32)
    return (<u64> 1 << (b - 1)) | (hi_part << 32) | _take(r, 32)


cdef void _decode_block(_Reader *r, i64 first, Py_ssize_t count, i64 *out):
    cdef Py_ssize_t i = 1
    cdef i64 prev = first
    cdef u64 x, run, k
    out[0] = first
    while i < count:
        x = _get_delta(r)
        if x >= 3:
            prev += <i64> (x - 2)
            out[i] = prev
            i += 1
        elif x == 1:
            run = _get_delta(r)
            for k in range(run):
                prev += 1
                out[i] = prev
                i += 1
        else:
            prev = <i64> _get_delta(r) - 1
            out[i] = prev
            i += 1


def decode_gap_block(const u8[:] stream, i64 bitpos, i64 first, Py_ssize_t count):
    out_obj = np.empty(count, dtype=np.int64)
    cdef i64[:] out = out_obj
    cdef _Reader r
    r.data = &stream[0]
    r.byte = bitpos >> 3
    r.buf = stream[r.byte] & (0xFF >> (bitpos & 7))
    r.nbuf = 8 - (bitpos & 7)
    r.byte += 1
    _decode_block(&r, first, count, &out[0])
    return out_obj


def decode_gap_all(const u8[:] stream, samples, bitpos, i64 t, Py_ssize_t n):
    out_obj = np.empty(n, dtype=np.int64)
    cdef i64[:] out = out_obj
    cdef i64[:] sv = np.ascontiguousarray(samples, dtype=np.int64)
    cdef i64[:] bp = np.ascontiguousarray(bitpos, dtype=np.int64)
    cdef Py_ssize_t nblocks = sv.shape[0]
    cdef Py_ssize_t b, start, count
    cdef _Reader r
    for b in range(nblocks):
        start = b * t
        count = min(t, n - start)
        r.data = &stream[0]
        r.byte = bp[b] >> 3
        r.buf = stream[r.byte] & (0xFF >> (bp[b] & 7))
        r.nbuf = 8 - (bp[b] & 7)
        r.byte += 1
        _decode_block(&r, sv[b], count, &out[start])
    return out_obj
