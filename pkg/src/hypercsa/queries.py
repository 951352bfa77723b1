"""Query evaluation over a built index.

Everything here is read-only: any number of threads may query one index
concurrently. Node arguments and results use external labels; positions
are suffix-order positions into the index structures.

Key facts the algorithms lean on:
  * the interval S(v) of positions whose suffix starts with node v comes
    from two select calls on the degree-boundary bitvector;
  * the successor permutation is strictly increasing inside each S(v)
    interval, so subranges can be binary searched;
  * every edge is one cycle of the permutation, visiting its nodes in
    ascending order, and has exactly one position with psi[i] <= i (its
    highest node; equality exactly for single-node edges).
"""
from __future__ import annotations

from bisect import bisect_right

import numpy as np

from .errors import QueryUsageError, UnknownLabelError
from .model import Hypergraph

# -- position helpers -------------------------------------------------------


def node_interval(idx, v: int):
    """Half-open position interval [lo, hi) of dense node v."""
    if not 0 <= v < idx.node_count:
        raise IndexError(f"node id {v} out of range [0, {idx.node_count})")
    d = idx.degree_bits
    return d.select(v + 1), d.select(v + 2)


def node_at(idx, pos: int) -> int:
    """Dense node id whose interval holds the given position."""
    if not 0 <= pos < idx.incidence_count:
        raise IndexError(f"position {pos} out of range [0, {idx.incidence_count})")
    return idx.degree_bits.rank(pos) - 1


# -- queries -----------------------------------------------------------------


def degree(idx, label: int) -> int:
    """Number of edges incident to the node with this external label."""
    v = idx.node_map.to_dense(label)
    lo, hi = node_interval(idx, v)
    return hi - lo


def extract_edge_at(idx, pos: int) -> tuple:
    """Full node set of the edge whose cycle passes through pos.

    Returns external labels, ascending.
    """
    if not 0 <= pos < idx.incidence_count:
        raise IndexError(f"position {pos} out of range [0, {idx.incidence_count})")
    psi = idx.psi
    nodes = [node_at(idx, pos)]
    j = psi.access(pos)
    while j != pos:
        nodes.append(node_at(idx, j))
        j = psi.access(j)
    to_external = idx.node_map.to_external
    return tuple(to_external(v) for v in sorted(nodes))


def contains(idx, labels, prune: bool = True) -> list:
    """All edges (with multiplicity) containing every query node.

    Scans the candidate positions of the query node with the smallest
    interval; each candidate's cycle is walked and discarded early where
    the sorted cycle order proves the remaining query nodes cannot appear.
    `prune=False` walks every candidate fully instead; results are
    identical, it only does more work (kept for differential testing).

    Returns edges as ascending external-label tuples, ordered by the
    position of each edge's highest node (deterministic).
    """
    query_set = set(labels)
    if not query_set:
        raise QueryUsageError("contains query needs at least one node")
    query = sorted(idx.node_map.to_dense(lab) for lab in query_set)
    intervals = {v: node_interval(idx, v) for v in query}
    best = min(query, key=lambda v: (intervals[v][1] - intervals[v][0], v))
    lo, hi = intervals[best]
    if len(query) == 1:
        hits = [_collect_cycle(idx, start) for start in range(lo, hi)]
    else:
        pos = query.index(best)
        # Targets in the cyclic order they must appear after `best`.
        targets = query[pos + 1 :] + query[:pos]
        qmin = query[0]
        hits = []
        for start in range(lo, hi):
            hit = _walk_candidate(idx, start, targets, qmin, prune)
            if hit is not None:
                hits.append(hit)
    hits.sort()
    to_external = idx.node_map.to_external
    return [tuple(to_external(v) for v in sorted(nodes)) for _, nodes in hits]


def _collect_cycle(idx, start):
    """(anchor, node list) of the edge through `start`, no filtering."""
    psi = idx.psi
    positions = [start]
    anchor = -1
    prev = start
    j = psi.access(start)
    while j != start:
        if j < prev:
            anchor = prev
        positions.append(j)
        prev = j
        j = psi.access(j)
    if anchor < 0:
        # The wrap was the closing transition (or the edge is a loop).
        anchor = prev
    nodes = (
        np.searchsorted(idx.node_boundaries, positions, side="right") - 1
    ).tolist()
    return anchor, nodes


def _walk_candidate(idx, start, targets, qmin, prune):
    """Walk one candidate cycle; return (anchor, nodes) or None.

    Abort rules (active only while query nodes are still missing):
      1. the cycle closes first;
      2. before the wrap, the current node passed the awaited one, unless
         the awaited one is the query minimum, which can only appear after
         the wrap;
      3. at the wrap, the awaited node is not the query minimum;
      4. after the wrap the same passing rule applies with no exception.
    """
    psi = idx.psi
    boundaries = idx.node_boundaries_list
    tptr = 0
    ntargets = len(targets)
    wrapped = False
    anchor = start
    nodes = [bisect_right(boundaries, start) - 1]
    j = start
    while True:
        nxt = psi.access(j)
        if nxt <= j:
            anchor = j
            if not wrapped:
                wrapped = True
                if prune and tptr < ntargets and targets[tptr] != qmin:
                    return None
        if nxt == start:
            break
        j = nxt
        v = bisect_right(boundaries, j) - 1
        nodes.append(v)
        if tptr < ntargets:
            awaited = targets[tptr]
            if v == awaited:
                tptr += 1
            elif v > awaited and prune and (wrapped or awaited != qmin):
                return None
    if prune:
        matched = tptr == ntargets
    else:
        matched = set(targets) <= set(nodes)
    return (anchor, nodes) if matched else None


def exists(idx, labels) -> int:
    """Multiplicity of the exact edge given by the query labels.

    Chained binary-search narrowing, one interval per query node: working
    from the highest node down, keep the subrange of each node's interval
    whose successor lands in the surviving range of the next node (legal
    because the permutation increases strictly inside a node interval, and
    those subranges are exactly the positions whose edges continue with
    the remaining query nodes in order). The cycle is then closed back
    into the first node's interval: candidates whose edge ends at the last
    query node form a prefix of the surviving range, and among those the
    cycles landing back exactly on their own start, meaning the edge holds
    no extra nodes below the first query node, form a suffix. Both close
    boundaries are binary searched as well.
    """
    labels = tuple(labels)
    if not labels:
        raise QueryUsageError("exists query needs at least one node")
    if len(set(labels)) != len(labels):
        raise QueryUsageError("exists query repeats a label")
    try:
        query = sorted(idx.node_map.to_dense(lab) for lab in labels)
    except UnknownLabelError:
        return 0
    psi = idx.psi
    n = len(query) - 1

    lo, hi = node_interval(idx, query[n])
    for k in range(n - 1, -1, -1):
        slo, shi = node_interval(idx, query[k])
        new_lo = _psi_first(idx, slo, shi, lo)
        new_hi = _psi_first(idx, new_lo, shi, hi)
        lo, hi = new_lo, new_hi
        if lo >= hi:
            return 0

    def walk(j, steps):
        for _ in range(steps):
            j = psi.access(j)
        return j

    # Edges ending at the last query node form a prefix of [lo, hi).
    c = _first(lo, hi, lambda j: psi.access(walk(j, n)) > walk(j, n))
    # Within it, cycles closing exactly on their start form a suffix.
    d = _first(lo, c, lambda j: walk(j, n + 1) >= j)
    return c - d


def _first(lo, hi, pred):
    """First position in [lo, hi) where the monotone predicate holds."""
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _psi_first(idx, lo, hi, target):
    """First j in [lo, hi) with psi[j] >= target.

    Requires [lo, hi) to lie inside one node interval, where psi is
    strictly increasing. The absolute samples are consulted first, which
    pins the answer down to one sample block before any gap decoding.
    """
    if lo >= hi:
        return lo
    psi = idx.psi
    t = psi.t
    k0 = -(-lo // t)
    k1 = (hi - 1) // t
    if k0 <= k1:
        sv = psi.sample_values
        a, b = k0, k1 + 1
        while a < b:
            mid = (a + b) // 2
            if sv[mid] >= target:
                b = mid
            else:
                a = mid + 1
        if a == k0:
            lo, hi = lo, min(k0 * t + 1, hi)
        elif a > k1:
            lo, hi = k1 * t + 1, hi
        else:
            lo, hi = (a - 1) * t + 1, a * t + 1
    access = psi.access
    while lo < hi:
        mid = (lo + hi) // 2
        if access(mid) >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def decompress(idx) -> Hypergraph:
    """Reconstruct the exact canonical edge multiset.

    One sequential pass finds the per-edge anchor positions (psi[i] <= i);
    each anchor's value is its edge's first-node position, and walking a
    cycle from there yields the nodes in ascending order. Starts are
    emitted in descending position order, which is exactly the canonical
    edge order.
    """
    psi_all = idx.psi.to_array()
    m = idx.incidence_count
    anchors = np.flatnonzero(psi_all <= np.arange(m))
    starts = np.sort(psi_all[anchors])[::-1]
    node_of = np.searchsorted(idx.node_boundaries, np.arange(m), side="right") - 1
    psi_list = psi_all.tolist()
    node_list = node_of.tolist()
    edges = []
    for start in starts.tolist():
        edge = [node_list[start]]
        j = psi_list[start]
        while j != start:
            edge.append(node_list[j])
            j = psi_list[j]
        edges.append(tuple(edge))
    return Hypergraph(idx.node_count, tuple(edges))
