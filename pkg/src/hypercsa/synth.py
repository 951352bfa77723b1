"""Synthetic hypergraph generators for tests and benchmarks.

Two flavours: small adversarial graphs (duplicate edges, single-node
loops, duplicate loops, gappy label spaces) for correctness testing, and
large skewed graphs with a Zipf-like degree profile, the shape real
co-occurrence hypergraphs show, for size and latency measurements.
"""
from __future__ import annotations

import random

import numpy as np


def random_edges(
    rng: random.Random,
    max_nodes: int = 64,
    max_edges: int = 128,
    max_rank: int = 12,
    duplicate_prob: float = 0.1,
    loop_prob: float = 0.15,
    sparse_labels: bool = False,
) -> list:
    """A small random edge list (external labels) with nasty cases mixed in."""
    n_labels = rng.randint(1, max_nodes)
    if sparse_labels:
        labels = rng.sample(range(max_nodes * 10), n_labels)
    else:
        labels = list(range(n_labels))
    n_edges = rng.randint(1, max_edges)
    edges = []
    for _ in range(n_edges):
        if edges and rng.random() < duplicate_prob:
            edges.append(edges[rng.randrange(len(edges))])
        elif rng.random() < loop_prob:
            edges.append((rng.choice(labels),))
        else:
            rank = rng.randint(1, min(max_rank, n_labels))
            edges.append(tuple(rng.sample(labels, rank)))
    return edges


def zipf_edges(
    target_incidences: int,
    n_labels: int,
    skew: float = 1.1,
    max_rank: int = 12,
    seed: int = 0,
) -> list:
    """A large edge list with Zipf(skew) node popularity.

    Every label in 0..n_labels-1 occurs at least once and the total
    incidence count lands exactly on target_incidences (the tail edge is
    trimmed to fit). Requires target_incidences >= n_labels + max_rank.
    """
    if target_incidences < n_labels + max_rank:
        raise ValueError("target_incidences too small to cover all labels")
    rng = np.random.default_rng(seed)
    weights = 1.0 / np.arange(1, n_labels + 1, dtype=np.float64) ** skew
    cum = np.cumsum(weights)
    cum /= cum[-1]

    edges = []
    total = 0
    # Coverage pass: make sure rare labels occur, batched into edges.
    unseen = rng.permutation(n_labels)
    for lo in range(0, n_labels, max_rank):
        edge = np.unique(unseen[lo : lo + max_rank])
        edges.append(tuple(int(v) for v in edge))
        total += len(edge)

    budget = target_incidences - total
    while budget > 0:
        rank = int(rng.integers(1, max_rank + 1))
        rank = min(rank, budget)
        draws = np.searchsorted(cum, rng.random(rank))
        edge = np.unique(draws)
        edges.append(tuple(int(v) for v in edge))
        budget -= len(edge)
    return edges


def batch_queries(
    rng: random.Random,
    edges: list,
    count: int,
    modes=("degree", "contains", "exists"),
) -> list:
    """Random (mode, labels) pairs over a graph, mixing hits and misses."""
    labels = sorted({lab for e in edges for lab in e})
    absent = max(labels) + 1
    queries = []
    for _ in range(count):
        mode = rng.choice(modes)
        if mode == "degree":
            queries.append(("degree", (rng.choice(labels),)))
        elif mode == "contains":
            if rng.random() < 0.25:
                k = rng.randint(1, 3)
                queries.append(("contains", tuple(rng.sample(labels, min(k, len(labels))))))
            else:
                base = rng.choice(edges)
                k = rng.randint(1, len(base))
                queries.append(("contains", tuple(rng.sample(list(base), k))))
        else:
            roll = rng.random()
            if roll < 0.4:
                queries.append(("exists", rng.choice(edges)))
            elif roll < 0.7:
                k = rng.randint(1, min(4, len(labels)))
                queries.append(("exists", tuple(rng.sample(labels, k))))
            else:
                base = list(rng.choice(edges))
                if rng.random() < 0.5 and len(base) > 1:
                    base.pop(rng.randrange(len(base)))
                else:
                    base.append(absent + rng.randrange(3))
                queries.append(("exists", tuple(dict.fromkeys(base))))
    return queries
