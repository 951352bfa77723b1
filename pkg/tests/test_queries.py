"""Query engine: worked examples, oracle equivalence, query laws."""
import random

import pytest

from hypercsa import QueryUsageError, UnknownLabelError, edge_multiset
from hypercsa.naive import NaiveEngine
from hypercsa.synth import batch_queries, random_edges

from conftest import graph_from_edges, index_from_edges


class TestWorkedExamples:
    def test_degree(self, fig_index):
        assert fig_index.degree(2) == 5
        assert fig_index.degree(4) == 1

    def test_degree_unknown_label(self, fig_index):
        with pytest.raises(UnknownLabelError):
            fig_index.degree(9)

    def test_node_interval(self, fig_index):
        assert fig_index.node_interval(2) == (5, 10)
        assert fig_index.node_interval(0) == (0, 2)
        with pytest.raises(IndexError):
            fig_index.node_interval(5)

    def test_single_loop_graph(self):
        idx = index_from_edges([(0,)])
        assert idx.degree(0) == 1
        assert idx.node_interval(0) == (0, 1)
        assert idx.extract_edge_at(0) == (0,)
        assert idx.exists((0,)) == 1

    def test_extract_edge_at(self, fig_index):
        # every position in node 2's interval belongs to an edge holding 2,
        # and those five edges cover the whole graph
        lo, hi = fig_index.node_interval(2)
        edges = [fig_index.extract_edge_at(i) for i in range(lo, hi)]
        assert all(2 in e for e in edges)
        assert edge_multiset(edges) == edge_multiset(
            [(2,), (2,), (1, 2, 3), (0, 1, 2, 4), (0, 1, 2, 3)]
        )

    def test_extract_same_cycle_same_edge(self, fig_index):
        # every position of one cycle prints the same edge
        psi = fig_index.psi.to_array().tolist()
        seen = set()
        for start in range(fig_index.incidence_count):
            if start in seen:
                continue
            cycle = [start]
            j = psi[start]
            while j != start:
                cycle.append(j)
                j = psi[j]
            seen.update(cycle)
            edges = {fig_index.extract_edge_at(p) for p in cycle}
            assert len(edges) == 1
            assert len(next(iter(edges))) == len(cycle)

    def test_contains(self, fig_index):
        assert edge_multiset(fig_index.contains({2})) == edge_multiset(
            [(2,), (2,), (1, 2, 3), (0, 1, 2, 4), (0, 1, 2, 3)]
        )
        assert fig_index.contains({1, 3}) == [(0, 1, 2, 3), (1, 2, 3)]
        assert fig_index.contains({4}) == [(0, 1, 2, 4)]
        assert fig_index.contains({0, 3, 4}) == []

    def test_contains_errors(self, fig_index):
        with pytest.raises(QueryUsageError):
            fig_index.contains(())
        with pytest.raises(UnknownLabelError):
            fig_index.contains({2, 99})

    def test_contains_dedupes_query(self, fig_index):
        assert fig_index.contains((4, 4)) == [(0, 1, 2, 4)]

    def test_exists(self, fig_index):
        assert fig_index.exists((2,)) == 2
        assert fig_index.exists((1, 2, 3)) == 1
        assert fig_index.exists((0, 3)) == 0

    def test_exists_unknown_label_counts_zero(self, fig_index):
        assert fig_index.exists((2, 99)) == 0

    def test_exists_errors(self, fig_index):
        with pytest.raises(QueryUsageError):
            fig_index.exists(())
        with pytest.raises(QueryUsageError):
            fig_index.exists((2, 2))

    def test_exists_unsorted_input(self, fig_index):
        assert fig_index.exists((3, 1, 2)) == 1

    def test_decompress(self, fig_index):
        dec = fig_index.decompress()
        assert dec.edges == ((2,), (2,), (1, 2, 3), (0, 1, 2, 4), (0, 1, 2, 3))


class TestTrickyShapes:
    def test_superset_not_counted_by_exists(self):
        # {1,2,3} wraps max->min over (1, 3); the close step must reject it.
        idx = index_from_edges([(0, 1, 3), (1, 2, 3), (1, 3, 4)])
        assert idx.exists((1, 3)) == 0

    def test_equal_edges_counted(self):
        idx = index_from_edges([(1, 2, 5)] * 4 + [(1, 2)] + [(2, 5)])
        assert idx.exists((1, 2, 5)) == 4
        assert idx.exists((1, 2)) == 1
        assert idx.exists((2, 5)) == 1
        assert idx.exists((1, 5)) == 0

    def test_duplicate_loops_same_node(self):
        idx = index_from_edges([(3,), (3,), (3, 4)])
        assert idx.exists((3,)) == 2
        assert idx.degree(3) == 3
        assert edge_multiset(idx.contains({3})) == edge_multiset(
            [(3,), (3,), (3, 4)]
        )

    def test_prefix_pair_queries(self):
        idx = index_from_edges([(0,), (0, 1), (0, 1, 2)])
        assert idx.exists((0,)) == 1
        assert idx.exists((0, 1)) == 1
        assert idx.exists((0, 1, 2)) == 1
        assert edge_multiset(idx.contains({0})) == edge_multiset(
            [(0,), (0, 1), (0, 1, 2)]
        )

    def test_contains_result_order_deterministic(self, fig_index):
        first = fig_index.contains({2})
        for _ in range(3):
            assert fig_index.contains({2}) == first

    def test_contains_wrap_around_anchor(self):
        # anchor node (5) is queried together with a smaller one; the walk
        # must pass the wrap and still find the lower node
        idx = index_from_edges([(1, 2, 5), (3, 5), (0, 5)])
        assert idx.contains({2, 5}) == [(1, 2, 5)]
        assert idx.contains({0, 5}) == [(0, 5)]


class TestOracleEquivalence:
    def run_graph(self, rng, sparse):
        edges = random_edges(rng, max_nodes=32, max_edges=48, max_rank=10,
                             sparse_labels=sparse)
        idx = index_from_edges(edges)
        oracle = NaiveEngine(edges)
        for mode, labels in batch_queries(rng, edges, 40):
            if mode == "degree":
                assert idx.degree(labels[0]) == oracle.degree(labels[0])
            elif mode == "contains":
                got = idx.contains(labels)
                expect = oracle.contains(labels)
                assert edge_multiset(got) == edge_multiset(expect)
                assert edge_multiset(idx.contains(labels, prune=False)) == edge_multiset(got)
            else:
                assert idx.exists(labels) == oracle.exists(labels)

    def test_many_random_graphs(self, rng):
        for trial in range(60):
            self.run_graph(rng, sparse=trial % 3 == 0)


class TestQueryLaws:
    def test_contains_single_node_count_is_degree(self, rng):
        for _ in range(15):
            edges = random_edges(rng, max_nodes=20, max_edges=30, max_rank=6)
            idx = index_from_edges(edges)
            labels = sorted({v for e in edges for v in e})
            for lab in labels:
                assert len(idx.contains({lab})) == idx.degree(lab)

    def test_contains_monotone_in_query(self, rng):
        for _ in range(15):
            edges = random_edges(rng, max_nodes=16, max_edges=24, max_rank=6)
            idx = index_from_edges(edges)
            base = random.Random(rng.random()).choice(edges)
            if len(base) < 2:
                continue
            small = {base[0]}
            big = set(base)
            res_small = edge_multiset(idx.contains(small))
            res_big = edge_multiset(idx.contains(big))
            remaining = list(res_small)
            for e in res_big:
                remaining.remove(e)  # raises if not a sub-multiset

    def test_every_result_superset_of_query(self, rng):
        for _ in range(15):
            edges = random_edges(rng, max_nodes=16, max_edges=24, max_rank=6)
            idx = index_from_edges(edges)
            base = random.Random(rng.random()).choice(edges)
            k = rng.randint(1, len(base))
            query = set(rng.sample(list(base), k))
            for e in idx.contains(query):
                assert query <= set(e)

    def test_exists_matches_decompressed_multiplicity(self, rng):
        for _ in range(15):
            edges = random_edges(rng, max_nodes=16, max_edges=24, max_rank=6)
            idx = index_from_edges(edges)
            dec = idx.decompress()
            ext = [
                tuple(idx.node_map.to_external(v) for v in e) for e in dec.edges
            ]
            counts = {}
            for e in ext:
                counts[e] = counts.get(e, 0) + 1
            for e, c in counts.items():
                assert idx.exists(e) == c
            # a never-present edge
            assert idx.exists((max(max(e) for e in ext) + 1,)) == 0


class TestConcurrency:
    def test_parallel_readers_match_serial(self, fig_index):
        from concurrent.futures import ThreadPoolExecutor

        queries = [((2,), "exists"), ((1, 3), "contains"), ((2,), "degree")] * 40

        def run(q):
            labels, mode = q
            if mode == "exists":
                return fig_index.exists(labels)
            if mode == "degree":
                return fig_index.degree(labels[0])
            return fig_index.contains(set(labels))

        serial = [run(q) for q in queries]
        fig_index.psi.cache_clear()
        with ThreadPoolExecutor(max_workers=8) as pool:
            parallel = list(pool.map(run, queries))
        assert serial == parallel
