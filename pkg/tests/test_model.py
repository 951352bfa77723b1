import pytest
from hypothesis import given, strategies as st

from hypercsa import (
    EdgeListParseError,
    Hypergraph,
    ValidationError,
    canonicalize,
    edge_multiset,
    parse_edge_list,
    write_edge_list,
)
from hypercsa.model import is_canonical

from conftest import FIG_CANONICAL, FIG_EDGE_TEXT


class TestParse:
    def test_fig_example(self):
        g, node_map = parse_edge_list(FIG_EDGE_TEXT)
        assert g.node_count == 5
        assert g.edge_count == 5
        assert g.incidence_count == 13
        assert node_map.is_identity

    def test_single_loop(self):
        g, _ = parse_edge_list("0\n")
        assert g.node_count == 1
        assert g.edges == ((0,),)
        assert g.incidence_count == 1

    def test_order_preserving_densification(self):
        g, node_map = parse_edge_list("7 9\n9 12\n")
        assert node_map.external_to_dense == {7: 0, 9: 1, 12: 2}
        assert g.edges == ((0, 1), (1, 2))

    def test_separators_and_comments(self):
        g, _ = parse_edge_list("# comment\n% also comment\n\n1,2\t3  4\n")
        assert g.edges == ((0, 1, 2, 3),)

    def test_crlf(self):
        g, _ = parse_edge_list("0,1\r\n1,2\r\n")
        assert g.edge_count == 2

    def test_multiplicity_preserved(self):
        g, _ = parse_edge_list("1,2\n1,2\n1,2\n")
        assert g.edge_count == 3

    def test_malformed_token(self):
        with pytest.raises(EdgeListParseError) as err:
            parse_edge_list("0,1\n2,x\n")
        assert err.value.line_number == 2

    def test_duplicate_node_in_edge(self):
        with pytest.raises(ValidationError) as err:
            parse_edge_list("1,2,1\n")
        assert err.value.line_number == 1

    def test_separator_only_line(self):
        with pytest.raises(ValidationError):
            parse_edge_list("0,1\n,,\n")

    def test_negative_label(self):
        with pytest.raises(EdgeListParseError):
            parse_edge_list("-1,2\n")

    def test_accepts_file_object(self, tmp_path):
        path = tmp_path / "edges.txt"
        path.write_text(FIG_EDGE_TEXT)
        with open(path) as fh:
            g, _ = parse_edge_list(fh)
        assert g.edge_count == 5


class TestCanonicalize:
    def test_fig_order(self, fig_graph):
        g, _ = fig_graph
        assert canonicalize(g).edges == FIG_CANONICAL

    def test_singleton_fixed_point(self):
        g = Hypergraph(1, ((0,),))
        assert canonicalize(g).edges == ((0,),)

    def test_two_edges(self):
        g = Hypergraph(3, ((0, 1), (1, 2)))
        assert canonicalize(g).edges == ((1, 2), (0, 1))

    def test_prefix_edge_sorts_after_extension(self):
        # (0, 1) extends (0,): the longer edge must come first, otherwise
        # the flattened text loses its boundary-descent property.
        g = Hypergraph(2, ((0,), (0, 1)))
        assert canonicalize(g).edges == ((0, 1), (0,))

    def test_canonical_input_returned_unchanged(self):
        g = Hypergraph(3, ((1, 2), (0, 1)))
        assert canonicalize(g) is g
        assert is_canonical(g)

    def test_idempotent(self, fig_graph):
        g, _ = fig_graph
        once = canonicalize(g)
        assert canonicalize(once) is once


class TestWrite:
    def test_fig_roundtrip(self, fig_graph):
        g, node_map = fig_graph
        text = write_edge_list(g, node_map)
        assert text == "2\n2\n1,2,3\n0,1,2,4\n0,1,2,3\n"
        g2, _ = parse_edge_list(text)
        assert g2.edges == canonicalize(g).edges

    def test_single_loop(self):
        g = Hypergraph(1, ((0,),))
        assert write_edge_list(g) == "0\n"

    def test_external_labels_restored(self):
        g, node_map = parse_edge_list("7 9\n9 12\n")
        assert write_edge_list(g, node_map) == "9,12\n7,9\n"


edge_lists = st.lists(
    st.lists(st.integers(0, 30), min_size=1, max_size=6, unique=True),
    min_size=1,
    max_size=25,
)


@given(edge_lists)
def test_canonicalize_idempotent(edges):
    g = Hypergraph(31, tuple(tuple(e) for e in edges))
    once = canonicalize(g)
    assert canonicalize(once).edges == once.edges


@given(edge_lists)
def test_canonicalize_preserves_multiset(edges):
    g = Hypergraph(31, tuple(tuple(e) for e in edges))
    assert edge_multiset(canonicalize(g).edges) == edge_multiset(g.edges)


@given(edge_lists)
def test_canonical_pair_order(edges):
    g = canonicalize(Hypergraph(31, tuple(tuple(e) for e in edges)))
    for a, b in zip(g.edges, g.edges[1:]):
        assert a >= b or (len(a) < len(b) and b[: len(a)] == a)


@given(edge_lists)
def test_parse_write_identity_on_canonical(edges):
    g = canonicalize(Hypergraph(31, tuple(tuple(e) for e in edges)))
    reparsed, node_map = parse_edge_list(write_edge_list(g))
    restored = tuple(
        tuple(node_map.to_external(v) for v in e) for e in reparsed.edges
    )
    assert restored == g.edges
