import random

import pytest
from hypothesis import HealthCheck, settings

from hypercsa import Hypergraph, NodeMap, parse_edge_list
from hypercsa.builder import build_index

settings.register_profile(
    "hypercsa",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("hypercsa")

# Figure-of-five worked example used throughout: five edges over nodes 0..4.
FIG_EDGE_TEXT = "0,1,2,3\n1,2,3\n2\n0,1,2,4\n2\n"
FIG_TEXT = [2, 2, 1, 2, 3, 0, 1, 2, 4, 0, 1, 2, 3]
FIG_D = "10100100001011"
FIG_CANONICAL = ((2,), (2,), (1, 2, 3), (0, 1, 2, 4), (0, 1, 2, 3))
# Hand-traced suffix-array side of the worked example (sentinel-wrapped).
FIG_SA = [14, 10, 6, 11, 3, 7, 2, 1, 12, 4, 8, 13, 5, 9, 0]
FIG_PSI_CSA = [14, 3, 5, 8, 9, 10, 4, 6, 11, 12, 13, 0, 2, 1, 7]
FIG_PSI = [2, 4, 7, 8, 9, 5, 6, 10, 11, 12, 0, 3, 1]


@pytest.fixture(scope="session")
def fig_graph():
    g, node_map = parse_edge_list(FIG_EDGE_TEXT)
    return g, node_map


@pytest.fixture(scope="session")
def fig_index(fig_graph):
    g, node_map = fig_graph
    return build_index(g, node_map=node_map)


def edges_to_text(edges) -> str:
    return "\n".join(",".join(str(v) for v in e) for e in edges) + "\n"


def graph_from_edges(edges):
    return parse_edge_list(edges_to_text(edges))


def index_from_edges(edges, sample_period=128):
    g, node_map = graph_from_edges(edges)
    return build_index(g, sample_period=sample_period, node_map=node_map)


@pytest.fixture
def rng():
    return random.Random(0xC5A)


# -- acceptance reporting ----------------------------------------------------

ACCEPTANCE_RESULTS = {}


def record_acceptance(name: str, ok: bool, detail: str = ""):
    ACCEPTANCE_RESULTS[name] = (ok, detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[name]
        status = "PASS" if ok else "FAIL"
        line = f"{name}: {status}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
