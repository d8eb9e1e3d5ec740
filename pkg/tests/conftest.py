"""Configure pytest for the project.

Graph fixtures are built from networkx generators where one exists, so the
reference structure never comes from the code under test.
"""
import logging
import random
from typing import Iterable, List, Tuple

import networkx as nx
import pytest

from closecomm.bundle import analyze
from closecomm.config import AnalysisSettings
from closecomm.graph.core import Graph, build_graph


def from_networkx(G: nx.Graph, offset: int = 0) -> Graph:
    """Graph with the same node ids (as labels, shifted by ``offset``)."""
    return build_graph(
        ((u + offset, v + offset) for u, v in G.edges()),
        nodes=(u + offset for u in G.nodes()),
    )


def from_pairs(pairs: Iterable[str]) -> Graph:
    """Graph from ``"u-v"`` strings."""
    return build_graph(tuple(pair.split("-")) for pair in pairs)


def node_sets(g: Graph, clubs) -> List[Tuple[str, ...]]:
    return sorted(tuple(g.labels(club.nodes)) for club in clubs)


# Large-borough 2-clubs of the karate club graph, with 1-based labels
KARATE_TABLE = [
    ("coterie", (1, 25, 26, 29, 32, 33, 34)),
    ("social_circle", (24, 26, 28, 29, 30, 32, 33, 34)),
    ("social_circle", (3, 24, 25, 28, 29, 32, 33, 34)),
    ("social_circle", (24, 25, 26, 28, 29, 32, 33, 34)),
    ("hamlet", (1, 3, 25, 28, 29, 32, 33, 34)),
    ("social_circle", (1, 2, 3, 4, 8, 9, 14, 29, 32, 33)),
    ("social_circle", (1, 2, 3, 4, 8, 9, 14, 31, 32, 33)),
    ("coterie", (1, 2, 3, 4, 8, 9, 10, 14, 28, 29, 33)),
    ("social_circle", (1, 2, 3, 4, 8, 9, 14, 18, 20, 22, 31)),
    ("coterie", (1, 2, 3, 4, 8, 9, 13, 14, 18, 20, 22, 32)),
    ("social_circle", (1, 2, 3, 4, 9, 10, 14, 20, 28, 29, 31, 32, 33, 34)),
    ("social_circle", (3, 9, 10, 14, 15, 16, 19, 21, 23, 24, 28, 29, 30, 31, 32, 33, 34)),
    ("coterie", (9, 10, 14, 15, 16, 19, 20, 21, 23, 24, 27, 28, 29, 30, 31, 32, 33, 34)),
]

# Hamlet on 7 nodes and 10 edges
FIG_HAMLET = ["a-b", "a-d", "b-c", "c-g", "c-f", "c-e", "d-f", "d-g", "e-f", "d-e"]

# One borough chaining a twinned coterie {a..e}, a hamlet {d..j} and a
# social circle {h, i, k..o}
FIG_CHAINED = [
    "a-d", "b-d", "c-d", "d-e", "d-f",
    "a-e", "b-e", "c-e", "e-g",
    "f-h", "f-i", "f-j",
    "g-h", "g-i", "g-j",
    "h-i", "h-k",
    "i-k", "k-m", "k-n", "k-o",
    "i-l", "l-m", "l-n", "l-o",
    "m-n",
]
FIG_CHAINED_HAMLET = ("d", "e", "f", "g", "h", "i", "j")
FIG_CHAINED_CIRCLE = ("h", "i", "k", "l", "m", "n", "o")

# Borough of diameter 3; deleting b-c leaves diameter 6
FIG_STRETCH = [
    "a-b", "a-e", "b-f", "e-f", "f-i", "c-g", "g-h", "g-i",
    "c-d", "d-h", "c-h", "b-e", "b-c",
]


@pytest.fixture
def settings():
    """Fresh default settings, isolated from CLOSECOMM_* variables."""
    return AnalysisSettings.model_validate({})


@pytest.fixture(scope="session")
def karate():
    """Karate club graph with 1-based labels."""
    return from_networkx(nx.karate_club_graph(), offset=1)


@pytest.fixture(scope="session")
def karate_result(karate):
    """Default pipeline run over the karate club graph."""
    return analyze(karate, AnalysisSettings.model_validate({}))


@pytest.fixture
def triangle():
    return from_networkx(nx.cycle_graph(3))


@pytest.fixture
def square():
    return from_networkx(nx.cycle_graph(4))


@pytest.fixture
def pentagon():
    return from_networkx(nx.cycle_graph(5))


@pytest.fixture
def hexagon():
    return from_networkx(nx.cycle_graph(6))


@pytest.fixture
def k4():
    return from_networkx(nx.complete_graph(4))


@pytest.fixture
def petersen():
    return from_networkx(nx.petersen_graph())


@pytest.fixture
def star():
    """K1,3 with center 0."""
    return from_networkx(nx.star_graph(3))


@pytest.fixture
def path5():
    """Path a-b-c-d-e."""
    return from_pairs(["a-b", "b-c", "c-d", "d-e"])


@pytest.fixture
def bowtie():
    """Two triangles sharing node x."""
    return from_pairs(["a-b", "a-x", "b-x", "c-d", "c-x", "d-x"])


@pytest.fixture
def triangle_with_tail():
    """Triangle a-b-c with pendant edge c-d."""
    return from_pairs(["a-b", "b-c", "a-c", "c-d"])


@pytest.fixture
def fig_hamlet():
    return from_pairs(FIG_HAMLET)


@pytest.fixture
def fig_chained():
    return from_pairs(FIG_CHAINED)


@pytest.fixture
def fig_stretch():
    return from_pairs(FIG_STRETCH)


@pytest.fixture(scope="session")
def random_corpus():
    """500 seeded G(n, p) graphs, n in [4, 12], p in {0.2, 0.4, 0.6}."""
    rng = random.Random(20240607)
    corpus = []
    for seed in range(500):
        n = rng.randint(4, 12)
        p = (0.2, 0.4, 0.6)[seed % 3]
        corpus.append(from_networkx(nx.gnp_random_graph(n, p, seed=seed)))
    return corpus


@pytest.fixture(scope="session")
def small_corpus(random_corpus):
    """Corpus members with at most 10 nodes."""
    return [g for g in random_corpus if g.n <= 10]


@pytest.fixture
def edge_file(tmp_path):
    """Write an edge list to a temporary file and return its path."""
    def write(lines: Iterable[str], name: str = "graph.txt") -> str:
        path = tmp_path / name
        path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
        return str(path)
    return write


@pytest.fixture
def karate_file(edge_file):
    G = nx.karate_club_graph()
    return edge_file((f"{u + 1} {v + 1}" for u, v in G.edges()), name="karate.txt")


@pytest.fixture
def detach_cli_handler():
    """Drop the stderr handler the CLI installs on the package logger."""
    yield
    package = logging.getLogger("closecomm")
    for handler in [h for h in package.handlers if getattr(h, "_closecomm", False)]:
        package.removeHandler(handler)
