import importlib.resources

import pytest

from factorcover.graphs import CubicGraph, flower_snark, theta_graph
from factorcover.matching import enumerate_perfect_matchings
from factorcover.report import parse_entry, read_corpus

PETERSEN_EDGES = [
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
]

K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

K33_EDGES = [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5),
             (2, 3), (2, 4), (2, 5)]

PRISM_EDGES = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
               (0, 3), (1, 4), (2, 5)]


def corpus_path() -> str:
    ref = importlib.resources.files("factorcover") / "data/corpus_cubic14.mgf"
    return str(ref)


@pytest.fixture(scope="session")
def petersen() -> CubicGraph:
    return CubicGraph(10, PETERSEN_EDGES)


@pytest.fixture(scope="session")
def k4() -> CubicGraph:
    return CubicGraph(4, K4_EDGES)


@pytest.fixture(scope="session")
def k33() -> CubicGraph:
    return CubicGraph(6, K33_EDGES)


@pytest.fixture(scope="session")
def prism() -> CubicGraph:
    return CubicGraph(6, PRISM_EDGES)


@pytest.fixture(scope="session")
def theta() -> CubicGraph:
    return theta_graph()


@pytest.fixture(scope="session")
def j5() -> CubicGraph:
    return flower_snark(5)


@pytest.fixture(scope="session")
def corpus():
    """The bundled corpus as a list of (name, CubicGraph)."""
    return [(name, parse_entry(text, "mgf"))
            for name, text in read_corpus(corpus_path(), "mgf")]


@pytest.fixture(scope="session")
def corpus_pms(corpus):
    """Perfect matching lists for every corpus graph, enumerated once."""
    return {name: enumerate_perfect_matchings(G) for name, G in corpus}
