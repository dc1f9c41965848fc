# tests/conftest.py
from functools import lru_cache
from typing import List, Tuple

import networkx as nx
import pytest

from app.models import InstanceKind
from services.ears import EarDecomposition
from services.errors import GenerationFailed
from services.graph import Graph
from services.io.generators import generate_instance, named_graph

CORPUS_EDGE_CAP = 20


def graph_from(nx_graph: nx.Graph) -> Graph:
    return Graph.from_networkx(nx_graph)


def cycle(n: int) -> Graph:
    return Graph.from_networkx(nx.cycle_graph(n))


def connected_after_removal(g: Graph) -> bool:
    """Reference 2VC test: n >= 3, connected, and connected after deleting any one vertex"""
    nx_graph = g.to_networkx()
    if g.n < 3 or not nx.is_connected(nx_graph):
        return False
    for v in range(g.n):
        rest = nx_graph.copy()
        rest.remove_node(v)
        if not nx.is_connected(rest):
            return False
    return True


def k4_seeded() -> EarDecomposition:
    """a=0, b=1, c=2, d=3: P1 = a-b-c-a, P2 = a-d-b, T = c-d"""
    return EarDecomposition.from_lists(0, [[0, 1, 2, 0], [0, 3, 1], [2, 3]])


def decomposed(ears: List[List[int]], root: int = 0) -> Tuple[Graph, EarDecomposition]:
    """The graph carrying exactly the edges of the given ears, with that decomposition"""
    d = EarDecomposition.from_lists(root, ears)
    n = 1 + max(v for ear in ears for v in ear)
    return Graph.from_edges(n, [e for ear in d.ears for e in ear.edges()]), d


@lru_cache(maxsize=1)
def desk_corpus() -> Tuple[Tuple[str, Graph], ...]:
    """At least 300 min-degree-3 2VC instances with at most 20 edges"""
    instances: List[Tuple[str, Graph]] = []
    for n in (8, 10, 12):
        for seed in range(60):
            instances.append((f"regular3 n={n} seed={seed}", generate_instance(InstanceKind.REGULAR3, {"n": n}, seed)))
    for k in range(3, 11):
        instances.append((f"wheel k={k}", generate_instance(InstanceKind.WHEEL, {"k": k})))
    for name in ("k4", "k5", "petersen", "k33", "prism", "cube", "wheel5"):
        instances.append((name, named_graph(name)))

    seed = 0
    while len(instances) < 300:
        n, chords = [(4, 1), (5, 2), (6, 3), (5, 3)][seed % 4]
        seed += 1
        try:
            g = generate_instance(InstanceKind.GADGET_LIFT, {"base": "random", "n": n, "chords": chords}, seed)
        except GenerationFailed:
            continue
        if g.m <= CORPUS_EDGE_CAP:
            instances.append((f"gadget_lift n={n} chords={chords} seed={seed}", g))
    return tuple(instances)


@pytest.fixture
def k4() -> Graph:
    return named_graph("k4")


@pytest.fixture
def k33() -> Graph:
    return named_graph("k33")


@pytest.fixture
def petersen() -> Graph:
    return named_graph("petersen")


@pytest.fixture
def prism() -> Graph:
    return named_graph("prism")


@pytest.fixture
def corpus():
    return desk_corpus()
