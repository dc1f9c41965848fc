# services/io/generators.py
"""
Instance generators for the min-degree-3, 2-vertex-connected class.
Randomized kinds retry with fresh seeds drawn from the caller's seed.
"""
import logging
import random
from typing import Callable, Dict, Mapping, Optional

import networkx as nx

from app.models import InstanceKind
from config.settings import settings
from services.errors import GenerationFailed
from services.gadget import degree2_to_k4
from services.graph import Graph, check_min_degree, is_two_vertex_connected

logger = logging.getLogger(__name__)

NAMED_GRAPHS: Dict[str, Callable[[], nx.Graph]] = {
    "k4": lambda: nx.complete_graph(4),
    "k5": lambda: nx.complete_graph(5),
    "petersen": nx.petersen_graph,
    "k33": lambda: nx.complete_bipartite_graph(3, 3),
    "prism": lambda: nx.circular_ladder_graph(3),
    "cube": lambda: nx.hypercube_graph(3),
    "wheel5": lambda: nx.wheel_graph(6),
}


def _int_param(params: Mapping[str, object], key: str, default: int) -> int:
    value = params.get(key, default)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise GenerationFailed(f"parameter {key}={value!r} is not an integer")


def named_graph(name: str) -> Graph:
    factory = NAMED_GRAPHS.get(name)
    if factory is None:
        raise GenerationFailed(f"unknown named graph {name!r}; choose from {', '.join(NAMED_GRAPHS)}")
    return Graph.from_networkx(factory())


def random_regular3(n: int, seed: Optional[int], retries: Optional[int] = None) -> Graph:
    if n < 4 or n % 2:
        raise GenerationFailed(f"a 3-regular graph needs an even n >= 4, got {n}")
    retries = settings.generation_retries if retries is None else retries
    rng = random.Random(seed)
    for attempt in range(1, retries + 1):
        g = Graph.from_networkx(nx.random_regular_graph(3, n, seed=rng.randrange(2 ** 31)))
        if is_two_vertex_connected(g):
            logger.debug(f"regular3 n={n} accepted on attempt {attempt}")
            return g
    raise GenerationFailed(f"no 2-vertex-connected 3-regular graph on {n} vertices after {retries} attempts")


def random_base_graph(n: int, chords: int, seed: Optional[int], retries: Optional[int] = None) -> Graph:
    """A Hamiltonian cycle on n vertices plus random chords, keeping at least one degree-2 vertex"""
    if n < 3:
        raise GenerationFailed(f"a base cycle needs n >= 3, got {n}")
    retries = settings.generation_retries if retries is None else retries
    rng = random.Random(seed)
    for _ in range(retries):
        nx_graph = nx.cycle_graph(n)
        candidates = [(u, v) for u in range(n) for v in range(u + 2, n) if not (u == 0 and v == n - 1)]
        nx_graph.add_edges_from(rng.sample(candidates, min(chords, len(candidates))))
        g = Graph.from_networkx(nx_graph)
        if any(g.degree(v) == 2 for v in range(g.n)):
            return g
    raise GenerationFailed(f"every attempt at n={n}, chords={chords} left no degree-2 vertex")


def _gadget_base(params: Mapping[str, object], seed: Optional[int]) -> Graph:
    base = str(params.get("base", "cycle"))
    if base == "cycle":
        n = _int_param(params, "n", 4)
        if n < 3:
            raise GenerationFailed(f"a base cycle needs n >= 3, got {n}")
        return Graph.from_networkx(nx.cycle_graph(n))
    if base == "random":
        return random_base_graph(_int_param(params, "n", 5), _int_param(params, "chords", 1), seed)
    if base == "named" or base in NAMED_GRAPHS:
        return named_graph(str(params.get("name", base)))
    raise GenerationFailed(f"unknown gadget_lift base {base!r}")


def generate_instance(
    kind: InstanceKind, params: Optional[Mapping[str, object]] = None, seed: Optional[int] = None
) -> Graph:
    """Simple, 2-vertex-connected, min-degree-3 instance; deterministic for a fixed seed"""
    params = params or {}
    kind = InstanceKind(kind)
    seed = settings.default_seed if seed is None else seed

    if kind == InstanceKind.REGULAR3:
        g = random_regular3(_int_param(params, "n", 10), seed)
    elif kind == InstanceKind.WHEEL:
        k = _int_param(params, "k", 5)
        if k < 3:
            raise GenerationFailed(f"a wheel needs a rim of at least 3 vertices, got {k}")
        g = Graph.from_networkx(nx.wheel_graph(k + 1))
    elif kind == InstanceKind.HYPERCUBE:
        dim = _int_param(params, "dim", 3)
        if dim < 3:
            raise GenerationFailed(f"hypercubes below dimension 3 have degree < 3, got {dim}")
        g = Graph.from_networkx(nx.hypercube_graph(dim))
    elif kind == InstanceKind.NAMED:
        g = named_graph(str(params.get("name", "k4")))
    else:
        g, _ = degree2_to_k4(_gadget_base(params, seed))

    if not is_two_vertex_connected(g) or not check_min_degree(g, 3):
        raise GenerationFailed(f"{kind.value} produced {g}, which is outside the min-degree-3 2VC class")
    logger.info(f"✅ Generated {kind.value} instance {g} (seed={seed})")
    return g
