# services/oracles.py
"""
Exponential exact solvers used as ground truth on desk-scale instances.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Set

from config.settings import settings
from services.errors import InstanceTooLarge, InvariantViolation, NotTwoConnected
from services.graph import Edge, Graph, is_two_vertex_connected

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleResult:
    size: int
    witness: List[Edge]


class _SubsetSearch:
    """
    Include/exclude search over edges in id order for a fixed target size k.

    Edges are tried included first, so the first feasible subset found is the
    lexicographically smallest one of that size.
    """

    def __init__(self, g: Graph, k: int):
        self.g = g
        self.k = k
        self.edges = g.sorted_edges()
        self.available: Set[Edge] = set(self.edges)
        self.available_degree = [g.degree(v) for v in range(g.n)]
        self.chosen: List[Edge] = []
        self.chosen_degree = [0] * g.n
        self.nodes = 0

    def _demand(self) -> int:
        return sum(max(2, deg) for deg in self.chosen_degree)

    def _still_feasible(self) -> bool:
        return is_two_vertex_connected(Graph(self.g.n, frozenset(self.available)))

    def run(self, i: int = 0) -> Optional[List[Edge]]:
        self.nodes += 1
        if len(self.chosen) == self.k:
            subgraph = Graph(self.g.n, frozenset(self.chosen))
            return list(self.chosen) if is_two_vertex_connected(subgraph) else None
        if i == len(self.edges) or len(self.chosen) + len(self.edges) - i < self.k:
            return None

        u, v = self.edges[i]

        self.chosen.append((u, v))
        self.chosen_degree[u] += 1
        self.chosen_degree[v] += 1
        if self._demand() <= 2 * self.k:
            found = self.run(i + 1)
            if found is not None:
                return found
        self.chosen.pop()
        self.chosen_degree[u] -= 1
        self.chosen_degree[v] -= 1

        self.available.discard((u, v))
        self.available_degree[u] -= 1
        self.available_degree[v] -= 1
        found = None
        if self.available_degree[u] >= 2 and self.available_degree[v] >= 2 and self._still_feasible():
            found = self.run(i + 1)
        self.available.add((u, v))
        self.available_degree[u] += 1
        self.available_degree[v] += 1
        return found


def opt_2vcss_bruteforce(g: Graph, guard: Optional[int] = None) -> OracleResult:
    """Minimum-cardinality 2-vertex-connected spanning subgraph by exhaustive search"""
    guard = settings.oracle_edge_guard if guard is None else guard
    if not is_two_vertex_connected(g):
        raise NotTwoConnected("the oracle needs a 2-vertex-connected graph")
    if g.m > guard:
        raise InstanceTooLarge("opt_2vcss_bruteforce", g.m, guard)

    for k in range(g.n, g.m + 1):
        search = _SubsetSearch(g, k)
        witness = search.run()
        logger.debug(f"Oracle stratum k={k}: {search.nodes} nodes, {'found' if witness else 'none'}")
        if witness is not None:
            logger.info(f"📊 OPT={k} for {g}")
            return OracleResult(size=k, witness=witness)
    raise InvariantViolation(f"no 2-vertex-connected spanning subgraph found in {g}")


def find_hamiltonian_cycle(g: Graph) -> Optional[List[int]]:
    """Hamiltonian cycle as a vertex list starting at 0, or None; plain backtracking"""
    if g.n < 3:
        return None
    path = [0]
    on_path = [False] * g.n
    on_path[0] = True

    def extend() -> bool:
        last = path[-1]
        if len(path) == g.n:
            return g.has_edge(last, 0)
        for w in g.neighbors(last):
            if on_path[w]:
                continue
            path.append(w)
            on_path[w] = True
            if extend():
                return True
            path.pop()
            on_path[w] = False
        return False

    return list(path) if extend() else None


def hamiltonicity_crosscheck(g: Graph, guard: Optional[int] = None) -> bool:
    """OPT == n, confirmed by an independent Hamiltonian cycle search"""
    by_oracle = opt_2vcss_bruteforce(g, guard).size == g.n
    by_search = find_hamiltonian_cycle(g) is not None
    if by_oracle != by_search:
        raise InvariantViolation(
            f"Hamiltonicity disagreement on {g}: oracle says {by_oracle}, backtracking says {by_search}"
        )
    return by_oracle
