# services/graph.py
"""
Simple undirected graph on dense integer ids plus the connectivity
predicates that gate every later stage.
"""
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from services.errors import NotSimple

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Canonical (low, high) form of an undirected edge"""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; vertices are 0..n-1, edges are (low, high) pairs"""
    n: int
    edges: FrozenSet[Edge]
    adjacency: Tuple[FrozenSet[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj: List[Set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise NotSimple(f"edge {u}-{v} is not a canonical edge on {self.n} vertices")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "adjacency", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph, rejecting loops, parallel edges and unknown ids"""
        seen: Set[Edge] = set()
        for u, v in pairs:
            if u == v:
                raise NotSimple(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise NotSimple(f"edge {u}-{v} uses a vertex outside 0..{n - 1}")
            key = edge_key(u, v)
            if key in seen:
                raise NotSimple(f"parallel edge {key[0]}-{key[1]}")
            seen.add(key)
        return cls(n, frozenset(seen))

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> "Graph":
        """Relabel nodes densely in sorted order"""
        nodes = sorted(nx_graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[a], index[b]) for a, b in nx_graph.edges()))

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges)
        return nx_graph

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> List[int]:
        """Neighbours of v in ascending id order"""
        return sorted(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def relabel(self, permutation: Sequence[int]) -> "Graph":
        """Vertex v becomes permutation[v]"""
        return Graph.from_edges(self.n, ((permutation[u], permutation[v]) for u, v in self.edges))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def spanning_subgraph(g: Graph, edges: Iterable[Edge]) -> Graph:
    """The subgraph of g on all of V(g) with the given edges"""
    chosen = frozenset(edge_key(u, v) for u, v in edges)
    missing = chosen - g.edges
    if missing:
        u, v = min(missing)
        raise NotSimple(f"edge {u}-{v} is not an edge of the host graph")
    return Graph(g.n, chosen)


def _lowpoint_scan(g: Graph, removed: Optional[int] = None) -> Tuple[int, Set[int]]:
    """
    Iterative DFS lowpoint pass.

    Returns:
        (number of DFS trees, articulation vertices)
    """
    disc = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    points: Set[int] = set()
    timer = 0
    trees = 0

    for root in range(g.n):
        if root == removed or disc[root] != -1:
            continue
        trees += 1
        disc[root] = low[root] = timer
        timer += 1
        children = 0
        stack = [(root, iter(g.neighbors(root)))]

        while stack:
            v, pending = stack[-1]
            advanced = False
            for w in pending:
                if w == removed:
                    continue
                if disc[w] == -1:
                    parent[w] = v
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        children += 1
                    stack.append((w, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent[v]:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if p != root and low[v] >= disc[p]:
                    points.add(p)

        if children > 1:
            points.add(root)

    return trees, points


def articulation_points(g: Graph) -> List[int]:
    _, points = _lowpoint_scan(g)
    return sorted(points)


def is_connected(g: Graph, removed: Optional[int] = None) -> bool:
    """Connectivity of g, or of g - removed when a vertex is given"""
    remaining = g.n - (1 if removed is not None else 0)
    if remaining <= 1:
        return True
    trees, _ = _lowpoint_scan(g, removed)
    return trees == 1


def is_two_vertex_connected(g: Graph) -> bool:
    """Connected, at least 3 vertices, no articulation vertex"""
    if g.n < 3:
        return False
    trees, points = _lowpoint_scan(g)
    return trees == 1 and not points


def min_degree(g: Graph) -> int:
    return min((g.degree(v) for v in range(g.n)), default=0)


def check_min_degree(g: Graph, d: int) -> bool:
    return all(g.degree(v) >= d for v in range(g.n))

