# services/gadget.py
"""
Degree-2 to K4 replacement.

Every degree-2 vertex v becomes a K4 whose two attachment vertices carry
v's two external edges. A 2-vertex-connected spanning subgraph of the
lifted graph needs exactly three more edges per gadget than one of the
original, which moves any 2VC instance into the min-degree-3 class.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Tuple

import networkx as nx

from services.errors import GadgetMalformed, NotTwoConnected
from services.graph import Edge, Graph, edge_key, is_two_vertex_connected, spanning_subgraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GadgetVertices:
    """The four K4 vertices standing in for one original degree-2 vertex"""
    original: int
    attach0: int
    attach1: int
    inner2: int
    inner3: int
    low_neighbor: int
    high_neighbor: int

    @property
    def members(self) -> Tuple[int, int, int, int]:
        return (self.attach0, self.attach1, self.inner2, self.inner3)

    def witness_path(self) -> List[Edge]:
        """Canonical 3-edge path attach0 - inner2 - inner3 - attach1"""
        return [
            edge_key(self.attach0, self.inner2),
            edge_key(self.inner2, self.inner3),
            edge_key(self.inner3, self.attach1),
        ]


@dataclass
class GadgetMap:
    n_original: int
    replaced: Dict[int, GadgetVertices] = field(default_factory=dict)
    owner: Dict[int, int] = field(default_factory=dict)

    @property
    def n_g(self) -> int:
        return len(self.replaced)

    def port(self, u: int, w: int) -> int:
        """Lifted vertex carrying the original edge u-w at u's end"""
        gadget = self.replaced.get(u)
        if gadget is None:
            return u
        return gadget.attach0 if w == gadget.low_neighbor else gadget.attach1

    def original_of(self, v: int) -> int:
        return self.owner.get(v, v)

    def lift_edge(self, u: int, w: int) -> Edge:
        return edge_key(self.port(u, w), self.port(w, u))

    def lift(self, h: Iterable[Edge]) -> List[Edge]:
        """Edges of a subgraph of the original graph, moved into the lifted graph plus one path per gadget"""
        lifted = {self.lift_edge(u, w) for u, w in h}
        for gadget in self.replaced.values():
            lifted.update(gadget.witness_path())
        return sorted(lifted)


def degree2_to_k4(g: Graph) -> Tuple[Graph, GadgetMap]:
    """Replace every degree-2 vertex by a K4 gadget"""
    if not is_two_vertex_connected(g):
        raise NotTwoConnected("the gadget construction needs a 2-vertex-connected graph")

    gmap = GadgetMap(n_original=g.n)
    for i, v in enumerate(v for v in range(g.n) if g.degree(v) == 2):
        low, high = g.neighbors(v)
        base = g.n + 3 * i
        gadget = GadgetVertices(
            original=v,
            attach0=v,
            attach1=base,
            inner2=base + 1,
            inner3=base + 2,
            low_neighbor=low,
            high_neighbor=high,
        )
        gmap.replaced[v] = gadget
        for member in gadget.members:
            gmap.owner[member] = v

    edges = [gmap.lift_edge(u, w) for u, w in g.sorted_edges()]
    for gadget in gmap.replaced.values():
        edges.extend(edge_key(a, b) for a, b in combinations(gadget.members, 2))

    lifted = Graph.from_edges(g.n + 3 * gmap.n_g, edges)
    logger.info(f"🔄 Replaced {gmap.n_g} degree-2 vertices: {g} -> {lifted}")
    return lifted, gmap


def lift_and_project(
    g: Graph, g_prime: Graph, gmap: GadgetMap, h_prime: Iterable[Edge]
) -> Tuple[List[Edge], bool]:
    """
    Contract each gadget of a 2VC spanning subgraph of the lifted graph back to
    its original vertex.

    Returns:
        (h, consistent): consistent when h is 2VC spanning in g and
        |h'| >= |h| + 3 n_g
    """
    h_prime = sorted({edge_key(u, w) for u, w in h_prime})
    if not is_two_vertex_connected(spanning_subgraph(g_prime, h_prime)):
        raise GadgetMalformed("the lifted subgraph is not 2-vertex-connected and spanning")
    chosen = set(h_prime)

    for gadget in gmap.replaced.values():
        external = [
            gmap.lift_edge(gadget.original, gadget.low_neighbor),
            gmap.lift_edge(gadget.original, gadget.high_neighbor),
        ]
        missing = [e for e in external if e not in chosen]
        if missing:
            raise GadgetMalformed(f"gadget of vertex {gadget.original} misses external edge {missing[0]}")
        inside = nx.Graph()
        inside.add_nodes_from(gadget.members)
        inside.add_edges_from(
            edge_key(a, b) for a, b in combinations(gadget.members, 2) if edge_key(a, b) in chosen
        )
        if not nx.is_connected(inside):
            raise GadgetMalformed(f"gadget of vertex {gadget.original} is not spanned connectedly")

    h = sorted({
        edge_key(gmap.original_of(u), gmap.original_of(w))
        for u, w in h_prime
        if gmap.original_of(u) != gmap.original_of(w)
    })
    consistent = (
        is_two_vertex_connected(spanning_subgraph(g, h))
        and len(h_prime) >= len(h) + 3 * gmap.n_g
    )
    logger.debug(f"Projected {len(h_prime)} lifted edges to {len(h)} (consistent={consistent})")
    return h, consistent
