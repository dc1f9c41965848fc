# services/ears.py
"""
Ears and ear-decompositions.

An ear is stored as its vertex sequence v0..vl; consecutive pairs are its
edges. The first ear of a decomposition is the closed ear through the root,
stored with v0 = vl = root. Trivial ears (single edges) sit in the same
ordered list and carry every edge not used by a nontrivial ear, so the ears
of a valid decomposition partition E(G).

Ear positions are 0-based list indices in code; messages use the 1-based
sequence number (ears[0] is "ear 1").
"""
import logging
import random
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from services.errors import InvariantViolation, NotTwoConnected, PreconditionViolated
from services.graph import Edge, Graph, edge_key, is_two_vertex_connected

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ear:
    vertices: Tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise ValueError(f"an ear needs at least one edge, got {self.vertices}")

    @classmethod
    def of(cls, *vertices: int) -> "Ear":
        return cls(tuple(vertices))

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def first(self) -> int:
        return self.vertices[0]

    @property
    def last(self) -> int:
        return self.vertices[-1]

    @property
    def endpoints(self) -> Tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def internal(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def is_open(self) -> bool:
        return self.vertices[0] != self.vertices[-1]

    @property
    def is_closed(self) -> bool:
        return not self.is_open

    @property
    def is_trivial(self) -> bool:
        return self.length == 1

    @property
    def is_short(self) -> bool:
        return self.length in (2, 3)

    @property
    def is_long(self) -> bool:
        return self.length >= 4

    @property
    def is_even(self) -> bool:
        return self.length % 2 == 0

    @property
    def phi(self) -> int:
        return 1 if self.is_even else 0

    def edges(self) -> List[Edge]:
        return [edge_key(a, b) for a, b in zip(self.vertices, self.vertices[1:])]

    def reversed(self) -> "Ear":
        return Ear(self.vertices[::-1])

    def oriented_from(self, start: int) -> "Ear":
        """Same ear read from the given endpoint"""
        if self.vertices[0] == start:
            return self
        if self.vertices[-1] == start:
            return self.reversed()
        raise PreconditionViolated(f"{start} is not an endpoint of ear {self}")

    def segment(self, a: int, b: int) -> Tuple[int, ...]:
        """Vertex run of an open ear from a to b, both on the ear"""
        ia, ib = self.vertices.index(a), self.vertices.index(b)
        if ia <= ib:
            return self.vertices[ia:ib + 1]
        return self.vertices[ib:ia + 1][::-1]

    def other_endpoint(self, v: int) -> int:
        first, last = self.endpoints
        if v == first:
            return last
        if v == last:
            return first
        raise PreconditionViolated(f"{v} is not an endpoint of ear {self}")

    def __str__(self) -> str:
        return "·".join(str(v) for v in self.vertices)


def join(*runs: Sequence[int]) -> Ear:
    """Concatenate vertex runs that share their meeting vertices"""
    vertices: List[int] = list(runs[0])
    for run in runs[1:]:
        if vertices[-1] != run[0]:
            raise InvariantViolation(f"cannot join runs ending at {vertices[-1]} and starting at {run[0]}")
        vertices.extend(run[1:])
    return Ear(tuple(vertices))


def trivial(u: int, v: int) -> Ear:
    return Ear((u, v))


@dataclass(frozen=True)
class EarDecomposition:
    root: int
    ears: Tuple[Ear, ...]

    @property
    def k(self) -> int:
        return len(self.ears)

    @property
    def even_count(self) -> int:
        """phi(D): number of even ears (trivial ears are odd)"""
        return sum(ear.phi for ear in self.ears)

    def nontrivial(self) -> List[int]:
        return [i for i, ear in enumerate(self.ears) if not ear.is_trivial]

    def nontrivial_edges(self) -> Set[Edge]:
        chosen: Set[Edge] = set()
        for ear in self.ears:
            if not ear.is_trivial:
                chosen.update(ear.edges())
        return chosen

    def pendant_flags(self) -> Dict[int, bool]:
        lookup = EarLookup(self)
        return {i: lookup.is_pendant(i) for i in self.nontrivial()}

    @property
    def pi(self) -> int:
        return sum(1 for flag in self.pendant_flags().values() if flag)

    @property
    def pi3(self) -> int:
        flags = self.pendant_flags()
        return sum(1 for i, flag in flags.items() if flag and self.ears[i].length == 3)

    def rebuilt(
        self,
        replace: Optional[Mapping[int, Ear]] = None,
        delete: Iterable[int] = (),
        append: Iterable[Ear] = (),
    ) -> "EarDecomposition":
        """Replace ears in place, drop others, append new ears, then settle the order"""
        replace = dict(replace or {})
        dropped = set(delete)
        ears: List[Ear] = []
        for i, ear in enumerate(self.ears):
            if i in replace:
                ears.append(replace[i])
            elif i not in dropped:
                ears.append(ear)
        ears.extend(append)
        return settle(EarDecomposition(self.root, tuple(ears)))

    def to_lists(self) -> List[List[int]]:
        return [list(ear.vertices) for ear in self.ears]

    @classmethod
    def from_lists(cls, root: int, ears: Iterable[Sequence[int]]) -> "EarDecomposition":
        return cls(root, tuple(Ear(tuple(ear)) for ear in ears))

    def summary(self) -> str:
        lengths = [ear.length for ear in self.ears if not ear.is_trivial]
        return f"root={self.root} nontrivial={lengths} trivial={self.k - len(lengths)} even={self.even_count}"


class EarLookup:
    """Per-decomposition indexes answering the ownership questions the transformations ask"""

    def __init__(self, d: EarDecomposition):
        self.d = d
        self.owner: Dict[int, int] = {}
        self.endpoint_users: Dict[int, List[int]] = {}
        self.edge_owner: Dict[Edge, int] = {}
        for i, ear in enumerate(d.ears):
            for v in ear.internal:
                self.owner.setdefault(v, i)
            for e in ear.edges():
                self.edge_owner.setdefault(e, i)
            if not ear.is_trivial:
                for v in set(ear.endpoints):
                    self.endpoint_users.setdefault(v, []).append(i)

    def ear(self, i: int) -> Ear:
        return self.d.ears[i]

    def is_pendant(self, i: int) -> bool:
        """The closed ear through the root anchors the decomposition and never counts as pendant"""
        if self.d.ears[i].is_closed:
            return False
        for v in self.d.ears[i].internal:
            if any(j != i for j in self.endpoint_users.get(v, ())):
                return False
        return True

    def placed_before(self, i: int) -> Set[int]:
        """Vertices of the partial graph P0 .. P(i-1)"""
        placed = {self.d.root}
        for ear in self.d.ears[:i]:
            placed.update(ear.internal)
        return placed

    def first_nonpendant(self, length: int) -> Optional[int]:
        for i, ear in enumerate(self.d.ears):
            if ear.length == length and not self.is_pendant(i):
                return i
        return None

    def first_with_endpoint_in(self, vertices: Iterable[int]) -> Optional[int]:
        """First nontrivial ear having an endpoint among the given vertices"""
        candidates = [j for v in vertices for j in self.endpoint_users.get(v, ())]
        return min(candidates) if candidates else None

    def ears_with_endpoints(self, a: int, b: int, nontrivial_only: bool = False) -> List[int]:
        wanted = {a, b}
        return [
            i for i, ear in enumerate(self.d.ears)
            if set(ear.endpoints) == wanted and ear.is_open and not (nontrivial_only and ear.is_trivial)
        ]

    def trivial_index(self, u: int, v: int) -> int:
        i = self.edge_owner.get(edge_key(u, v))
        if i is None or not self.d.ears[i].is_trivial:
            raise InvariantViolation(f"edge {u}-{v} is not carried by a trivial ear")
        return i


def validate(g: Graph, d: EarDecomposition) -> List[str]:
    """All rule violations of d against g; empty iff d is a valid ear-decomposition"""
    violations: List[str] = []
    if not (0 <= d.root < g.n):
        return [f"root {d.root} is not a vertex"]
    if not d.ears:
        return ["decomposition has no ears"]

    placed = {d.root}
    used: Dict[Edge, int] = {}

    for i, ear in enumerate(d.ears):
        label = f"ear {i + 1}"
        vertices = ear.vertices
        inner = vertices[1:-1]
        a, b = ear.endpoints

        if i == 0 and (a != d.root or b != d.root):
            violations.append(f"{label}: first ear must be a closed ear at the root {d.root}")
        if any(not (0 <= v < g.n) for v in vertices):
            violations.append(f"{label}: vertex outside 0..{g.n - 1}")
            continue
        if len(set(inner)) != len(inner) or set(inner) & {a, b} or (ear.is_closed and ear.length < 3):
            violations.append(f"{label}: repeated vertex")

        for u, v in zip(vertices, vertices[1:]):
            if u == v or not g.has_edge(u, v):
                violations.append(f"{label}: edge {u}-{v} not in graph")
                continue
            key = edge_key(u, v)
            if key in used:
                violations.append(f"{label}: edge {key[0]}-{key[1]} already used by ear {used[key] + 1}")
            else:
                used[key] = i

        for v in sorted({a, b}):
            if v not in placed:
                violations.append(f"{label}: endpoint {v} not yet present")
        for v in inner:
            if v in placed:
                violations.append(f"{label}: internal vertex {v} already present")
        placed.update(inner)

    for u, v in g.sorted_edges():
        if (u, v) not in used:
            violations.append(f"edge {u}-{v} not covered")
    for v in range(g.n):
        if v not in placed:
            violations.append(f"vertex {v} not covered")
    return violations


def is_open(d: EarDecomposition) -> bool:
    """First ear closed, every later ear open"""
    return bool(d.ears) and d.ears[0].is_closed and all(ear.is_open for ear in d.ears[1:])


def classify_pendant(d: EarDecomposition, i: int) -> bool:
    """True iff no other nontrivial ear has an endpoint in in(P_i)"""
    if not (0 <= i < d.k):
        raise PreconditionViolated(f"ear index {i} out of range 0..{d.k - 1}")
    if d.ears[i].is_trivial:
        raise PreconditionViolated(f"ear {i + 1} is trivial; pendancy is defined for nontrivial ears")
    return EarLookup(d).is_pendant(i)


def require_valid(g: Graph, d: EarDecomposition, stage: str) -> None:
    """Abort loudly when a transformation produced an invalid or non-open decomposition"""
    violations = validate(g, d)
    if violations:
        raise InvariantViolation(f"{stage}: invalid decomposition: {'; '.join(violations[:5])}")
    if not is_open(d):
        raise InvariantViolation(f"{stage}: decomposition is no longer open")


def rotate_closed(ear: Ear, root: int) -> Ear:
    """Closed ear read as a cycle starting and ending at root"""
    cycle = ear.vertices[:-1]
    if root not in cycle:
        raise InvariantViolation(f"root {root} is not on closed ear {ear}")
    start = cycle.index(root)
    turned = cycle[start:] + cycle[:start]
    return Ear(turned + (root,))


def settle(d: EarDecomposition) -> EarDecomposition:
    """
    Stable reorder into a valid placement order.

    Repeatedly takes the first ear, in current list order, whose endpoints are
    already placed and whose internal vertices are not. A valid order is left
    untouched. Every ear taken ahead of waiting ears is logged at DEBUG.
    """
    placed = {d.root}
    remaining = list(d.ears)
    ordered: List[Ear] = []

    while remaining:
        for idx, ear in enumerate(remaining):
            closed_ok = ear.is_open or (not ordered and ear.first == d.root)
            if (
                closed_ok
                and ear.first in placed
                and ear.last in placed
                and not placed.intersection(ear.internal)
            ):
                if idx:
                    logger.debug(f"Settle moved ear {ear} ahead of {idx} waiting ear(s)")
                ordered.append(ear)
                placed.update(ear.internal)
                del remaining[idx]
                break
        else:
            stuck = ", ".join(str(ear) for ear in remaining[:3])
            raise InvariantViolation(f"no valid ear order exists; stuck at {stuck}")

    return EarDecomposition(d.root, tuple(ordered))


def assemble(g: Graph, root: int, nontrivial: Sequence[Ear]) -> EarDecomposition:
    """Nontrivial ears in order, then one trivial ear per uncovered edge (ascending)"""
    covered: Set[Edge] = set()
    for ear in nontrivial:
        covered.update(ear.edges())
    leftovers = [trivial(u, v) for u, v in g.sorted_edges() if (u, v) not in covered]
    return EarDecomposition(root, tuple(nontrivial) + tuple(leftovers))


def _shortest_ear(
    g: Graph, start: int, first: int, placed: Set[int], excluded: Set[int]
) -> Optional[Tuple[int, ...]]:
    """
    BFS from `first` through vertices outside `placed` until a placed vertex
    other than `start` (and outside `excluded`) is adjacent. Returns the ear
    start, first, ..., end.
    """
    parent: Dict[int, int] = {first: start}
    queue = deque([first])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y == start and x == first:
                continue
            if y in placed:
                if y == start or y in excluded:
                    continue
                path = [y, x]
                while path[-1] != start:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return None


def build_open_decomposition(g: Graph, seed: Optional[int] = None) -> EarDecomposition:
    """
    Parity-aware greedy open ear-decomposition.

    The first ear is a shortest cycle through the root (odd preferred); each
    further ear is a shortest path through unplaced vertices between two
    distinct placed vertices, odd lengths preferred. A seed picks the root and
    shuffles the scan order.
    """
    if not is_two_vertex_connected(g):
        raise NotTwoConnected("an open ear-decomposition needs a 2-vertex-connected graph")

    rng = random.Random(seed) if seed is not None else None
    order = list(range(g.n))
    if rng is not None:
        rng.shuffle(order)
    root = order[0]
    rank = {v: i for i, v in enumerate(order)}

    def scan(vertices: Iterable[int]) -> List[int]:
        return sorted(vertices, key=rank.__getitem__)

    cycle: Optional[Tuple[int, ...]] = None
    for a in scan(g.adjacency[root]):
        path = _shortest_ear(g, root, a, {root} | (set(g.adjacency[root]) - {a}), {root})
        if path is None:
            continue
        candidate = path + (root,)
        if cycle is None or (len(cycle) - 1) % 2 == 0 and (len(candidate) - 1) % 2 == 1:
            cycle = candidate
        if (len(cycle) - 1) % 2 == 1:
            break
    if cycle is None:
        raise InvariantViolation(f"no cycle through root {root} in a 2-connected graph")

    ears: List[Ear] = [Ear(cycle)]
    placed = set(cycle)

    while len(placed) < g.n:
        fallback: Optional[Tuple[int, ...]] = None
        chosen: Optional[Tuple[int, ...]] = None
        for a in scan(placed):
            for u in scan(g.adjacency[a] - placed):
                path = _shortest_ear(g, a, u, placed, set())
                if path is None:
                    continue
                if (len(path) - 1) % 2 == 1:
                    chosen = path
                    break
                if fallback is None:
                    fallback = path
            if chosen is not None:
                break
        chosen = chosen or fallback
        if chosen is None:
            raise InvariantViolation(f"no ear extends the placed set {sorted(placed)}")
        ears.append(Ear(chosen))
        placed.update(chosen)

    d = assemble(g, root, ears)
    logger.debug(f"Built open decomposition: {d.summary()}")
    return d
