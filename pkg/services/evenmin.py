# services/evenmin.py
"""
Exact and heuristic even-ear minimization.

phi_bruteforce searches over placed-vertex sets: once the set S of vertices
covered by the ears placed so far is fixed, the edges still available are
exactly those with an endpoint outside S, so the fewest even ears needed to
finish depends on S alone and is memoized per S. Every 2-connected graph has
an open decomposition attaining phi, so only open ears are tried after the
first cycle.

Parity law: a nontrivial ear with i internal vertices has i + 1 edges, so the
even-ear count of any decomposition is congruent to n + 1 modulo 2 (and the
count needed to finish from S to the number of unplaced vertices). The search
stops as soon as that floor is reached.
"""
import logging
from typing import Dict, Iterator, List, Optional, Tuple

from config.settings import settings
from services.ears import Ear, EarDecomposition, assemble, build_open_decomposition, is_open, validate
from services.errors import InstanceTooLarge, NotTwoConnected, PreconditionViolated
from services.graph import Graph, is_two_vertex_connected

logger = logging.getLogger(__name__)

_UNREACHABLE = 1 << 30


def parity_floor(n: int) -> int:
    """Smallest even-ear count the parity law allows on n vertices"""
    return (n + 1) % 2


class EvenEarSearch:
    """Memoized exhaustive search for phi(G) and a decomposition attaining it"""

    def __init__(self, g: Graph):
        self.g = g
        self.full = (1 << g.n) - 1
        self._memo: Dict[int, Tuple[int, Optional[Tuple[int, ...]]]] = {}
        self._best: Optional[Tuple[int, Tuple[int, ...]]] = None
        self.states = 0

    def _mask(self, vertices) -> int:
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return mask

    def _open_ears(self, placed: int) -> Iterator[Tuple[int, ...]]:
        """All open ears from the placed set through unplaced vertices, in DFS order"""
        g = self.g
        for a in range(g.n):
            if not placed >> a & 1:
                continue
            for u in g.neighbors(a):
                if placed >> u & 1:
                    continue
                path = [a, u]
                on_path = 1 << u
                stack = [iter(g.neighbors(u))]
                while stack:
                    advanced = False
                    for y in stack[-1]:
                        if placed >> y & 1:
                            if y != a:
                                yield tuple(path) + (y,)
                            continue
                        if on_path >> y & 1:
                            continue
                        path.append(y)
                        on_path |= 1 << y
                        stack.append(iter(g.neighbors(y)))
                        advanced = True
                        break
                    if not advanced:
                        stack.pop()
                        on_path &= ~(1 << path.pop())

    def _cycles(self) -> Iterator[Tuple[int, ...]]:
        """Every cycle once per direction, read from its lowest vertex"""
        g = self.g
        for s in range(g.n):
            path = [s]
            on_path = 1 << s
            stack = [iter(g.neighbors(s))]
            while stack:
                advanced = False
                for y in stack[-1]:
                    if y == s and len(path) >= 3:
                        yield tuple(path) + (s,)
                        continue
                    if y <= s or on_path >> y & 1:
                        continue
                    path.append(y)
                    on_path |= 1 << y
                    stack.append(iter(g.neighbors(y)))
                    advanced = True
                    break
                if not advanced:
                    stack.pop()
                    on_path &= ~(1 << path.pop())

    def remaining(self, placed: int) -> int:
        """Fewest even ears needed to cover every vertex outside `placed`"""
        if placed == self.full:
            return 0
        cached = self._memo.get(placed)
        if cached is not None:
            return cached[0]
        self.states += 1

        floor = bin(self.full & ~placed).count("1") % 2
        options: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        for path in self._open_ears(placed):
            key = (self._mask(path[1:-1]), (len(path) - 1) % 2)
            options.setdefault(key, path)

        best, best_ear = _UNREACHABLE, None
        # odd ears first, larger ears first
        ranked = sorted(options.items(), key=lambda item: (1 - item[0][1], -bin(item[0][0]).count("1"), item[1]))
        for (inner, odd), path in ranked:
            cost = 0 if odd else 1
            if cost >= best:
                continue
            total = cost + self.remaining(placed | inner)
            if total < best:
                best, best_ear = total, path
                if best == floor:
                    break

        self._memo[placed] = (best, best_ear)
        return best

    def phi(self) -> int:
        if self._best is not None:
            return self._best[0]
        floor = parity_floor(self.g.n)
        seen = set()
        best: Optional[Tuple[int, Tuple[int, ...]]] = None
        for cycle in self._cycles():
            key = (self._mask(cycle), (len(cycle) - 1) % 2)
            if key in seen:
                continue
            seen.add(key)
            total = (1 - key[1]) + self.remaining(key[0])
            if best is None or total < best[0]:
                best = (total, cycle)
                if total == floor:
                    break
        if best is None or best[0] >= _UNREACHABLE:
            raise NotTwoConnected("graph admits no ear-decomposition")
        self._best = best
        logger.debug(f"phi search: phi={best[0]} after {self.states} states")
        return best[0]

    def decomposition(self) -> EarDecomposition:
        """A decomposition attaining phi, rooted at the lowest vertex of its first cycle"""
        self.phi()
        _, cycle = self._best
        ears: List[Ear] = [Ear(cycle)]
        placed = self._mask(cycle)
        while placed != self.full:
            _, path = self._memo[placed]
            ears.append(Ear(path))
            placed |= self._mask(path[1:-1])
        return assemble(self.g, cycle[0], ears)


def _check_guard(g: Graph, guard: Optional[int]) -> int:
    guard = settings.phi_edge_guard if guard is None else guard
    if g.m > guard:
        raise InstanceTooLarge("phi_bruteforce", g.m, guard)
    return guard


def phi_bruteforce(g: Graph, guard: Optional[int] = None) -> int:
    """Exact phi(G) by exhaustive search; g must have at most `guard` edges"""
    if not is_two_vertex_connected(g):
        raise NotTwoConnected("phi is defined here for 2-vertex-connected graphs")
    _check_guard(g, guard)
    return EvenEarSearch(g).phi()


def minimize_even_ears(
    g: Graph, d: EarDecomposition, guard: Optional[int] = None
) -> Tuple[EarDecomposition, bool]:
    """
    Reduce the even-ear count of an open decomposition.

    Returns:
        (decomposition, certified) where certified means the count provably
        equals phi(G)
    """
    violations = validate(g, d)
    if violations:
        raise PreconditionViolated(f"input decomposition is invalid: {violations[0]}")
    if not is_open(d):
        raise PreconditionViolated("input decomposition is not open")

    current = d.even_count
    floor = parity_floor(g.n)
    if current == floor:
        logger.info(f"✅ Even-ear count {current} already at the parity floor")
        return d, True

    guard = settings.phi_edge_guard if guard is None else guard
    if g.m <= guard:
        search = EvenEarSearch(g)
        phi = search.phi()
        if current == phi:
            logger.info(f"✅ Decomposition already evenmin (phi={phi})")
            return d, True
        best = search.decomposition()
        logger.info(f"🔄 Even ears reduced {current} -> {phi} by exhaustive search")
        return best, True

    logger.warning(f"⚠️ m={g.m} above phi guard {guard}; using parity-aware greedy")
    candidate = build_open_decomposition(g)
    best = candidate if candidate.even_count < current else d
    certified = best.even_count == floor
    return best, certified
