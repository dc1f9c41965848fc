# services/analysis.py
"""
Eardrum, maximum earmuff, the two lower bounds and the inequality checks
on a finished nice decomposition. All bound arithmetic is exact
(fractions.Fraction).
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from app.models import AnalysisReport, ClaimRecord, ClaimsSummary, LowerBounds
from config.settings import settings
from services.ears import EarDecomposition, EarLookup
from services.errors import InstanceTooLarge, InvariantViolation, NotNice
from services.graph import Graph
from services.nicifier import is_nice

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Eardrum:
    components: Tuple[FrozenSet[int], ...]

    @property
    def v_m(self) -> FrozenSet[int]:
        return frozenset().union(*self.components)

    def __len__(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class Earmuff:
    paths: Tuple[Tuple[int, ...], ...]

    @property
    def mu(self) -> int:
        return len(self.paths)

    def contact_edges(self) -> List[Tuple[int, int]]:
        return [(path[0], path[-1]) for path in self.paths]


@dataclass(frozen=True)
class VertexPartition:
    v_m: FrozenSet[int]
    v_d: FrozenSet[int]
    v_i: FrozenSet[int]


class _Forest:
    """Union-find with undo, for incremental forest tests"""

    def __init__(self):
        self.parent: Dict[int, int] = {}
        self.history: List[int] = []

    def find(self, v: int) -> int:
        while self.parent.get(v, v) != v:
            v = self.parent[v]
        return v

    def link(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.history.append(ra)
        return True

    def undo(self) -> None:
        self.parent.pop(self.history.pop())


def is_forest(edges: Iterable[Tuple[int, int]]) -> bool:
    forest = _Forest()
    return all(forest.link(a, b) for a, b in edges)


def vertex_partition(g: Graph, d: EarDecomposition) -> VertexPartition:
    """V_M (pendant short internals), V_D (pendant long internals), V_I (the rest, root included)"""
    lookup = EarLookup(d)
    v_m, v_d = set(), set()
    for i, ear in enumerate(d.ears):
        if ear.is_trivial or not lookup.is_pendant(i):
            continue
        (v_m if ear.is_short else v_d).update(ear.internal)
    v_i = set(range(g.n)) - v_m - v_d
    return VertexPartition(frozenset(v_m), frozenset(v_d), frozenset(v_i))


def eardrum_of(g: Graph, d: EarDecomposition) -> Eardrum:
    """Components of the graph induced on the internal vertices of pendant short ears"""
    if not is_nice(g, d):
        raise NotNice("the eardrum is only defined for nice decompositions")
    v_m = vertex_partition(g, d).v_m

    seen = set()
    components: List[FrozenSet[int]] = []
    for start in sorted(v_m):
        if start in seen:
            continue
        component = {start}
        frontier = [start]
        while frontier:
            a = frontier.pop()
            for b in g.neighbors(a):
                if b in v_m and b not in component:
                    component.add(b)
                    frontier.append(b)
        if len(component) > 2:
            raise InvariantViolation(f"eardrum component {sorted(component)} has more than two vertices")
        seen |= component
        components.append(frozenset(component))
    return Eardrum(tuple(components))


def _candidate_paths(g: Graph, component: FrozenSet[int], v_i: FrozenSet[int]) -> List[Tuple[int, ...]]:
    if len(component) == 1:
        (z,) = component
        ends = [a for a in g.neighbors(z) if a in v_i]
        return [(a, z, b) for i, a in enumerate(ends) for b in ends[i + 1:]]
    x, y = sorted(component)
    return [
        (a, x, y, b)
        for a in g.neighbors(x) if a in v_i
        for b in g.neighbors(y) if b in v_i and b != a
    ]


def max_earmuff_bruteforce(
    g: Graph, m: Eardrum, v_i: Iterable[int], guard: Optional[int] = None
) -> Earmuff:
    """
    Largest set of paths, at most one per eardrum component, each running
    through exactly one component with both ends in V_I, such that the
    contact edges (path ends) form a forest on V_I.
    """
    guard = settings.earmuff_guard if guard is None else guard
    if len(m) > guard:
        raise InstanceTooLarge("max_earmuff_bruteforce", len(m), guard)

    v_i = frozenset(v_i)
    options = [_candidate_paths(g, component, v_i) for component in m.components]
    ceiling = min(len(m), max(len(v_i) - 1, 0))
    forest = _Forest()
    best: List[Tuple[int, ...]] = []
    chosen: List[Tuple[int, ...]] = []

    def search(k: int) -> None:
        nonlocal best
        if len(best) == ceiling or len(chosen) + (len(options) - k) <= len(best):
            return
        if k == len(options):
            best = list(chosen)
            return
        for path in options[k]:
            if forest.link(path[0], path[-1]):
                chosen.append(path)
                search(k + 1)
                chosen.pop()
                forest.undo()
        search(k + 1)

    search(0)
    logger.debug(f"Earmuff: mu={len(best)} over {len(m)} components")
    return Earmuff(tuple(best))


def lower_bounds(g: Graph, d: EarDecomposition, m: Eardrum, mu: Optional[int]) -> LowerBounds:
    """L_phi = n - 1 + phi and, when mu is known, L_mu = n - 1 + |M| - mu"""
    l_phi = g.n - 1 + d.even_count
    l_mu = g.n - 1 + len(m) - mu if mu is not None else None
    return LowerBounds(l_phi=l_phi, l_mu=l_mu)


def _record(name: str, lhs: Fraction, rhs: Fraction, equality: bool = False) -> ClaimRecord:
    ok = lhs == rhs if equality else lhs <= rhs
    relation = "==" if equality else "<="
    return ClaimRecord(name=name, lhs=float(lhs), rhs=float(rhs), exact=f"{lhs} {relation} {rhs}", ok=ok)


def check_claims(g: Graph, d: EarDecomposition, report: AnalysisReport) -> List[ClaimRecord]:
    """Inequality records for the output size bounds and the per-ear bounds"""
    lookup = EarLookup(d)
    n = g.n
    phi = Fraction(report.phi)
    pi = Fraction(report.pi)
    e_prime = Fraction(len(d.nontrivial_edges()))
    q = Fraction(1, 4)

    records = [
        _record("C1", e_prime, 5 * q * (n - 1) + 3 * q * phi + 2 * q * pi),
        _record(
            "C2",
            e_prime,
            6 * q * n + 2 * q * phi - pi + report.m_size - q * report.v_i - 5 * q,
        ),
    ]

    for i, ear in enumerate(d.ears):
        if ear.is_trivial:
            continue
        edges = Fraction(ear.length)
        inner = Fraction(len(ear.internal))
        label = f"ear {i + 1}"
        if ear.length >= 5:
            records.append(_record(f"{label} length>=5", edges, 5 * q * inner))
        elif ear.length == 3:
            records.append(_record(f"{label} 3-ear", edges, 5 * q * inner + 2 * q))
        else:
            records.append(_record(f"{label} {ear.length}-ear", edges, 5 * q * inner + 3 * q))

        pendant = lookup.is_pendant(i)
        if pendant and ear.is_short:
            records.append(_record(f"{label} E1", edges, 6 * q * inner + 2 * q * ear.phi, equality=True))
        elif pendant:
            records.append(_record(f"{label} E2", edges, 6 * q * inner + 2 * q * ear.phi - 1))
        else:
            records.append(_record(f"{label} E3", edges, 5 * q * inner + 2 * q * ear.phi))

    if report.mu is not None:
        records.append(_record("Lemma3", Fraction(report.mu), Fraction(report.v_i - 1)))
    return records


def summarize_claims(records: List[ClaimRecord]) -> ClaimsSummary:
    by_name = {record.name: record for record in records}
    lemma3 = by_name.get("Lemma3")
    others = [r for r in records if r.name not in ("C1", "C2", "Lemma3")]
    return ClaimsSummary(
        c1_ok=by_name["C1"].ok,
        c2_ok=by_name["C2"].ok,
        lemma3_ok=lemma3.ok if lemma3 is not None else None,
        per_ear_ok=all(r.ok for r in others),
        violations=[f"{r.name}: {r.exact}" for r in records if not r.ok],
    )
