# services/pendantizer.py
"""
Rewrites an open ear-decomposition until every short ear is pendant.

Non-pendant 2-ears go first (merged into the first ear hanging off their
internal vertex); then the first non-pendant 3-ear is processed repeatedly,
dispatching the cases in a fixed order: 1, 2, 3a, 3b, 3c. Every step keeps
the edge partition, keeps the decomposition open and never adds an even
ear. On input certified evenmin a step that removes even ears cannot
happen; it is treated as an invariant violation there and as an improvement
otherwise.
"""
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Set, Tuple

from config.settings import settings
from services.ears import (
    Ear,
    EarDecomposition,
    EarLookup,
    is_open,
    join,
    require_valid,
    rotate_closed,
    trivial,
    validate,
)
from services.errors import InvariantViolation, PreconditionViolated
from services.graph import Graph, check_min_degree, edge_key, is_two_vertex_connected
from services.trace import StepTrace

logger = logging.getLogger(__name__)


@dataclass
class RerouteContext:
    """Ear sets accumulated while the cursor t walks back through earlier ears"""
    x_set: FrozenSet[int]
    t: int
    f_old: List[int] = field(default_factory=list)
    f_new1: List[Ear] = field(default_factory=list)
    f_new0: List[Ear] = field(default_factory=list)
    originals: List[Ear] = field(default_factory=list)

    def push(self, index: int, original: Ear, s1: Ear, s0: Ear) -> None:
        self.f_old.append(index)
        self.originals.append(original)
        self.f_new1.append(s1)
        self.f_new0.append(s0)
        self.t = s1.first

    def discard(self) -> None:
        self.f_old.clear()
        self.originals.clear()
        self.f_new1.clear()
        self.f_new0.clear()

    def check(self) -> None:
        if not (len(self.f_old) == len(self.f_new1) == len(self.f_new0)):
            raise InvariantViolation("reroute sets out of step")
        for original, s1, s0 in zip(self.originals, self.f_new1, self.f_new0):
            if sorted(s1.edges() + s0.edges()) != sorted(original.edges()):
                raise InvariantViolation(f"split of {original} does not partition its edges")
            if s0.is_even and not original.is_even:
                raise InvariantViolation(f"even half {s0} split from odd ear {original}")
            if not s1.is_even and (s0.is_even or not original.is_even):
                raise InvariantViolation(f"odd half {s1} of {original} breaks the split parity rule")


def split_ear_at(s: Ear, t: int) -> Tuple[Ear, Ear]:
    """
    Split S at internal vertex t into s1 (endpoint c to t) and s0 (t to
    endpoint d). For an odd S the halves are arranged so that s1 is even.
    """
    if t not in s.internal:
        raise PreconditionViolated(f"vertex {t} is not internal to ear {s}")
    idx = s.vertices.index(t)
    head = s.vertices[:idx + 1]
    tail = s.vertices[idx:]
    if s.is_even or (len(head) - 1) % 2 == 0:
        return Ear(head), Ear(tail)
    return Ear(tail[::-1]), Ear(head[::-1])


def lemma1_rotate(d: EarDecomposition, p: int, q: int) -> EarDecomposition:
    """
    Merge P and Q into P' (placed at Q's position) minus the P-edge wy,
    which becomes a trivial ear at the end.
    """
    if not (0 <= p < d.k and 0 <= q < d.k):
        raise PreconditionViolated(f"ear indices {p}, {q} out of range")
    P, Q = d.ears[p], d.ears[q]
    if P.is_trivial or Q.is_trivial:
        raise PreconditionViolated("P and Q must both be nontrivial")
    if not P.is_open:
        raise PreconditionViolated("P must be an open ear")

    lookup = EarLookup(d)
    if lookup.first_with_endpoint_in(P.internal) != q:
        raise PreconditionViolated(f"ear {q + 1} is not the first nontrivial ear with an endpoint in in(P)")
    inside = [w for w in set(Q.endpoints) if w in P.internal]
    if len(inside) != 1:
        raise PreconditionViolated("exactly one endpoint of Q must lie in in(P)")
    w = inside[0]
    far = Q.other_endpoint(w)

    options = []
    if P.vertices[1] == w:
        options.append((P.last, P.first))
    if P.vertices[-2] == w:
        options.append((P.first, P.last))
    options = [(kept, y) for kept, y in options if kept != far]
    if not options:
        raise PreconditionViolated("w is not next to an endpoint y of P whose removal keeps P' open")
    kept, y = min(options)

    head = P.oriented_from(kept).vertices[:-1]
    merged = join(head, Q.oriented_from(w).vertices)
    return d.rebuilt(replace={q: merged}, delete={p}, append=[trivial(w, y)])


def fix_closed_short_first_ear(g: Graph, d: EarDecomposition) -> EarDecomposition:
    """Merge a triangular first ear with the second ear into a long closed ear"""
    if g.n < 4:
        raise PreconditionViolated("needs at least 4 vertices")
    if validate(g, d) or not is_open(d):
        raise PreconditionViolated("decomposition must be valid and open")

    first = d.ears[0]
    if first.length != 3:
        return d
    second = d.ears[1]
    if second.is_trivial:
        raise InvariantViolation("a triangle can only be followed by a nontrivial ear")

    u, v = second.endpoints
    (w,) = set(first.vertices) - {u, v}
    cycle = join((u, w, v), second.oriented_from(v).vertices)
    merged = rotate_closed(cycle, d.root)
    return d.rebuilt(replace={0: merged}, delete={1}, append=[trivial(u, v)])


def _orient_three_ear(P: Ear, v: int) -> Tuple[int, int, int, int]:
    """(x, v, y, z) with v second"""
    if P.vertices[1] == v:
        return P.vertices
    if P.vertices[2] == v:
        return P.vertices[::-1]
    raise PreconditionViolated(f"vertex {v} is not internal to 3-ear {P}")


def _reroute(
    g: Graph, d: EarDecomposition, p: int, r: int, u: int, v: int
) -> Tuple[EarDecomposition, str, List[int]]:
    lookup = EarLookup(d)
    P = d.ears[p]
    if P.length != 3:
        raise PreconditionViolated(f"ear {p + 1} is not a 3-ear")
    x, _, y, z = _orient_three_ear(P, v)
    x_set = frozenset(lookup.placed_before(p))
    if u in x_set or u == y:
        raise PreconditionViolated(f"u={u} must lie outside X and differ from y")
    if lookup.edge_owner.get(edge_key(u, v)) != r:
        raise PreconditionViolated(f"ear {r + 1} does not contain edge {u}-{v}")

    R = d.ears[r].oriented_from(v)
    if R.vertices[1] != u:
        raise PreconditionViolated(f"edge {u}-{v} is not the first edge of ear {r + 1} from v")
    ctx = RerouteContext(x_set=x_set, t=R.last)
    r_index = r

    while True:
        while ctx.t not in x_set and ctx.t not in (v, y):
            s_idx = lookup.owner[ctx.t]
            S = d.ears[s_idx]
            s1, s0 = split_ear_at(S, ctx.t)
            ctx.push(s_idx, S, s1, s0)
        if ctx.t != v:
            break
        # the walk came back to v: restart from the last split ear
        s_last = ctx.f_old[-1]
        if s_last >= r_index:
            raise InvariantViolation(f"re-chosen ear {s_last + 1} does not precede ear {r_index + 1}")
        R = d.ears[s_last].oriented_from(v)
        r_index = s_last
        ctx.discard()
        ctx.t = R.last
        logger.debug(f"Reroute restarted from ear {r_index + 1} via edge {v}-{R.vertices[1]}")

    ctx.check()
    chain = R.vertices
    for s1 in ctx.f_new1:
        chain = join(chain, s1.reversed().vertices).vertices

    replace = {j: s0 for j, s0 in zip(ctx.f_old, ctx.f_new0)}
    touched = [p, r_index] + list(ctx.f_old)
    t = ctx.t
    if t == y:
        replace[p] = join((x, v), chain, (y, z))
        result = d.rebuilt(replace=replace, delete={r_index}, append=[trivial(v, y)])
        return result, "C3c-iii", touched
    if t == z:
        q = lookup.first_with_endpoint_in((v, y))
        Q = d.ears[q]
        if set(Q.endpoints) != {x, y}:
            raise InvariantViolation(f"ear {q + 1} does not join x={x} and y={y}")
        replace[p] = join(Q.oriented_from(x).vertices, (y, v), chain)
        result = d.rebuilt(replace=replace, delete={r_index, q}, append=[trivial(x, v), trivial(y, z)])
        return result, "C3c-iv", touched + [q]
    replace[p] = join((z, y, v), chain)
    result = d.rebuilt(replace=replace, delete={r_index}, append=[trivial(x, v)])
    return result, "C3c-i", touched


def case3c_reroute(g: Graph, d: EarDecomposition, p: int, r: int, u: int, v: int) -> EarDecomposition:
    """Route a long ear from P through R and the split halves of the ears behind it"""
    result, case, _ = _reroute(g, d, p, r, u, v)
    require_valid(g, result, f"pendantize/{case}")
    return result


class Pendantizer:
    """Owns one run over a working decomposition"""

    def __init__(self, g: Graph, certified: bool = False, trace: Optional[StepTrace] = None):
        self.g = g
        self.certified = certified
        self.trace = trace
        self.iterations = 0

    def _check_preconditions(self, d: EarDecomposition) -> None:
        violations = validate(self.g, d)
        if violations:
            raise PreconditionViolated(f"decomposition invalid: {violations[0]}")
        if not is_open(d):
            raise PreconditionViolated("decomposition is not open")
        if not check_min_degree(self.g, 3):
            raise PreconditionViolated("graph has a vertex of degree below 3")
        if not is_two_vertex_connected(self.g):
            raise PreconditionViolated("graph is not 2-vertex-connected")

    def _after(
        self,
        case: str,
        touched: Sequence[int],
        before: int,
        result: EarDecomposition,
        x_size: Optional[int] = None,
    ) -> EarDecomposition:
        require_valid(self.g, result, f"pendantize/{case}")
        after = result.even_count
        if after > before:
            raise InvariantViolation(f"case {case} raised the even-ear count {before} -> {after}")
        if after < before:
            if self.certified:
                raise InvariantViolation(f"case {case} removed even ears from an evenmin-certified decomposition")
            logger.info(f"🔄 Case {case} reduced even ears {before} -> {after}")
        if self.trace is not None:
            self.trace.record("pendantize", case, touched, after, x_size)
        return result

    def run(self, d: EarDecomposition) -> EarDecomposition:
        self._check_preconditions(d)
        fixed = fix_closed_short_first_ear(self.g, d)
        if fixed is not d:
            d = self._after("first-ear", [0, 1], d.even_count, fixed)

        cap = settings.iteration_factor * (self.g.m + 1) ** 2
        last_x: Optional[Set[int]] = None
        while self.iterations < cap:
            self.iterations += 1
            lookup = EarLookup(d)

            p = lookup.first_nonpendant(2)
            if p is not None:
                z = d.ears[p].internal[0]
                q = lookup.first_with_endpoint_in((z,))
                d = self._after("two-ear", [p, q], d.even_count, lemma1_rotate(d, p, q))
                continue

            p = lookup.first_nonpendant(3)
            if p is None:
                logger.info(f"✅ All short ears pendant after {self.iterations - 1} steps: {d.summary()}")
                return d

            # X may repeat once P leaves its slot, but never shrinks
            x_set = lookup.placed_before(p)
            if last_x is not None and not last_x <= x_set:
                raise InvariantViolation("the partial graph before the first non-pendant 3-ear shrank")
            last_x = x_set
            result, case, touched = self._three_ear_step(d, lookup, p, x_set)
            d = self._after(case, touched, d.even_count, result, len(x_set))

        raise InvariantViolation(f"pendantize did not finish within {cap} steps")

    def _three_ear_step(
        self, d: EarDecomposition, lookup: EarLookup, p: int, x_set: Set[int]
    ) -> Tuple[EarDecomposition, str, List[int]]:
        P = d.ears[p]
        x, v, y, z = P.vertices

        # Case 1: a nontrivial ear joins the two internal vertices
        for q in lookup.ears_with_endpoints(v, y, nontrivial_only=True):
            merged = join((x, v), d.ears[q].oriented_from(v).vertices, (y, z))
            return d.rebuilt(replace={p: merged}, delete={q}, append=[trivial(v, y)]), "C1", [p, q]

        # Case 2: ears x..y and v..z, at least one nontrivial
        for q1 in lookup.ears_with_endpoints(x, y):
            for q2 in lookup.ears_with_endpoints(v, z):
                if d.ears[q1].is_trivial and d.ears[q2].is_trivial:
                    continue
                merged = join(d.ears[q1].oriented_from(x).vertices, (y, v), d.ears[q2].oriented_from(v).vertices)
                result = d.rebuilt(
                    replace={p: merged}, delete={q1, q2}, append=[trivial(x, v), trivial(y, z)]
                )
                return result, "C2", [p, q1, q2]

        # Case 3: orient P so that Q hangs off y
        q = lookup.first_with_endpoint_in((v, y))
        if q is None:
            raise InvariantViolation(f"ear {p + 1} is pendant but was selected as non-pendant")
        Q = d.ears[q]
        if v in Q.endpoints:
            x, v, y, z = z, y, v, x
        w = Q.other_endpoint(y)

        if w != x:
            return lemma1_rotate(d, p, q), "C3a", [p, q]

        candidates = [
            u for u in self.g.neighbors(v)
            if u in x_set and d.ears[lookup.edge_owner[edge_key(u, v)]].is_trivial
        ]
        if candidates:
            return self._case3b(d, lookup, p, q, (x, v, y, z), candidates[0])

        outside = [u for u in self.g.neighbors(v) if u not in x_set and u not in (x, y)]
        if not outside:
            raise InvariantViolation(f"internal vertex {v} of ear {p + 1} has no neighbour outside X")
        u = outside[0]
        r = lookup.edge_owner[edge_key(u, v)]
        return _reroute(self.g, d, p, r, u, v)

    def _case3b(
        self,
        d: EarDecomposition,
        lookup: EarLookup,
        p: int,
        q: int,
        oriented: Tuple[int, int, int, int],
        u: int,
    ) -> Tuple[EarDecomposition, str, List[int]]:
        x, v, y, z = oriented
        Q = d.ears[q]
        uv = lookup.trivial_index(u, v)
        r = lookup.owner.get(u)
        R = d.ears[r] if r is not None else None

        if R is not None and R.length == 2:
            a = min(e for e in R.endpoints if e != z)
            b = R.other_endpoint(a)
            result = d.rebuilt(
                replace={p: Ear((a, u, v, y, z))},
                delete={r, uv},
                append=[trivial(u, b), trivial(x, v)],
            )
            return result, "C3b-i", [p, r, uv]

        if R is not None and R.length == 3:
            if R.vertices[1] == u:
                a, b = R.last, R.first
            else:
                a, b = R.first, R.last
            head = R.segment(a, u)
            if a != x:
                merged = join(head, (u, v, y), Q.oriented_from(y).vertices)
                result = d.rebuilt(
                    replace={p: merged},
                    delete={r, q, uv},
                    append=[trivial(u, b), trivial(x, v), trivial(y, z)],
                )
                return result, "C3b-ii", [p, q, r, uv]
            merged = join(head, (u, v, y, z))
            result = d.rebuilt(replace={p: merged}, delete={r, uv}, append=[trivial(u, b), trivial(x, v)])
            return result, "C3b-ii", [p, r, uv]

        # u is the root or lies on a long ear
        merged = join(Q.oriented_from(x).vertices, (y, v, u))
        result = d.rebuilt(replace={p: merged}, delete={q, uv}, append=[trivial(x, v), trivial(y, z)])
        return result, "C3b-long", [p, q, uv]


def pendantize(
    g: Graph,
    d: EarDecomposition,
    certified: bool = False,
    trace: Optional[StepTrace] = None,
) -> EarDecomposition:
    """Open decomposition in which every short ear is pendant"""
    return Pendantizer(g, certified=certified, trace=trace).run(d)
