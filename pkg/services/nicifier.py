# services/nicifier.py
"""
Removes edges joining internal vertices of two distinct short ears.

Each step replaces the offending short ears by one longer ear S and turns
the unused edges into trivial ears, so the number of short ears drops by
at least one per step.
"""
import logging
from typing import List, Optional, Sequence, Tuple

from config.settings import settings
from services.ears import Ear, EarDecomposition, EarLookup, is_open, require_valid, trivial, validate
from services.errors import InvariantViolation, PreconditionViolated
from services.graph import Graph, check_min_degree
from services.trace import StepTrace

logger = logging.getLogger(__name__)

Violation = Tuple[int, int, int, int]


def _first_violation(
    g: Graph, d: EarDecomposition, lookup: EarLookup, lengths: Sequence[int] = (2, 3)
) -> Optional[Violation]:
    """(i, a, j, b): a internal to short ear i, b internal to short ear j, ab an edge, i < j"""
    for i, ear in enumerate(d.ears):
        if ear.length not in lengths:
            continue
        for a in ear.internal:
            for b in g.neighbors(a):
                j = lookup.owner.get(b)
                if j is not None and j != i and d.ears[j].length in lengths:
                    return i, a, j, b
    return None


def _short_ears_pendant(d: EarDecomposition, lookup: EarLookup) -> bool:
    return all(lookup.is_pendant(i) for i, ear in enumerate(d.ears) if ear.is_short)


def is_nice(g: Graph, d: EarDecomposition) -> bool:
    """Open, every short ear pendant, no edge between internals of two short ears"""
    if not is_open(d):
        return False
    lookup = EarLookup(d)
    return _short_ears_pendant(d, lookup) and _first_violation(g, d, lookup) is None


def _oriented_with(ear: Ear, vertex: int, position: int) -> Tuple[int, ...]:
    """Vertex sequence of ear read so that `vertex` sits at `position`"""
    if ear.vertices[position] == vertex:
        return ear.vertices
    flipped = ear.vertices[::-1]
    if flipped[position] == vertex:
        return flipped
    raise InvariantViolation(f"vertex {vertex} cannot sit at position {position} of ear {ear}")


class Nicifier:
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
        if not _short_ears_pendant(d, EarLookup(d)):
            raise PreconditionViolated("some short ear is not pendant; run pendantize first")
        if not check_min_degree(self.g, 3):
            raise PreconditionViolated("graph has a vertex of degree below 3")

    def _after(self, case: str, touched: List[int], before: int, result: EarDecomposition) -> EarDecomposition:
        require_valid(self.g, result, f"nicify/{case}")
        if not _short_ears_pendant(result, EarLookup(result)):
            raise InvariantViolation(f"nicify/{case}: left a non-pendant short ear")
        after = result.even_count
        if after > before:
            raise InvariantViolation(f"nicify/{case}: even ears rose {before} -> {after}")
        if after < before:
            if self.certified:
                raise InvariantViolation(f"nicify/{case}: removed even ears from an evenmin-certified decomposition")
            logger.info(f"🔄 Case {case} reduced even ears {before} -> {after}")
        if self.trace is not None:
            self.trace.record("nicify", case, touched, after)
        return result

    def run(self, d: EarDecomposition) -> EarDecomposition:
        self._check_preconditions(d)
        cap = settings.iteration_factor * (self.g.m + 1) ** 2

        while self.iterations < cap:
            self.iterations += 1
            lookup = EarLookup(d)

            found = _first_violation(self.g, d, lookup, lengths=(2,))
            if found is not None:
                result, case, touched = self._merge_two_ears(d, lookup, found)
            else:
                found = _first_violation(self.g, d, lookup)
                if found is None:
                    logger.info(f"✅ Decomposition is nice after {self.iterations - 1} steps")
                    return d
                i, _, j, _ = found
                if d.ears[i].length == 2 or d.ears[j].length == 2:
                    result, case, touched = self._two_with_three(d, lookup, found)
                else:
                    result, case, touched = self._three_with_three(d, lookup, found)

            d = self._after(case, touched, d.even_count, result)

        raise InvariantViolation(f"nicify did not finish within {cap} steps")

    def _merge_two_ears(self, d: EarDecomposition, lookup: EarLookup, found: Violation):
        i, z1, j, z2 = found
        first, second = d.ears[i], d.ears[j]
        e1, e2 = min((a, b) for a in first.endpoints for b in second.endpoints if a != b)
        link = lookup.trivial_index(z1, z2)
        result = d.rebuilt(
            replace={i: Ear((e1, z1, z2, e2))},
            delete={j, link},
            append=[trivial(z1, first.other_endpoint(e1)), trivial(z2, second.other_endpoint(e2))],
        )
        return result, "N0", [i, j, link]

    def _two_with_three(self, d: EarDecomposition, lookup: EarLookup, found: Violation):
        i, a_vertex, j, b_vertex = found
        if d.ears[i].length == 2:
            two, zz, three, xx = i, a_vertex, j, b_vertex
        else:
            two, zz, three, xx = j, b_vertex, i, a_vertex
        a, _, b = d.ears[two].vertices
        c, _, yy, dd = _oriented_with(d.ears[three], xx, 1)
        link = lookup.trivial_index(zz, xx)

        if a != dd:
            merged, leftovers = Ear((a, zz, xx, yy, dd)), [trivial(zz, b), trivial(c, xx)]
        else:
            merged, leftovers = Ear((b, zz, xx, yy, dd)), [trivial(a, zz), trivial(c, xx)]
        result = d.rebuilt(replace={two: merged}, delete={three, link}, append=leftovers)
        return result, "N1", [two, three, link]

    def _three_with_three(self, d: EarDecomposition, lookup: EarLookup, found: Violation):
        i, v_vertex, j, y_vertex = found
        pa, v, w, pb = _oriented_with(d.ears[i], v_vertex, 1)
        c, x, y, dd = _oriented_with(d.ears[j], y_vertex, 2)
        g = self.g
        vy = lookup.trivial_index(v, y)

        if pb != c:
            merged = Ear((pb, w, v, y, x, c))
            result = d.rebuilt(replace={i: merged}, delete={j, vy}, append=[trivial(pa, v), trivial(y, dd)])
            return result, "N2a", [i, j, vy]

        if g.has_edge(x, v):
            vx = lookup.trivial_index(v, x)
            merged = Ear((pb, w, v, x, y, dd))
            result = d.rebuilt(replace={i: merged}, delete={j, vx}, append=[trivial(pa, v), trivial(c, x)])
            return result, "N2bI", [i, j, vx]
        if g.has_edge(x, w):
            xw = lookup.trivial_index(x, w)
            merged = Ear((pa, v, y, x, w, pb))
            result = d.rebuilt(
                replace={i: merged},
                delete={j, vy, xw},
                append=[trivial(v, w), trivial(c, x), trivial(y, dd)],
            )
            return result, "N2bI", [i, j, vy, xw]

        z = min(u for u in g.neighbors(x) if u not in (c, y))
        xz = lookup.trivial_index(x, z)
        r = lookup.owner.get(z)
        R = d.ears[r] if r is not None else None

        if R is None or R.is_long:
            merged = Ear((pb, w, v, y, x, z))
            result = d.rebuilt(
                replace={i: merged},
                delete={j, vy, xz},
                append=[trivial(pa, v), trivial(c, x), trivial(y, dd)],
            )
            return result, "N2bII-long", [i, j, vy, xz]

        if R.length == 2:
            end = min(e for e in R.endpoints if e != pb)
            merged = Ear((end, z, x, y, v, w, pb))
            if not merged.is_even:
                raise InvariantViolation("a 2-ear detour must produce an even ear")
            result = d.rebuilt(
                replace={i: merged},
                delete={j, r, vy, xz},
                append=[trivial(z, R.other_endpoint(end)), trivial(pa, v), trivial(c, x), trivial(y, dd)],
            )
            return result, "N2bII-2", [i, j, r, vy, xz]

        g1, i1, _, h1 = _oriented_with(R, z, 2)
        if g1 != pb:
            merged = Ear((pb, w, v, y, x, z, i1, g1))
            result = d.rebuilt(
                replace={i: merged},
                delete={j, r, vy, xz},
                append=[trivial(z, h1), trivial(pa, v), trivial(c, x), trivial(y, dd)],
            )
            return result, "N2bII-3-distinct", [i, j, r, vy, xz]

        merged = Ear((g1, i1, z, x, y, dd))
        result = d.rebuilt(replace={j: merged}, delete={r, xz}, append=[trivial(z, h1), trivial(c, x)])
        return result, "N2bII-3-coincide", [j, r, xz]


def nicify(
    g: Graph,
    d: EarDecomposition,
    certified: bool = False,
    trace: Optional[StepTrace] = None,
) -> EarDecomposition:
    """Open nice decomposition with no more even ears than d"""
    return Nicifier(g, certified=certified, trace=trace).run(d)
