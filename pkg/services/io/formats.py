# services/io/formats.py
"""
Plain edge lists ("n m" header, 0-based "u v" lines, '#' comments) and
DIMACS ("p edge n m", 1-based "e u v", 'c' comments).
"""
import logging
from typing import Iterator, List, Set, Tuple

from app.models import GraphFormat
from services.errors import NotSimple, OutputError, ParseError
from services.graph import Edge, Graph, edge_key

logger = logging.getLogger(__name__)


def _integers(tokens: List[str], line: int) -> List[int]:
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", line)


def _collect(n: int, expected: int, pairs: Iterator[Tuple[int, int, int]]) -> Graph:
    seen: Set[Edge] = set()
    for line, u, v in pairs:
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge {u}-{v} uses a vertex outside the declared {n} vertices", line)
        key = edge_key(u, v)
        if key in seen:
            raise NotSimple(f"duplicate edge {key[0]}-{key[1]}", line)
        seen.add(key)
    if len(seen) != expected:
        raise ParseError(f"header declares {expected} edges, found {len(seen)}")
    return Graph(n, frozenset(seen))


def _parse_edgelist(text: str) -> Graph:
    header = None
    pairs: List[Tuple[int, int, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected two fields, got {len(tokens)}", number)
        a, b = _integers(tokens, number)
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("negative size in header", number)
            header = (a, b)
        else:
            pairs.append((number, a, b))
    if header is None:
        raise ParseError("missing 'n m' header")
    return _collect(header[0], header[1], iter(pairs))


def _parse_dimacs(text: str) -> Graph:
    header = None
    pairs: List[Tuple[int, int, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if header is not None:
                raise ParseError("second problem line", number)
            if len(tokens) != 4 or tokens[1] != "edge":
                raise ParseError("problem line must read 'p edge n m'", number)
            header = tuple(_integers(tokens[2:], number))
        elif kind == "e":
            if header is None:
                raise ParseError("edge line before the problem line", number)
            if len(tokens) != 3:
                raise ParseError("edge line must read 'e u v'", number)
            u, v = _integers(tokens[1:], number)
            pairs.append((number, u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {kind!r}", number)
    if header is None:
        raise ParseError("missing 'p edge n m' line")
    return _collect(header[0], header[1], iter(pairs))


def parse_graph(text: str, fmt: GraphFormat = GraphFormat.EDGELIST) -> Graph:
    g = _parse_dimacs(text) if GraphFormat(fmt) == GraphFormat.DIMACS else _parse_edgelist(text)
    logger.debug(f"Parsed {g} from {GraphFormat(fmt).value}")
    return g


def serialize_graph(g: Graph, fmt: GraphFormat = GraphFormat.EDGELIST) -> str:
    if GraphFormat(fmt) == GraphFormat.DIMACS:
        lines = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.sorted_edges()]
    else:
        lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_graph(path: str, fmt: GraphFormat = GraphFormat.EDGELIST) -> Graph:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}")
    return parse_graph(text, fmt)


def write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as e:
        raise OutputError(path, str(e)) from e


def write_graph(g: Graph, path: str, fmt: GraphFormat = GraphFormat.EDGELIST) -> None:
    write_text(path, serialize_graph(g, fmt))
    logger.info(f"Wrote {g} to {path}")
