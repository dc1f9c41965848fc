# app/commands/gadget.py
import argparse
import logging

from app.commands import add_format_argument
from services.gadget import degree2_to_k4
from services.io.formats import read_graph, serialize_graph, write_graph

logger = logging.getLogger(__name__)


def run(args: argparse.Namespace) -> int:
    g = read_graph(args.file, args.format)
    lifted, gmap = degree2_to_k4(g)
    logger.info(f"{gmap.n_g} gadgets; lifted graph has {lifted.n} vertices and {lifted.m} edges")
    if args.output:
        write_graph(lifted, args.output, args.format)
    else:
        print(serialize_graph(lifted, args.format), end="")
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("gadget", help="replace degree-2 vertices by K4 gadgets")
    parser.add_argument("file", help="graph file")
    add_format_argument(parser)
    parser.add_argument("--output", metavar="PATH")
    parser.set_defaults(handler=run)
