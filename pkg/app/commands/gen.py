# app/commands/gen.py
import argparse

from app.commands import parse_params
from app.models import GraphFormat, InstanceKind
from config.settings import settings
from services.io.formats import serialize_graph, write_graph
from services.io.generators import generate_instance


def run(args: argparse.Namespace) -> int:
    g = generate_instance(args.kind, parse_params(args.params), args.seed)
    if args.output:
        write_graph(g, args.output, args.format)
    else:
        print(serialize_graph(g, args.format), end="")
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("gen", help="generate a min-degree-3 2-vertex-connected instance")
    parser.add_argument("kind", choices=[k.value for k in InstanceKind])
    parser.add_argument("params", nargs="*", help="key=value parameters (n=10, k=5, dim=3, name=petersen, base=cycle)")
    parser.add_argument("--seed", type=int, default=settings.default_seed)
    parser.add_argument("--format", choices=[f.value for f in GraphFormat], default=GraphFormat.EDGELIST.value)
    parser.add_argument("--output", metavar="PATH")
    parser.set_defaults(handler=run)
