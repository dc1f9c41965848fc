# app/commands/oracle.py
import argparse

from app.commands import add_format_argument
from app.models import OracleReport
from config.settings import settings
from services.errors import InvariantViolation
from services.io.formats import read_graph
from services.oracles import find_hamiltonian_cycle, opt_2vcss_bruteforce


def run(args: argparse.Namespace) -> int:
    g = read_graph(args.file, args.format)
    result = opt_2vcss_bruteforce(g, args.guard)
    hamiltonian = result.size == g.n
    if hamiltonian != (find_hamiltonian_cycle(g) is not None):
        raise InvariantViolation("exact search and Hamiltonian backtracking disagree")
    report = OracleReport(
        n=g.n,
        m=g.m,
        opt=result.size,
        witness=[list(e) for e in result.witness],
        hamiltonian=hamiltonian,
    )
    print(report.model_dump_json(indent=2))
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("oracle", help="exact minimum 2-vertex-connected spanning subgraph")
    parser.add_argument("file", help="graph file")
    add_format_argument(parser)
    parser.add_argument("--guard", type=int, default=settings.oracle_edge_guard, help="edge cap")
    parser.set_defaults(handler=run)
