# app/commands/solve.py
import argparse
import logging

from pydantic import ValidationError

from app.commands import add_format_argument
from app.models import DecompositionModel
from services.ears import EarDecomposition
from services.errors import ParseError
from services.io.emitters import OutputFlags, emit_outputs
from services.io.formats import read_graph
from services.pipeline import ApproximationPipeline
from services.trace import StepTrace

logger = logging.getLogger(__name__)


def load_decomposition(path: str) -> EarDecomposition:
    """Ear list from a JSON document {"root": r, "ears": [[...], ...]}"""
    try:
        with open(path, encoding="utf-8") as handle:
            model = DecompositionModel.model_validate_json(handle.read())
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}")
    except ValidationError as e:
        raise ParseError(f"{path} is not a decomposition document: {e.errors()[0]['msg']}")
    try:
        return EarDecomposition.from_lists(model.root, model.ears)
    except ValueError as e:
        raise ParseError(f"{path}: {e}")


def run(args: argparse.Namespace) -> int:
    g = read_graph(args.file, args.format)
    seeded = load_decomposition(args.decomposition) if args.decomposition else None
    trace = StepTrace() if args.trace else None

    pipeline = ApproximationPipeline(
        g,
        with_oracle=args.oracle,
        strict_claims=args.check_claims,
        trace=trace,
        seed=args.seed,
    )
    result = pipeline.run(seeded)
    if args.check_claims:
        for record in result.claims:
            logger.info(f"{'✅' if record.ok else '❌'} {record.name}: {record.exact}")

    flags = OutputFlags(report_path=args.report, dot_path=args.emit_dot, trace_path=args.trace)
    print(emit_outputs(g, result.decomposition, result.h, result.report, flags, trace))
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("solve", help="approximate a minimum 2-vertex-connected spanning subgraph")
    parser.add_argument("file", help="graph file")
    add_format_argument(parser)
    parser.add_argument("--oracle", action="store_true", help="compute OPT by exhaustive search")
    parser.add_argument("--check-claims", action="store_true", help="fail on any violated claim inequality")
    parser.add_argument("--emit-dot", metavar="PATH", help="write the final decomposition as DOT")
    parser.add_argument("--report", metavar="PATH", help="write the JSON analysis report")
    parser.add_argument("--trace", metavar="PATH", help="write the step trace as JSON lines")
    parser.add_argument("--seed", type=int, default=None, help="seed for the initial decomposition")
    parser.add_argument("--decomposition", metavar="FILE", help="start from this ear decomposition (JSON)")
    parser.set_defaults(handler=run)
