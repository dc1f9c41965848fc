# app/commands/batch.py
import argparse

from app.commands import parse_params
from app.models import InstanceKind
from config.settings import settings
from services.pipeline import run_batch, write_batch


def run(args: argparse.Namespace) -> int:
    records = run_batch(
        args.kind,
        parse_params(args.params),
        count=args.count,
        seed=args.seed,
        with_oracle=args.oracle,
        workers=args.workers,
    )
    if args.output:
        write_batch(records, args.output)
    else:
        for record in records:
            print(record.model_dump_json())
    return 1 if any(r.error for r in records) else 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("batch", help="run the pipeline on a range of generated instances")
    parser.add_argument("kind", choices=[k.value for k in InstanceKind])
    parser.add_argument("params", nargs="*", help="key=value generator parameters")
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--seed", type=int, default=settings.default_seed)
    parser.add_argument("--oracle", action="store_true")
    parser.add_argument("--output", metavar="PATH", help="JSON lines file; stdout when omitted")
    parser.add_argument("--workers", type=int, default=settings.workers)
    parser.set_defaults(handler=run)
