# app/main.py
"""
Command-line entry point: python -m app.main <command> ...

Exit codes: 0 success, 1 infeasible input, 2 parse error, 3 internal
invariant violation, 4 output could not be written.
"""
import argparse
import logging
import sys
from typing import List, Optional

from app.commands import batch, gadget, gen, oracle, solve
from config.settings import settings
from services.errors import EarToolkitError

logger = logging.getLogger(__name__)

COMMANDS = [solve, gen, gadget, oracle, batch]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ear-2vcss",
        description="Ear-decomposition approximation of minimum 2-vertex-connected spanning subgraphs",
    )
    parser.add_argument(
        "--log-level",
        default=settings.log_level,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="overrides LOG_LEVEL",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    # Configure logging
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    logging.getLogger().setLevel(getattr(logging, args.log_level))

    try:
        return args.handler(args)
    except EarToolkitError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return e.exit_code
    except Exception as e:
        logger.error(f"❌ Unexpected failure in {args.command}: {e}", exc_info=True)
        return 3


if __name__ == "__main__":
    sys.exit(main())
