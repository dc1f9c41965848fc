# app/commands
"""
One module per subcommand. Each exposes register(subparsers), which adds
its parser and sets ``handler`` to a function returning the exit status.
"""
import argparse
from typing import Dict, List

from app.models import GraphFormat
from services.errors import ParseError


def add_format_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=[f.value for f in GraphFormat],
        default=GraphFormat.EDGELIST.value,
        help="input graph format",
    )


def parse_params(pairs: List[str]) -> Dict[str, str]:
    """key=value generator parameters"""
    params: Dict[str, str] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ParseError(f"parameter {pair!r} is not of the form key=value")
        params[key] = value
    return params
