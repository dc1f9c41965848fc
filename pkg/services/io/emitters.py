# services/io/emitters.py
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional

from app.models import AnalysisReport
from services.ears import EarDecomposition, EarLookup
from services.errors import InvariantViolation
from services.graph import Edge, Graph
from services.io.formats import write_text
from services.trace import StepTrace

logger = logging.getLogger(__name__)

PALETTE = [
    "red", "blue", "darkgreen", "orange", "purple", "brown",
    "deeppink", "teal", "goldenrod", "navy", "olivedrab", "crimson",
]


@dataclass
class OutputFlags:
    report_path: Optional[str] = None
    dot_path: Optional[str] = None
    trace_path: Optional[str] = None


def summary_line(report: AnalysisReport) -> str:
    opt = f" opt={report.opt} ratio={report.ratio:.4f}" if report.opt is not None else ""
    return (
        f"n={report.n} m={report.m} output_edges={report.output_edges} phi={report.phi} "
        f"pi={report.pi} l_phi={report.l_phi}{opt}"
    )


def write_report(report: AnalysisReport, path: str) -> None:
    write_text(path, report.model_dump_json(indent=2) + "\n")
    logger.info(f"Report written to {path}")


def render_dot(g: Graph, d: EarDecomposition, name: str = "ears") -> str:
    """Undirected DOT; trivial ears dashed, nontrivial ears coloured by index, pendant short ears marked"""
    lookup = EarLookup(d)
    lines: List[str] = [f"graph {name} {{", "  node [shape=circle];"]
    lines.extend(f"  {v};" for v in range(g.n))
    for i, ear in enumerate(d.ears):
        if ear.is_trivial:
            u, v = ear.vertices
            lines.append(f'  {u} -- {v} [style=dashed, color=gray, label="P{i + 1}"];')
            continue
        color = PALETTE[i % len(PALETTE)]
        label = f"P{i + 1}"
        if ear.is_short and lookup.is_pendant(i):
            label += " pendant"
        for u, v in ear.edges():
            lines.append(f'  {u} -- {v} [color={color}, penwidth=2, label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(g: Graph, d: EarDecomposition, path: str) -> None:
    write_text(path, render_dot(g, d))
    logger.info(f"DOT written to {path}")


def emit_outputs(
    g: Graph,
    d: EarDecomposition,
    h: Iterable[Edge],
    report: AnalysisReport,
    flags: OutputFlags,
    trace: Optional[StepTrace] = None,
) -> str:
    """Write whichever outputs the flags ask for; returns the summary line"""
    if set(h) != d.nontrivial_edges():
        raise InvariantViolation("output subgraph does not match the nontrivial ears of the decomposition")

    if flags.trace_path and trace is not None:
        trace.write(flags.trace_path)
        report = report.model_copy(update={"trace_path": flags.trace_path})
    if flags.dot_path:
        write_dot(g, d, flags.dot_path)
    if flags.report_path:
        write_report(report, flags.report_path)
    return summary_line(report)
