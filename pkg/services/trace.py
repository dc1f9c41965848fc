# services/trace.py
import logging
from typing import List, Optional, Sequence

from app.models import TraceStep
from services.errors import OutputError

logger = logging.getLogger(__name__)


class StepTrace:
    """Collects one record per transformation step; written as JSON lines"""

    def __init__(self):
        self.steps: List[TraceStep] = []

    def record(
        self,
        stage: str,
        case: str,
        ears: Sequence[int],
        even_ears: int,
        x_size: Optional[int] = None,
    ) -> TraceStep:
        step = TraceStep(
            iteration=len(self.steps) + 1,
            stage=stage,
            case=case,
            ears=sorted(i + 1 for i in ears),
            even_ears=even_ears,
            x_size=x_size,
        )
        self.steps.append(step)
        logger.debug(f"[{stage}] step {step.iteration}: case {case} on ears {step.ears} (even={even_ears})")
        return step

    def cases(self) -> List[str]:
        return [step.case for step in self.steps]

    def to_jsonl(self) -> str:
        return "".join(step.model_dump_json(exclude_none=True) + "\n" for step in self.steps)

    def write(self, path: str) -> None:
        try:
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(self.to_jsonl())
        except OSError as e:
            raise OutputError(path, str(e)) from e
        logger.info(f"Trace with {len(self.steps)} steps written to {path}")
