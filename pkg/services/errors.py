# services/errors.py
"""
Exception hierarchy shared by every service module.

Library code raises these; app/main.py maps ``exit_code`` to the process
exit status.
"""
from typing import Optional


class EarToolkitError(Exception):
    """Base class for all expected failures"""
    exit_code = 3


class InfeasibleInput(EarToolkitError):
    """The instance is outside the class the algorithm accepts"""
    exit_code = 1


class NotTwoConnected(InfeasibleInput):
    pass


class MinDegreeTooLow(InfeasibleInput):
    def __init__(self, vertex: int, degree: int, required: int = 3):
        super().__init__(
            f"vertex {vertex} has degree {degree} < {required}; "
            f"lift degree-2 vertices with the gadget command first"
        )
        self.vertex = vertex
        self.degree = degree


class InstanceTooLarge(InfeasibleInput):
    def __init__(self, what: str, size: int, guard: int):
        super().__init__(f"{what}: size {size} exceeds guard {guard}")
        self.size = size
        self.guard = guard


class GenerationFailed(InfeasibleInput):
    pass


class InputError(EarToolkitError):
    exit_code = 2


class ParseError(InputError):
    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line = line


class NotSimple(InputError):
    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line = line


class PreconditionViolated(EarToolkitError):
    """Raised with the name of the failed precondition clause"""


class InvariantViolation(EarToolkitError):
    """An internal guarantee broke mid-pipeline"""


class NotNice(EarToolkitError):
    pass


class GadgetMalformed(EarToolkitError):
    pass


class OutputError(EarToolkitError):
    exit_code = 4

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
