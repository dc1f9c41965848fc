from pydantic import BaseModel
from typing import Optional, List, Dict
from enum import Enum


class InstanceKind(str, Enum):
    REGULAR3 = "regular3"
    WHEEL = "wheel"
    HYPERCUBE = "hypercube"
    NAMED = "named"
    GADGET_LIFT = "gadget_lift"


class GraphFormat(str, Enum):
    EDGELIST = "edgelist"
    DIMACS = "dimacs"


class TraceStep(BaseModel):
    iteration: int
    stage: str
    case: str
    ears: List[int]
    even_ears: int
    x_size: Optional[int] = None


class ClaimRecord(BaseModel):
    name: str
    lhs: float
    rhs: float
    exact: str
    ok: bool


class ClaimsSummary(BaseModel):
    c1_ok: bool
    c2_ok: bool
    lemma3_ok: Optional[bool] = None
    per_ear_ok: bool = True
    violations: List[str] = []


class LowerBounds(BaseModel):
    l_phi: int
    l_mu: Optional[int] = None


class DecompositionModel(BaseModel):
    root: int
    ears: List[List[int]]


class AnalysisReport(BaseModel):
    n: int
    m: int
    phi: int
    phi_certified: bool
    pi: int
    pi3: int
    m_size: int
    mu: Optional[int] = None
    v_i: int
    v_d: int
    v_m: int
    l_phi: int
    l_mu: Optional[int] = None
    output_edges: int
    opt: Optional[int] = None
    ratio: Optional[float] = None
    ratio_ok: Optional[bool] = None
    claims: ClaimsSummary
    trace_path: Optional[str] = None
    decomposition: Optional[DecompositionModel] = None
    elapsed_ms: Optional[float] = None


class OracleReport(BaseModel):
    n: int
    m: int
    opt: int
    witness: List[List[int]]
    hamiltonian: bool


class BatchRecord(BaseModel):
    kind: InstanceKind
    seed: int
    params: Dict[str, str]
    report: Optional[AnalysisReport] = None
    error: Optional[str] = None
