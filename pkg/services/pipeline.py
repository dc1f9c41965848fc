# services/pipeline.py
"""
End-to-end driver: decomposition, even-ear minimization, pendantization,
nicification, output subgraph and analysis report. Also runs batches of
generated instances on a thread pool.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from app.models import (
    AnalysisReport,
    BatchRecord,
    ClaimRecord,
    ClaimsSummary,
    DecompositionModel,
    InstanceKind,
)
from config.settings import settings
from services.analysis import (
    eardrum_of,
    is_forest,
    lower_bounds,
    max_earmuff_bruteforce,
    check_claims,
    summarize_claims,
    vertex_partition,
)
from services.ears import EarDecomposition, build_open_decomposition, validate
from services.errors import (
    EarToolkitError,
    InvariantViolation,
    MinDegreeTooLow,
    NotTwoConnected,
    PreconditionViolated,
)
from services.evenmin import minimize_even_ears
from services.graph import Edge, Graph, is_two_vertex_connected, spanning_subgraph
from services.io.formats import write_text
from services.io.generators import generate_instance
from services.nicifier import nicify
from services.oracles import opt_2vcss_bruteforce
from services.pendantizer import pendantize
from services.trace import StepTrace

logger = logging.getLogger(__name__)


@dataclass
class PipelineResult:
    h: List[Edge]
    report: AnalysisReport
    decomposition: EarDecomposition
    claims: List[ClaimRecord]


class ApproximationPipeline:
    """One run of the 17/12 pipeline over a single instance"""

    def __init__(
        self,
        g: Graph,
        with_oracle: bool = False,
        strict_claims: bool = False,
        trace: Optional[StepTrace] = None,
        seed: Optional[int] = None,
        oracle_guard: Optional[int] = None,
    ):
        self.g = g
        self.with_oracle = with_oracle
        self.strict_claims = strict_claims
        self.trace = trace
        self.seed = seed
        self.oracle_guard = settings.oracle_edge_guard if oracle_guard is None else oracle_guard

    def _check_input(self) -> None:
        if not is_two_vertex_connected(self.g):
            raise NotTwoConnected(f"{self.g} is not 2-vertex-connected")
        for v in range(self.g.n):
            if self.g.degree(v) < 3:
                raise MinDegreeTooLow(v, self.g.degree(v))

    def _initial(self, seed_decomposition: Optional[EarDecomposition]) -> EarDecomposition:
        if seed_decomposition is None:
            return build_open_decomposition(self.g, self.seed)
        violations = validate(self.g, seed_decomposition)
        if violations:
            raise PreconditionViolated(f"seed decomposition invalid: {violations[0]}")
        return seed_decomposition

    def run(self, seed_decomposition: Optional[EarDecomposition] = None) -> PipelineResult:
        started = time.perf_counter()
        g = self.g
        self._check_input()
        logger.info(f"🔄 Solving {g}")

        d, certified = minimize_even_ears(g, self._initial(seed_decomposition))
        phi = d.even_count
        if not certified:
            logger.warning(f"⚠️ Even-ear count {phi} is not certified minimal; the 17/12 bound is not guaranteed")

        d = pendantize(g, d, certified=certified, trace=self.trace)
        d = nicify(g, d, certified=certified, trace=self.trace)
        if certified and d.even_count != phi:
            raise InvariantViolation(f"even-ear count drifted {phi} -> {d.even_count} on certified input")

        h = sorted(d.nontrivial_edges())
        if not is_two_vertex_connected(spanning_subgraph(g, h)):
            raise InvariantViolation("nontrivial ears do not form a 2-vertex-connected spanning subgraph")

        partition = vertex_partition(g, d)
        drum = eardrum_of(g, d)
        mu = None
        if len(drum) <= settings.earmuff_guard:
            muff = max_earmuff_bruteforce(g, drum, partition.v_i)
            if not is_forest(muff.contact_edges()):
                raise InvariantViolation("earmuff contact edges contain a cycle")
            mu = muff.mu
        else:
            logger.warning(f"⚠️ Eardrum has {len(drum)} components; earmuff search skipped")
        bounds = lower_bounds(g, d, drum, mu)

        report = AnalysisReport(
            n=g.n,
            m=g.m,
            phi=d.even_count,
            phi_certified=certified,
            pi=d.pi,
            pi3=d.pi3,
            m_size=len(drum),
            mu=mu,
            v_i=len(partition.v_i),
            v_d=len(partition.v_d),
            v_m=len(partition.v_m),
            l_phi=bounds.l_phi,
            l_mu=bounds.l_mu,
            output_edges=len(h),
            claims=ClaimsSummary(c1_ok=True, c2_ok=True),
            decomposition=DecompositionModel(root=d.root, ears=d.to_lists()),
        )
        records = check_claims(g, d, report)
        report.claims = summarize_claims(records)
        for violation in report.claims.violations:
            logger.error(f"❌ Claim violated: {violation}")
        if self.strict_claims and report.claims.violations:
            raise InvariantViolation(f"{len(report.claims.violations)} claim inequalities violated")

        if self.with_oracle:
            self._attach_oracle(report, certified)

        report.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
        logger.info(f"✅ {g}: {len(h)} edges, phi={report.phi}, pi={report.pi}, |M|={report.m_size}")
        return PipelineResult(h=h, report=report, decomposition=d, claims=records)

    def _attach_oracle(self, report: AnalysisReport, certified: bool) -> None:
        if self.g.m > self.oracle_guard:
            logger.warning(f"⚠️ m={self.g.m} above oracle guard {self.oracle_guard}; OPT not computed")
            return
        opt = opt_2vcss_bruteforce(self.g, self.oracle_guard).size
        report.opt = opt
        report.ratio = report.output_edges / opt
        report.ratio_ok = 12 * report.output_edges <= 17 * opt
        logger.info(f"📊 OPT={opt}, ratio={report.ratio:.4f}")
        if certified and not report.ratio_ok:
            raise InvariantViolation(f"ratio {report.output_edges}/{opt} exceeds 17/12 on certified input")


def approximate_2vcss(
    g: Graph,
    seed_decomposition: Optional[EarDecomposition] = None,
    with_oracle: bool = False,
    trace: Optional[StepTrace] = None,
    seed: Optional[int] = None,
    strict_claims: bool = False,
) -> Tuple[List[Edge], AnalysisReport]:
    """2-vertex-connected spanning subgraph of g and its analysis report"""
    pipeline = ApproximationPipeline(
        g, with_oracle=with_oracle, strict_claims=strict_claims, trace=trace, seed=seed
    )
    result = pipeline.run(seed_decomposition)
    return result.h, result.report


def _batch_job(
    kind: InstanceKind, params: Dict[str, str], seed: int, with_oracle: bool
) -> BatchRecord:
    record = BatchRecord(kind=kind, seed=seed, params=params)
    try:
        g = generate_instance(kind, params, seed)
        _, record.report = approximate_2vcss(g, with_oracle=with_oracle, seed=seed)
    except EarToolkitError as e:
        logger.error(f"❌ {kind.value} seed={seed}: {e}")
        record.error = f"{type(e).__name__}: {e}"
    return record


def run_batch(
    kind: InstanceKind,
    params: Optional[Mapping[str, str]] = None,
    count: int = 1,
    seed: Optional[int] = None,
    with_oracle: bool = False,
    workers: Optional[int] = None,
) -> List[BatchRecord]:
    """Pipeline over `count` generated instances with seeds seed, seed+1, ...; records in seed order"""
    kind = InstanceKind(kind)
    params = {key: str(value) for key, value in (params or {}).items()}
    seed = settings.default_seed if seed is None else seed
    workers = settings.workers if workers is None else workers

    seeds = [seed + i for i in range(count)]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        records = list(executor.map(lambda s: _batch_job(kind, params, s, with_oracle), seeds))

    failed = sum(1 for r in records if r.error is not None)
    logger.info(f"📊 Batch {kind.value}: {count - failed}/{count} succeeded")
    return records


def write_batch(records: List[BatchRecord], path: str) -> None:
    write_text(path, "".join(r.model_dump_json() + "\n" for r in records))
