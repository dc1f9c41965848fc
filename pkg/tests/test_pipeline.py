# tests/test_pipeline.py
import json
from fractions import Fraction
from pathlib import Path

import pytest

from app.models import InstanceKind
from config.settings import settings
from conftest import CORPUS_EDGE_CAP, connected_after_removal, cycle, k4_seeded
from services.errors import MinDegreeTooLow, NotTwoConnected, OutputError
from services.evenmin import phi_bruteforce
from services.graph import Graph, spanning_subgraph
from services.io.emitters import OutputFlags, emit_outputs, render_dot
from services.io.generators import named_graph
from services.pipeline import ApproximationPipeline, approximate_2vcss, run_batch
from services.trace import StepTrace

GOLDEN = Path(__file__).parent / "golden"


class TestWorkedExample:
    def test_k4_seeded_run(self, k4):
        trace = StepTrace()
        h, report = approximate_2vcss(k4, seed_decomposition=k4_seeded(), with_oracle=True, trace=trace)
        assert h == [(0, 2), (0, 3), (1, 2), (1, 3)]
        assert report.output_edges == 4
        assert report.opt == 4 and report.ratio == 1.0 and report.ratio_ok
        assert report.phi == 1 and report.phi_certified
        assert report.pi == 0 and report.m_size == 0 and report.mu == 0
        assert report.l_phi == 4 and report.l_mu == 3
        assert report.decomposition.ears == [[0, 2, 1, 3, 0], [2, 3], [0, 1]]
        assert report.claims.c1_ok and report.claims.c2_ok and report.claims.lemma3_ok

    def test_golden_trace(self, k4):
        trace = StepTrace()
        approximate_2vcss(k4, seed_decomposition=k4_seeded(), trace=trace)
        assert trace.to_jsonl() == (GOLDEN / "k4_trace.jsonl").read_text()

    def test_deterministic_reports(self, petersen):
        first = approximate_2vcss(petersen, seed=5)[1].model_dump(exclude={"elapsed_ms"})
        second = approximate_2vcss(petersen, seed=5)[1].model_dump(exclude={"elapsed_ms"})
        assert first == second


class TestGuarantee:
    def test_k33(self, k33):
        h, report = approximate_2vcss(k33, with_oracle=True)
        assert report.opt == 6
        assert len(h) <= 8

    def test_petersen(self, petersen):
        h, report = approximate_2vcss(petersen, with_oracle=True)
        assert report.opt == 11
        assert Fraction(len(h), report.opt) <= Fraction(17, 12)
        assert connected_after_removal(spanning_subgraph(petersen, h))

    def test_not_two_connected(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
        with pytest.raises(NotTwoConnected):
            approximate_2vcss(g)

    def test_degree_two_vertex(self):
        with pytest.raises(MinDegreeTooLow):
            approximate_2vcss(cycle(5))

    def test_oracle_skipped_above_guard(self):
        g = named_graph("cube")
        result = ApproximationPipeline(g, with_oracle=True, oracle_guard=5).run()
        assert result.report.opt is None and result.report.ratio is None


class TestOutputs:
    def test_emit_all(self, k4, tmp_path):
        trace = StepTrace()
        result = ApproximationPipeline(k4, trace=trace).run(k4_seeded())
        flags = OutputFlags(
            report_path=str(tmp_path / "out.json"),
            dot_path=str(tmp_path / "out.dot"),
            trace_path=str(tmp_path / "trace.jsonl"),
        )
        line = emit_outputs(k4, result.decomposition, result.h, result.report, flags, trace)
        assert "output_edges=4" in line and "\n" not in line
        report = json.loads((tmp_path / "out.json").read_text())
        assert report["output_edges"] == 4
        assert report["trace_path"] == flags.trace_path
        assert {"c1_ok", "c2_ok", "lemma3_ok"} <= set(report["claims"])
        assert (tmp_path / "trace.jsonl").read_text() == (GOLDEN / "k4_trace.jsonl").read_text()
        assert (tmp_path / "out.dot").read_text().startswith("graph ears {")

    def test_dot_styles(self, k4):
        result = ApproximationPipeline(k4).run(k4_seeded())
        dot = render_dot(k4, result.decomposition)
        assert dot.count("style=dashed") == 2
        assert dot.count("--") == k4.m
        assert dot.rstrip().endswith("}")

    def test_unwritable_report(self, k4, tmp_path):
        result = ApproximationPipeline(k4).run()
        flags = OutputFlags(report_path=str(tmp_path / "missing" / "out.json"))
        with pytest.raises(OutputError):
            emit_outputs(k4, result.decomposition, result.h, result.report, flags)


class TestBatch:
    def test_records_in_seed_order(self):
        records = run_batch(InstanceKind.REGULAR3, {"n": "8"}, count=4, seed=10, workers=2)
        assert [r.seed for r in records] == [10, 11, 12, 13]
        assert all(r.error is None and r.report.output_edges >= 8 for r in records)

    def test_failures_are_recorded(self):
        records = run_batch(InstanceKind.REGULAR3, {"n": "7"}, count=2)
        assert all(r.report is None and r.error.startswith("GenerationFailed") for r in records)


@pytest.mark.slow
class TestDeskCorpus:
    @pytest.fixture(autouse=True)
    def phi_guard_covers_corpus(self, monkeypatch):
        monkeypatch.setattr(settings, "phi_edge_guard", CORPUS_EDGE_CAP)

    def test_corpus_size(self, corpus):
        assert len(corpus) >= 300
        assert all(g.m <= CORPUS_EDGE_CAP for _, g in corpus)

    def test_acceptance(self, corpus):
        for label, g in corpus:
            h, report = approximate_2vcss(g, with_oracle=True)
            assert connected_after_removal(spanning_subgraph(g, h)), label
            assert report.v_i + report.v_d + report.v_m == g.n, label
            assert report.claims.violations == [], label
            if report.mu is not None:
                assert report.claims.lemma3_ok, label
            assert max(report.l_phi, report.l_mu or 0) <= report.opt, label
            assert report.phi_certified, label
            assert 12 * len(h) <= 17 * report.opt, label
            assert report.phi == phi_bruteforce(g), label
