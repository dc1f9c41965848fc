# tests/test_cli.py
import json

import pytest

from app.main import main
from services.io.formats import serialize_graph
from services.io.generators import named_graph
from conftest import cycle


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.txt"
    path.write_text(serialize_graph(named_graph("k4")))
    return str(path)


class TestSolve:
    def test_summary_line_only(self, k4_file, capsys):
        assert main(["solve", k4_file]) == 0
        out = capsys.readouterr().out
        assert out.count("\n") == 1
        assert "output_edges=4" in out

    def test_seeded_decomposition_and_outputs(self, k4_file, tmp_path, capsys):
        seed = tmp_path / "d.json"
        seed.write_text(json.dumps({"root": 0, "ears": [[0, 1, 2, 0], [0, 3, 1], [2, 3]]}))
        report = tmp_path / "report.json"
        trace = tmp_path / "trace.jsonl"
        dot = tmp_path / "out.dot"
        code = main([
            "solve", k4_file, "--oracle", "--check-claims", "--decomposition", str(seed),
            "--report", str(report), "--trace", str(trace), "--emit-dot", str(dot),
        ])
        assert code == 0
        document = json.loads(report.read_text())
        assert document["output_edges"] == 4 and document["opt"] == 4 and document["ratio"] == 1.0
        assert document["trace_path"] == str(trace)
        assert json.loads(trace.read_text().splitlines()[0])["case"] == "first-ear"
        assert dot.exists()

    def test_dimacs_input(self, tmp_path, capsys):
        path = tmp_path / "petersen.dimacs"
        path.write_text(serialize_graph(named_graph("petersen"), "dimacs"))
        assert main(["solve", str(path), "--format", "dimacs", "--seed", "3"]) == 0

    def test_infeasible_exit_code(self, tmp_path):
        path = tmp_path / "c5.txt"
        path.write_text(serialize_graph(cycle(5)))
        assert main(["solve", str(path)]) == 1

    def test_parse_error_exit_code(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("2 1\n0 0\n")
        assert main(["solve", str(path)]) == 2

    def test_bad_decomposition_exit_code(self, k4_file, tmp_path):
        seed = tmp_path / "d.json"
        seed.write_text('{"root": 0}')
        assert main(["solve", k4_file, "--decomposition", str(seed)]) == 2

    def test_invalid_seed_decomposition_is_an_invariant_failure(self, k4_file, tmp_path):
        seed = tmp_path / "d.json"
        seed.write_text(json.dumps({"root": 0, "ears": [[0, 1, 2, 0]]}))
        assert main(["solve", k4_file, "--decomposition", str(seed)]) == 3

    def test_output_error_exit_code(self, k4_file, tmp_path):
        assert main(["solve", k4_file, "--report", str(tmp_path / "no" / "r.json")]) == 4


class TestOtherCommands:
    def test_gen(self, capsys):
        assert main(["gen", "wheel", "k=5"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "6 10"

    def test_gen_bad_param(self):
        assert main(["gen", "wheel", "k"]) == 2

    def test_gadget(self, tmp_path, capsys):
        path = tmp_path / "c4.txt"
        path.write_text(serialize_graph(cycle(4)))
        assert main(["gadget", str(path)]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "16 28"

    def test_oracle(self, k4_file, capsys):
        assert main(["oracle", k4_file]) == 0
        document = json.loads(capsys.readouterr().out)
        assert document["opt"] == 4 and document["hamiltonian"] is True

    def test_batch(self, tmp_path):
        output = tmp_path / "batch.jsonl"
        assert main(["batch", "wheel", "k=6", "--count", "3", "--seed", "4", "--output", str(output)]) == 0
        records = [json.loads(line) for line in output.read_text().splitlines()]
        assert [r["seed"] for r in records] == [4, 5, 6]
        assert all(r["report"]["n"] == 7 for r in records)
