"""
Tests for the command-line entry point
"""
import json

import pytest
from typer.testing import CliRunner

from app.cli import app

runner = CliRunner()


def json_from_stdout(text: str) -> dict:
    return json.loads(text[text.index("{\n"):])


@pytest.fixture
def k8_file(tmp_path):
    path = tmp_path / "k8.txt"
    result = runner.invoke(app, ["gen", "--kind", "complete", "--n", "8", "--out", str(path)])
    assert result.exit_code == 0
    return path


class TestGen:
    """gen"""

    def test_writes_an_edge_list(self, k8_file):
        lines = [line for line in k8_file.read_text().splitlines() if line.strip() and not line.startswith("#")]
        assert len(lines) == 28

    def test_dimacs(self, tmp_path):
        path = tmp_path / "c5.dimacs"
        result = runner.invoke(app, ["gen", "--kind", "cycle", "--n", "5", "--format", "dimacs", "--out", str(path)])
        assert result.exit_code == 0
        assert "p edge 5 5" in path.read_text()

    def test_infeasible_parameters(self, tmp_path):
        result = runner.invoke(app, ["gen", "--kind", "random-regular", "--n", "5", "--d", "3", "--out", str(tmp_path / "x.txt")])
        assert result.exit_code == 2


class TestRun:
    """run"""

    def test_report_file(self, k8_file, tmp_path, isolated_cache):
        out = tmp_path / "report.json"
        result = runner.invoke(app, ["run", "--input", str(k8_file), "--seed", "2", "--out", str(out)])
        assert result.exit_code == 0
        report = json.loads(out.read_text())
        assert report["input"]["name"] == "k8"
        assert report["seed"] == 2
        assert report["oracle"]["max_chords"] == 20
        assert report["result"]["chords"] <= 20

    def test_rational_epsilon(self, k8_file, tmp_path, isolated_cache):
        out = tmp_path / "report.json"
        result = runner.invoke(app, ["run", "-i", str(k8_file), "--epsilon1", "1/8", "-o", str(out)])
        assert result.exit_code == 0
        assert json.loads(out.read_text())["config"]["epsilon1"] == 0.125

    def test_acyclic_input(self, tmp_path, isolated_cache):
        path = tmp_path / "path.txt"
        path.write_text("0 1\n1 2\n2 3\n")
        result = runner.invoke(app, ["run", "-i", str(path), "-o", str(tmp_path / "report.json")])
        assert result.exit_code == 1
        assert json.loads((tmp_path / "report.json").read_text())["result"] is None

    def test_missing_input(self, tmp_path):
        result = runner.invoke(app, ["run", "-i", str(tmp_path / "absent.txt")])
        assert result.exit_code == 2

    def test_malformed_input(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0 1\nzero two\n")
        result = runner.invoke(app, ["run", "-i", str(path)])
        assert result.exit_code == 2

    def test_inconsistent_lengths(self, k8_file):
        result = runner.invoke(app, ["run", "-i", str(k8_file), "--max-cycle-len", "4", "--max-path-len", "5"])
        assert result.exit_code == 2


class TestOracle:
    """oracle"""

    def test_prints_the_result(self, k8_file):
        result = runner.invoke(app, ["oracle", "-i", str(k8_file), "--no-cache"])
        assert result.exit_code == 0
        data = json_from_stdout(result.stdout)
        assert data["max_chords"] == 20
        assert data["best_cycle"]["cycle"]["vertices"] == list(range(8))

    def test_too_large(self, tmp_path):
        path = tmp_path / "k15.txt"
        runner.invoke(app, ["gen", "--kind", "complete", "--n", "15", "--out", str(path)])
        result = runner.invoke(app, ["oracle", "-i", str(path), "--no-cache"])
        assert result.exit_code == 2


class TestCorpus:
    """corpus"""

    def test_manifest(self, tmp_path):
        manifest = tmp_path / "manifest.json"
        manifest.write_text(json.dumps({"entries": [
            {"name": "k6", "generator": {"kind": "complete", "n": 6}},
            {"name": "c9", "generator": {"kind": "cycle", "n": 9}},
        ]}))
        out = tmp_path / "reports"
        result = runner.invoke(app, ["corpus", "--manifest", str(manifest), "--workers", "1", "--out", str(out), "--no-cache"])
        assert result.exit_code == 0
        assert (out / "k6.json").exists()
        assert (out / "summary.csv").exists()

    def test_bad_manifest(self, tmp_path):
        manifest = tmp_path / "manifest.json"
        manifest.write_text("{}")
        result = runner.invoke(app, ["corpus", "--manifest", str(manifest), "--no-cache", "--out", str(tmp_path)])
        assert result.exit_code == 2
