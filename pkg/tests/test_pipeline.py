"""
Tests for the end-to-end pipeline and the corpus runner
"""
import json
import statistics
from unittest.mock import patch

import pandas as pd
import pytest

from app.apps.graph.models import ChordedCycle, Cycle, Graph
from app.apps.graph.utils.chords import chords_of, reverify
from app.apps.graph.utils.generators import GeneratorParams, complete, cycle, generate
from app.apps.oracle.services.oracle_cache import cached_max_chorded_cycle
from app.apps.pipeline.schemas import CorpusRow, PipelineConfig, PipelineMode, Report, StageStatus
from app.apps.pipeline.utils import load_manifest, run_corpus, run_corpus_async, run_pipeline
from app.apps.pipeline.utils.corpus import aggregate_rows
from app.apps.pipeline.utils.runner import _fallback_cycle
from app.common.errors import GraphInputError, SearchFailure
from tests.conftest import path_graph, random_regular


def stable_view(report: Report) -> dict:
    """Report without its run-dependent timing fields."""
    data = report.model_dump(mode="json")
    data.pop("timings")
    for stage in data["stages"]:
        stage.pop("elapsed")
    return data


def final_cycle(report: Report) -> ChordedCycle:
    return ChordedCycle(
        cycle=Cycle(vertices=tuple(report.result.cycle)),
        chords=tuple(tuple(c) for c in report.result.chord_list),
    )


def clique_on_ring(k: int, ring: int) -> Graph:
    """K_k on 0..k-1 sharing vertex k-1 with a ring of `ring` vertices."""
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    ring_vertices = [k - 1] + list(range(k, k + ring - 1))
    edges += [(ring_vertices[i], ring_vertices[(i + 1) % ring]) for i in range(ring)]
    return Graph.from_edges(k + ring - 1, edges)


def write_manifest(tmp_path, entries) -> str:
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps({"entries": entries}))
    return str(path)


class TestPipelineConfig:
    """PipelineConfig.resolve"""

    def test_defaults_at_256(self):
        cfg = PipelineConfig().resolve(256)
        assert cfg.max_cycle_len == 512
        assert cfg.max_path_len == 64
        assert cfg.gadget_budget == 64
        assert cfg.degree_threshold_m == 8
        assert cfg.anchor_size == 4
        assert cfg.max_link_len == 128

    def test_explicit_values_are_kept(self):
        cfg = PipelineConfig(anchor_size=7, max_cycle_len=20, max_path_len=5).resolve(4096)
        assert (cfg.anchor_size, cfg.max_cycle_len, cfg.max_path_len) == (7, 20, 5)

    def test_path_longer_than_cycle_rejected(self):
        with pytest.raises(ValueError):
            PipelineConfig(max_cycle_len=4, max_path_len=5)


class TestRunPipeline:
    """run_pipeline"""

    def test_k20_chains_spiders(self, k20):
        report = run_pipeline(k20, name="k20")
        assert report.result is not None
        assert report.result.chords >= 5
        assert report.result.source == "chain"
        assert report.gadgets.spiders >= 1
        reverify(k20, final_cycle(report))

    def test_c50_falls_back_to_the_cycle(self, c50):
        report = run_pipeline(c50)
        assert report.result.length == 50
        assert report.result.chords == 0
        assert report.diagnostics.fallback_source == "long-cycle"
        assert report.gadgets.spiders == 0
        assert report.gadgets.extenders == 0
        assert report.stage("spiders").status == StageStatus.SKIPPED

    def test_acyclic_graph_has_no_result(self):
        report = run_pipeline(path_graph(10))
        assert report.result is None
        assert report.stage("fallback").status == StageStatus.FAILED
        assert report.oracle.max_chords == 0
        assert report.oracle.ratio is None

    def test_small_graph_is_compared_with_the_oracle(self):
        report = run_pipeline(complete(8))
        assert report.oracle.max_chords == 20
        assert report.result.chords <= 20
        assert report.oracle.ratio == pytest.approx(report.result.chords / 20)

    def test_oracle_can_be_disabled(self, k5):
        report = run_pipeline(k5, with_oracle=False)
        assert report.oracle is None
        assert report.stage("oracle") is None

    def test_injected_oracle(self, k5, oracle_cache):
        def oracle(g, limit_n):
            return cached_max_chorded_cycle(g, limit_n, cache=oracle_cache)

        report = run_pipeline(k5, oracle=oracle)
        assert report.oracle.per_length == {3: 0, 4: 2, 5: 5}
        assert list(oracle_cache.directory.glob("*.json"))

    def test_report_shape(self, petersen_graph):
        data = run_pipeline(petersen_graph).model_dump(mode="json")
        for key in ("schema_version", "input", "config", "stages", "gadgets", "result", "oracle", "timings"):
            assert key in data
        assert data["schema_version"] == 1
        assert data["result"]["chord_list"] == sorted(data["result"]["chord_list"])
        assert "total" in data["timings"]

    def test_deterministic(self, petersen_graph):
        cfg = PipelineConfig(seed=7)
        assert stable_view(run_pipeline(petersen_graph, cfg)) == stable_view(run_pipeline(petersen_graph, cfg))

    def test_stage_failure_is_recorded(self):
        with patch(
            "app.apps.pipeline.utils.runner.extract_expander_subgraph",
            side_effect=SearchFailure("injected"),
        ):
            report = run_pipeline(cycle(12))
        expander = report.stage("expander")
        assert expander.status == StageStatus.FAILED
        assert expander.message == "injected"
        assert report.result.length == 12

    def test_fallback_prefers_chords_over_length(self):
        g = clique_on_ring(8, 40)
        report = run_pipeline(g, PipelineConfig(seed=1))
        assert report.result.source.startswith("fallback:")
        assert report.result.length == 8
        assert report.result.chords == 20
        reverify(g, final_cycle(report))

    def test_failed_extenders_still_contribute_cycles(self):
        g = clique_on_ring(14, 200)
        with patch(
            "app.apps.gadgets.utils.extender.route_to_anchor_sets",
            side_effect=SearchFailure("no route"),
        ), patch("app.apps.pipeline.utils.runner.find_nice_spiders", return_value=[]):
            report = run_pipeline(g, PipelineConfig(seed=1))
        failed = [s for s in report.stages if s.name.startswith("extender-")]
        assert failed
        assert all(s.status == StageStatus.FAILED for s in failed)
        assert report.result.source.startswith("fallback:")
        assert report.result.chords >= 77
        reverify(g, final_cycle(report))

    def test_exact_mode_checks_small_hosts_exactly(self):
        report = run_pipeline(complete(12), PipelineConfig(mode=PipelineMode.EXACT), with_oracle=False)
        assert report.diagnostics.expansion_check.startswith("exact:")

    @pytest.mark.parametrize("seed", range(10))
    def test_never_beats_the_oracle(self, seed):
        g = generate("gnp-min-degree", GeneratorParams(n=5 + seed % 8, p=0.4, d=3), seed=seed)
        report = run_pipeline(g, PipelineConfig(seed=seed))
        assert report.result is not None
        assert report.result.chords <= report.oracle.max_chords
        reverify(g, final_cycle(report))

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(300))
    def test_never_beats_the_oracle_wide(self, seed):
        n = 5 + seed % 8
        g = generate("gnp-min-degree", GeneratorParams(n=n, p=0.3 + (seed % 5) / 10, d=3), seed=seed)
        report = run_pipeline(g, PipelineConfig(seed=seed))
        assert report.result.chords <= report.oracle.max_chords

    @pytest.mark.slow
    def test_random_16_regular_4096(self):
        g = random_regular(4096, 16, seed=1)
        report = run_pipeline(g, PipelineConfig(seed=1))
        assert report.result.chords >= 2
        reverify(g, final_cycle(report))

    @pytest.mark.slow
    def test_chord_growth_trend(self):
        medians = []
        for exponent in range(9, 15):
            chords = []
            for seed in range(5):
                g = random_regular(2 ** exponent, 16, seed=seed)
                report = run_pipeline(g, PipelineConfig(seed=seed), with_oracle=False)
                reverify(g, final_cycle(report))
                chords.append(report.result.chords)
            medians.append(statistics.median(chords))
        assert medians == sorted(medians)
        assert medians[-1] >= 3 * medians[0]


class TestFallbackCycle:
    """_fallback_cycle"""

    def test_every_block_is_searched(self):
        origin, found = _fallback_cycle(clique_on_ring(6, 30), PipelineConfig().resolve(35), [])
        assert origin == "long-cycle"
        assert (found.length, found.chord_count) == (6, 9)

    def test_stage_cycles_compete(self):
        g = clique_on_ring(6, 30)
        kept = ("extender-1:route", chords_of(g, Cycle(vertices=(0, 1, 2, 3, 4, 5))))
        origin, found = _fallback_cycle(g, PipelineConfig().resolve(35), [kept])
        assert origin == "extender-1:route"
        assert found.chord_count == 9

    def test_acyclic(self):
        with pytest.raises(SearchFailure, match="acyclic"):
            _fallback_cycle(path_graph(6), PipelineConfig().resolve(6), [])


class TestCorpus:
    """load_manifest, run_corpus and aggregation"""

    def complete_entries(self):
        return [
            {"name": f"k{n}", "generator": {"kind": "complete", "n": n}}
            for n in range(5, 11)
        ]

    def test_complete_graph_manifest(self, tmp_path):
        manifest = write_manifest(tmp_path, self.complete_entries())
        summary = run_corpus(manifest, PipelineConfig(seed=1), out_dir=tmp_path / "out", workers=1)
        assert [row.status for row in summary.rows] == ["ok"] * 6
        for row in summary.rows:
            assert row.oracle_max_chords == row.n * (row.n - 3) // 2
            assert row.chords <= row.oracle_max_chords
            assert (tmp_path / "out" / f"{row.name}.json").exists()
        table = pd.read_csv(tmp_path / "out" / "summary.csv")
        assert list(table["n"]) == list(range(5, 11))
        assert set(table["family"]) == {"complete"}
        assert json.loads((tmp_path / "out" / "summary.json").read_text())["rows"][0]["name"] == "k5"

    def test_file_entries_resolve_next_to_the_manifest(self, tmp_path):
        (tmp_path / "c9.txt").write_text("\n".join(f"{i} {(i + 1) % 9}" for i in range(9)))
        manifest = write_manifest(tmp_path, [{"name": "c9", "path": "c9.txt", "family": "cycles"}])
        summary = run_corpus(manifest, out_dir=tmp_path / "out", workers=1)
        row = summary.rows[0]
        assert (row.status, row.family, row.length, row.chords) == ("ok", "cycles", 9, 0)

    def test_failing_entry_becomes_an_error_row(self, tmp_path):
        entries = [{"name": "missing", "path": "nope.txt"}, {"name": "k5", "generator": {"kind": "complete", "n": 5}}]
        summary = run_corpus(write_manifest(tmp_path, entries), out_dir=tmp_path / "out", workers=1)
        missing, k5 = summary.rows
        assert missing.status == "error"
        assert "cannot open" in missing.message
        assert k5.status == "ok"

    def test_acyclic_entry(self, tmp_path):
        (tmp_path / "p4.txt").write_text("0 1\n1 2\n2 3\n")
        summary = run_corpus(write_manifest(tmp_path, [{"name": "p4", "path": "p4.txt"}]), out_dir=tmp_path / "out", workers=1)
        assert summary.rows[0].status == "no-cycle"
        assert summary.aggregate == []

    def test_oracle_cache_directory(self, tmp_path):
        manifest = write_manifest(tmp_path, self.complete_entries()[:2])
        run_corpus(manifest, out_dir=tmp_path / "out", workers=1, cache_dir=tmp_path / "cache")
        assert len(list((tmp_path / "cache").glob("*.json"))) == 2

    async def test_async_runner(self, tmp_path):
        manifest = write_manifest(tmp_path, self.complete_entries()[:3])
        summary = await run_corpus_async(manifest, out_dir=tmp_path / "out", workers=1)
        assert [row.name for row in summary.rows] == ["k5", "k6", "k7"]

    def test_process_pool(self, tmp_path):
        manifest = write_manifest(tmp_path, self.complete_entries()[:3])
        summary = run_corpus(manifest, out_dir=tmp_path / "out", workers=2)
        assert [row.status for row in summary.rows] == ["ok"] * 3

    def test_empty_manifest(self, tmp_path):
        with pytest.raises(GraphInputError):
            load_manifest(write_manifest(tmp_path, []))

    def test_duplicate_names(self, tmp_path):
        entry = {"name": "k5", "generator": {"kind": "complete", "n": 5}}
        with pytest.raises(GraphInputError):
            load_manifest(write_manifest(tmp_path, [entry, entry]))

    def test_entry_needs_one_source(self, tmp_path):
        with pytest.raises(GraphInputError):
            load_manifest(write_manifest(tmp_path, [{"name": "x"}]))

    def test_unreadable_manifest(self, tmp_path):
        with pytest.raises(GraphInputError):
            load_manifest(tmp_path / "absent.json")

    def test_aggregate_medians(self):
        rows = [
            CorpusRow(name="a", family="f", status="ok", n=10, length=6, chords=2, normalized=1.0),
            CorpusRow(name="b", family="f", status="ok", n=10, length=8, chords=4, normalized=2.0),
            CorpusRow(name="c", family="f", status="error", n=10),
        ]
        table = aggregate_rows(rows)
        assert len(table) == 1
        record = table.iloc[0]
        assert record["graphs"] == 2
        assert record["median_length"] == 7
        assert record["median_chords"] == 3
