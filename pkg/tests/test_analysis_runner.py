import json

import pytest

from conftest import conference_corpus, pc
from lm_drift.analysis import (
    ANALYSES,
    AnalysisOptions,
    analysis_payload,
    read_stats_report,
    report_names,
    run_analysis,
    write_stats_report,
)
from lm_drift.errors import StatsError
from lm_drift.matching import scan_corpus


@pytest.fixture(scope="module")
def mini_counts(mini_corpus, lexicon):
    return scan_corpus(mini_corpus, lexicon)


@pytest.fixture(scope="module")
def mini_analysis(mini_corpus, mini_counts, lexicon):
    return run_analysis(mini_corpus, mini_counts, lexicon)


class TestRunAnalysis:
    def test_every_analysis_runs_on_mini(self, mini_analysis):
        assert [s.label for s in mini_analysis.stats] == ["ACL 2020", "EMNLP 2021", "ACL 2023"]
        assert len(mini_analysis.series) == 3
        assert sorted(mini_analysis.ks) == ["n", "n_l"]
        assert len(mini_analysis.ks["n_l"]) == 3
        assert [c.scope for c in mini_analysis.compositions] == ["ACL 2020", "EMNLP 2021", "ACL 2023"]
        assert sorted(mini_analysis.jaccard) == ["set", "weighted"]
        assert sorted(mini_analysis.majority) == ["all", "top_quarter_by_NL"]
        assert [c.scope for c in mini_analysis.contrasts] == ["ACL 2020", "EMNLP 2021", "ACL 2023"]
        assert [s.group for s in mini_analysis.shifts] == ["Q4+", "Q1-"]
        assert mini_analysis.skipped == {}

    def test_acl_2020_aggregates(self, mini_analysis):
        acl2020 = mini_analysis.stats[0]
        assert acl2020.paper_count == 20
        assert acl2020.lm_related_count == 8
        assert acl2020.prop_lm_related == pytest.approx(0.4)

    def test_llm_families_grow(self, mini_analysis):
        first = mini_analysis.composition_for("ACL 2020")
        last = mini_analysis.composition_for("ACL 2023")
        assert first.by_component.get("GPT", 0.0) == 0.0
        assert last.by_component["GPT"] > last.by_component.get("BERT", 0.0)

    def test_deterministic(self, mini_corpus, mini_counts, lexicon, mini_analysis):
        again = run_analysis(mini_corpus, list(reversed(mini_counts)), lexicon)
        for name in report_names():
            assert analysis_payload(again, name) == analysis_payload(mini_analysis, name)

    def test_single_conference_is_skipped(self, gpt_chain):
        corpus = conference_corpus([("ACL", 2023, ["a", "b"])])
        counts = [pc("a", 2, {"GPT": 1}), pc("b", 1, {"BERT": 2})]
        result = run_analysis(corpus, counts, gpt_chain)
        assert "ks" in result.skipped
        assert "jaccard" in result.skipped
        assert "quartiles:ACL 2023" in result.skipped
        with pytest.raises(StatsError):
            analysis_payload(result, "ks")

    def test_strict_raises(self, gpt_chain):
        corpus = conference_corpus([("ACL", 2023, ["a"])])
        with pytest.raises(StatsError):
            run_analysis(corpus, [pc("a", 1)], gpt_chain, analyses=["ks"], strict=True)

    def test_unknown_analysis(self, gpt_chain):
        with pytest.raises(ValueError):
            run_analysis(conference_corpus([("ACL", 2023, ["a"])]), [pc("a")], gpt_chain, analyses=["sentiment"])

    def test_options_flow_into_payloads(self, mini_corpus, mini_counts, lexicon):
        result = run_analysis(mini_corpus, mini_counts, lexicon, AnalysisOptions(top_k=1, include_zero=True))
        payload = analysis_payload(result, "quartiles")
        assert payload["top_k"] == 1
        assert all(len(c["deltas"]) <= 1 for c in payload["contrasts"])
        assert analysis_payload(result, "majority__all")["include_zero"] is True


class TestStatsReports:
    def test_names(self):
        assert report_names(ANALYSES) == [
            "timeseries", "ks", "composition", "jaccard__set", "jaccard__weighted",
            "majority__all", "majority__top_quarter_by_NL", "quartiles",
        ]

    def test_write_and_read(self, tmp_path, mini_analysis):
        path = write_stats_report(tmp_path, "ks", analysis_payload(mini_analysis, "ks"), "abc123")
        assert path == tmp_path / "stats" / "ks.json"
        document = read_stats_report(path)
        assert document["schema_version"] == 1
        assert document["generated_from"] == "abc123"
        assert document["payload"]["conferences"] == ["ACL 2020", "EMNLP 2021", "ACL 2023"]
        cell = document["payload"]["metrics"]["n_l"][0]
        assert set(cell) == {"row", "column", "ks_statistic", "p_value", "mean_diff", "significance_bucket"}

    def test_unsupported_version(self, tmp_path):
        path = tmp_path / "ks.json"
        path.write_text(json.dumps({"schema_version": 99, "payload": {}}))
        with pytest.raises(StatsError):
            read_stats_report(path)
