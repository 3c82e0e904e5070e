import json

import pytest

from lm_drift.analysis import run_analysis
from lm_drift.errors import OutputExistsError, SchemaError, StatsError
from lm_drift.lexicon import Lexicon, ModelEntry
from lm_drift.matching import scan_corpus
from lm_drift.report import (
    ChartKind,
    StyleOptions,
    chart_bundles,
    emit_all,
    forest_total,
    read_manifest,
    render,
    root_colors,
    slugify,
    sunburst_data,
    validate,
    verify_manifest,
)
from lm_drift.report.svg import annular_sector, fmt


@pytest.fixture(scope="module")
def mini_analysis(mini_corpus, lexicon):
    return run_analysis(mini_corpus, scan_corpus(mini_corpus, lexicon), lexicon)


def pairwise_cell(**overrides):
    cell = {"row": "ACL 2020", "column": "ACL 2023", "ks_statistic": 0.0, "p_value": 1.0,
            "mean_diff": 0.0, "significance_bucket": "ns"}
    cell.update(overrides)
    return cell


class TestSvg:
    def test_fmt(self):
        assert fmt(1) == "1.0000"
        assert fmt(-0.00001) == "0.0000"
        assert fmt(2.34567) == "2.3457"

    def test_sector_is_stable(self):
        assert annular_sector(0, 0, 1, 2, 90, 90) == annular_sector(0, 0, 1, 2, 90, 90)
        assert annular_sector(0, 0, 1, 2, 90, 90).startswith("M0.0000 -2.0000 A2.0000")


class TestPalette:
    def test_colors_follow_sorted_roots(self):
        assert root_colors(["GPT", "BERT"]) == root_colors(["BERT", "GPT", "BERT"])
        colors = root_colors(["GPT", "BERT", "T5"])
        assert len(set(colors.values())) == 3
        assert all(c.startswith("#") and len(c) == 7 for c in colors.values())


class TestSunburst:
    def test_chain_values(self, gpt_chain):
        [gpt] = sunburst_data({"GPT": 2, "GPT-3": 5, "ChatGPT": 3}, gpt_chain)
        assert (gpt.entry_id, gpt.value, gpt.own) == ("GPT", 10, 2)
        [gpt3] = gpt.children
        assert (gpt3.value, gpt3.own) == (8, 5)
        assert [n.entry_id for n in gpt.iter_nodes()] == ["GPT", "GPT-3", "ChatGPT"]

    def test_chain_renders_three_arcs(self, gpt_chain):
        forest = sunburst_data({"GPT": 2, "GPT-3": 5, "ChatGPT": 3}, gpt_chain)
        data = {"scope": "ACL 2023", "total": 10, "threshold": 0.005, "roots": [n.to_dict() for n in forest]}
        svg = render(ChartKind.SUNBURST, data)
        assert svg.count('class="arc"') == 3
        assert "N=10" in svg

    def test_roots_largest_first(self, gpt_chain):
        forest = sunburst_data({"BERT": 3, "GPT-3": 7}, gpt_chain)
        assert [(n.entry_id, n.value) for n in forest] == [("GPT", 7), ("BERT", 3)]

    def test_single_node(self, gpt_chain):
        [bert] = sunburst_data({"BERT": 4}, gpt_chain)
        assert (bert.value, bert.children) == (4, [])

    def test_small_subtrees_fold_into_other(self):
        lex = Lexicon(entries={
            "GPT": ModelEntry("GPT"),
            "GPT-2": ModelEntry("GPT-2", parent="GPT"),
            "GPT-3": ModelEntry("GPT-3", parent="GPT"),
            "InstructGPT": ModelEntry("InstructGPT", parent="GPT-3"),
        })
        counts = {"GPT": 10, "GPT-2": 1, "GPT-3": 88, "InstructGPT": 1}
        [gpt] = sunburst_data(counts, lex, threshold=0.05)
        assert [(c.entry_id, c.value) for c in gpt.children] == [("GPT-3", 88), ("GPT/other", 2)]
        assert gpt.children[1].label == "other"
        assert forest_total([gpt]) == sum(counts.values())
        for node in gpt.iter_nodes():
            assert node.value == node.own + sum(c.value for c in node.children)

    def test_zero_total(self, gpt_chain):
        with pytest.raises(StatsError):
            sunburst_data({"GPT": 0}, gpt_chain)


class TestCharts:
    @pytest.mark.parametrize("scope,slug", [("ACL 2023", "acl-2023"), ("ACL 2023 Q4+ vs Q1-", "acl-2023-q4-vs-q1"), ("", "all")])
    def test_slugify(self, scope, slug):
        assert slugify(scope) == slug

    def test_validate_names_the_field(self):
        data = {"scope": "n_l", "labels": ["ACL 2020", "ACL 2023"], "cells": [pairwise_cell()]}
        del data["cells"][0]["p_value"]
        with pytest.raises(SchemaError) as exc:
            validate(ChartKind.PAIRWISE, data)
        assert (exc.value.kind, exc.value.field) == ("pairwise", "cells[0].p_value")

    def test_validate_rejects_ragged_matrix(self):
        with pytest.raises(SchemaError) as exc:
            validate(ChartKind.JACCARD, {"scope": "set", "labels": ["a", "b"], "values": [[1.0, 0.5], [0.5]]})
        assert exc.value.field == "values"

    def test_bool_is_not_a_number(self):
        data = {"scope": "x", "title": "t", "deltas": [{"root": "GPT", "delta": True}]}
        with pytest.raises(SchemaError):
            validate(ChartKind.DIVERGING, data)

    def test_identical_conferences_annotated_zero(self):
        data = {"scope": "n_l", "labels": ["ACL 2020", "ACL 2023"], "cells": [pairwise_cell()]}
        svg = render(ChartKind.PAIRWISE, data)
        assert svg.count(">0.00</text>") == 1

    def test_render_is_deterministic(self, mini_analysis, lexicon):
        style = StyleOptions(colors=root_colors(lexicon.roots()))
        first = [render(b.kind, b.data, style) for b in chart_bundles(mini_analysis, lexicon)]
        second = [render(b.kind, b.data, style) for b in chart_bundles(mini_analysis, lexicon)]
        assert first == second

    def test_bundle_order(self, mini_analysis, lexicon):
        kinds = [b.kind for b in chart_bundles(mini_analysis, lexicon)]
        order = [ChartKind.TIMESERIES, ChartKind.PAIRWISE, ChartKind.SUNBURST,
                 ChartKind.JACCARD, ChartKind.MAJORITY, ChartKind.DIVERGING]
        assert kinds == sorted(kinds, key=order.index)
        assert set(kinds) == set(order)


class TestEmit:
    def test_manifest_covers_every_file(self, tmp_path, mini_analysis, lexicon):
        manifest = emit_all(mini_analysis, lexicon, tmp_path)
        assert manifest["kinds"] == sorted(k.value for k in ChartKind)
        paths = [f["path"] for f in manifest["files"]]
        assert paths == sorted(paths)
        assert "sunburst__acl-2023.svg" in paths
        assert "pairwise__n_l.json" in paths
        on_disk = sorted(p.name for p in (tmp_path / "figures").iterdir() if p.name != "manifest.json")
        assert on_disk == paths
        assert read_manifest(tmp_path) == manifest
        assert verify_manifest(tmp_path) == []

    def test_chart_document(self, tmp_path, mini_analysis, lexicon):
        emit_all(mini_analysis, lexicon, tmp_path)
        document = json.loads((tmp_path / "figures" / "timeseries__corpus.json").read_text())
        assert document["schema_version"] == 1
        assert document["kind"] == "timeseries"
        assert [p["label"] for p in document["data"]["points"]] == ["ACL 2020", "EMNLP 2021", "ACL 2023"]

    def test_rerun_is_byte_identical(self, tmp_path, mini_analysis, lexicon):
        first = emit_all(mini_analysis, lexicon, tmp_path)
        second = emit_all(mini_analysis, lexicon, tmp_path, force=True)
        assert first == second

    def test_refuses_non_empty_output(self, tmp_path, mini_analysis, lexicon):
        emit_all(mini_analysis, lexicon, tmp_path)
        with pytest.raises(OutputExistsError):
            emit_all(mini_analysis, lexicon, tmp_path)

    def test_verify_reports_edits(self, tmp_path, mini_analysis, lexicon):
        emit_all(mini_analysis, lexicon, tmp_path)
        (tmp_path / "figures" / "jaccard__set.svg").write_text("<svg/>")
        (tmp_path / "figures" / "jaccard__weighted.json").unlink()
        assert verify_manifest(tmp_path) == ["jaccard__set.svg", "jaccard__weighted.json"]
