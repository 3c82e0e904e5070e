import json

import pytest

from lm_drift import __version__
from lm_drift.analysis import read_stats_report
from lm_drift.cli import main
from lm_drift.lexicon import DEMO_LEXICON_PATH, Action, TriageDecision, append_decision, parse_lexicon
from lm_drift.matching import read_counts
from lm_drift.report import read_manifest, verify_manifest


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("LM_DRIFT_API_KEY", raising=False)
    monkeypatch.delenv("LM_DRIFT_METADATA_URL", raising=False)
    return tmp_path


def cli(*args):
    return main(["-q", "--lexicon", str(DEMO_LEXICON_PATH), *args])


@pytest.fixture
def scanned(workdir, mini_dir):
    assert cli("ingest", "--from-text", str(mini_dir)) == 0
    assert cli("scan") == 0
    return workdir


def write_text_dir(root, papers):
    """papers: [(paper_id, venue, year, body)]"""
    (root / "text").mkdir(parents=True)
    with open(root / "manifest.jsonl", "w", encoding="utf-8") as f:
        for pid, venue, year, body in papers:
            f.write(json.dumps({"paper_id": pid, "venue": venue, "year": year, "title": pid, "abstract": body}) + "\n")
            (root / "text" / f"{pid}.txt").write_text(f"1 Introduction\n{body}\nReferences\nNone.\n")
    return root


class TestPipeline:
    def test_ingest_and_scan(self, scanned, capsys):
        table = read_counts(scanned / "data" / "counts.jsonl")
        assert len(table.counts) == 60
        assert table.scope == "body"
        golden = table.by_id()["mini-acl-0001"]
        assert golden.per_entry == {"BERT": 2, "CNN": 2, "LSTM": 1, "RoBERTa": 1}

    def test_ingest_is_idempotent(self, scanned, mini_dir):
        before = (scanned / "data" / "corpus.jsonl").read_bytes()
        assert cli("ingest", "--from-text", str(mini_dir)) == 0
        assert (scanned / "data" / "corpus.jsonl").read_bytes() == before

    def test_stats_writes_every_report(self, scanned, capsys):
        assert cli("stats") == 0
        names = sorted(p.stem for p in (scanned / "output" / "stats").iterdir())
        assert names == sorted([
            "composition", "jaccard__set", "jaccard__weighted", "ks",
            "majority__all", "majority__top_quarter_by_NL", "quartiles", "timeseries",
        ])
        assert "✓ ks" in capsys.readouterr().out

    def test_stats_filters(self, scanned):
        assert cli("stats", "--analysis", "jaccard", "--mode", "set") == 0
        assert [p.name for p in (scanned / "output" / "stats").iterdir()] == ["jaccard__set.json"]

    def test_abstract_scope(self, scanned):
        assert cli("scan", "--scope", "abstract") == 0
        table = read_counts(scanned / "data" / "counts.jsonl")
        assert table.scope == "abstract"
        assert table.by_id()["mini-acl-0001"].n == 0

    def test_counts_match_golden(self, scanned, golden_dir):
        table = read_counts(scanned / "data" / "counts.jsonl")
        golden = read_counts(golden_dir / "counts.jsonl")
        assert table.scope == golden.scope
        assert table.counts == golden.counts

    def test_majority_matches_golden(self, scanned, golden_dir):
        assert cli("stats", "--analysis", "majority") == 0
        document = read_stats_report(scanned / "output" / "stats" / "majority__all.json")
        [report] = [r for r in document["payload"]["reports"] if r["scope"] == "ACL 2023"]
        assert report == json.loads((golden_dir / "majority_acl_2023.json").read_text())

    def test_report(self, scanned):
        assert cli("report") == 0
        assert verify_manifest(scanned / "output") == []
        assert cli("report") == 1
        assert cli("report", "--force") == 0

    def test_report_manifest_matches_golden(self, scanned, golden_dir):
        assert cli("report") == 0
        manifest = read_manifest(scanned / "output")
        golden = json.loads((golden_dir / "manifest_files.json").read_text())
        assert manifest["kinds"] == ["diverging", "jaccard", "majority", "pairwise", "sunburst", "timeseries"]
        assert [f["path"] for f in manifest["files"]] == sorted(f["path"] for f in manifest["files"])
        assert sorted((f["path"], f["kind"], f["scope"]) for f in manifest["files"]) == sorted(
            (f["path"], f["kind"], f["scope"]) for f in golden
        )

    def test_report_checksums_are_reproducible(self, scanned, tmp_path, mini_dir, monkeypatch):
        assert cli("report") == 0
        first = read_manifest(scanned / "output")
        other = tmp_path / "second-run"
        other.mkdir()
        monkeypatch.chdir(other)
        assert cli("ingest", "--from-text", str(mini_dir)) == 0
        assert cli("scan") == 0
        assert cli("report") == 0
        assert read_manifest(other / "output") == first


class TestExitCodes:
    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert __version__ in capsys.readouterr().out

    def test_bad_arguments(self, workdir):
        assert main(["scan", "--scope", "title"]) == 1
        assert main([]) == 1

    def test_unknown_venue(self, workdir, capsys):
        assert cli("ingest", "COLING", "2022") == 1
        assert "COLING" in capsys.readouterr().err

    def test_ingest_needs_one_source(self, workdir, mini_dir):
        assert cli("ingest") == 1
        assert cli("ingest", "ACL", "2023", "--from-text", str(mini_dir)) == 1

    def test_no_metadata_endpoint(self, workdir):
        assert cli("ingest", "ACL", "2023") == 1

    def test_missing_corpus(self, workdir, capsys):
        assert cli("scan") == 2
        assert "run ingest first" in capsys.readouterr().err

    def test_missing_counts(self, workdir, mini_dir):
        assert cli("ingest", "--from-text", str(mini_dir)) == 0
        assert cli("stats") == 2

    def test_single_conference_ks(self, workdir):
        text_dir = write_text_dir(workdir / "one", [
            ("a1", "ACL", 2023, "We prompt ChatGPT, an LLM."),
            ("a2", "ACL", 2023, "We fine-tune BERT."),
        ])
        assert cli("ingest", "--from-text", str(text_dir)) == 0
        assert cli("scan") == 0
        assert cli("stats", "--analysis", "ks") == 2
        assert cli("stats") == 0

    def test_extract_without_credential(self, scanned, capsys):
        assert cli("extract") == 3
        assert "LM_DRIFT_API_KEY" in capsys.readouterr().err

    def test_bad_config(self, workdir):
        (workdir / "lm_drift.yaml").write_text("colors: {}\n")
        assert cli("scan") == 1


    def test_scan_initialises_missing_lexicon(self, workdir, mini_dir, capsys):
        assert cli("ingest", "--from-text", str(mini_dir)) == 0
        lexicon_path = workdir / "data" / "lexicon.yaml"
        assert main(["-q", "--lexicon", str(lexicon_path), "scan"]) == 0
        assert len(parse_lexicon(lexicon_path)) == 97
        assert "from the seed lexicon" in capsys.readouterr().out


class TestTriageCommand:
    def test_replay_initialises_from_seed(self, workdir):
        decisions = workdir / "reviewed.jsonl"
        append_decision(decisions, TriageDecision("T5-3B", Action.VARIATION_OF, target="T5"))
        lexicon_path = workdir / "lexicon.yaml"
        assert main(["-q", "--lexicon", str(lexicon_path), "triage", "--decisions", str(decisions)]) == 0
        lexicon = parse_lexicon(lexicon_path)
        assert len(lexicon) == 97
        assert lexicon.entry("T5").variations == ("T5-3B",)
        assert main(["-q", "--lexicon", str(lexicon_path), "triage", "--decisions", str(decisions)]) == 0

    def test_missing_decisions_file(self, workdir):
        lexicon_path = workdir / "lexicon.yaml"
        assert main(["-q", "--lexicon", str(lexicon_path), "triage", "--decisions", "nope.jsonl"]) == 1
