#!/usr/bin/env python3
"""
LM Drift Pipeline - End-to-End Demo

Runs every offline stage on a from-text corpus directory and prints what each
stage produced.

Stages:
    1. Ingest - read manifest.jsonl and text/<paper_id>.txt
    2. Scan - count generic LM terms and model names per paper
    3. Statistics - time series, K-S matrices, compositions, majority, quartiles
    4. Report - stats files, chart data, SVG figures and a manifest

Usage:
    python drift_pipeline.py [text_dir] [output_dir] [lexicon]

Example:
    python drift_pipeline.py tests/fixtures/mini output/demo

Output:
    - corpus.jsonl, counts.jsonl
    - stats/<analysis>.json
    - figures/<kind>__<scope>.json|.svg and figures/manifest.json
"""

import sys
import traceback
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from lm_drift.analysis import (  # noqa: E402
    analysis_payload,
    report_names,
    run_analysis,
    stats_frame,
    write_stats_report,
)
from lm_drift.corpus import load_text_dir, store  # noqa: E402
from lm_drift.errors import LmDriftError, StatsError  # noqa: E402
from lm_drift.lexicon import DEMO_LEXICON_PATH, lexicon_digest, parse_lexicon  # noqa: E402
from lm_drift.matching import file_digest, scan_corpus, write_counts  # noqa: E402
from lm_drift.report import emit_all  # noqa: E402

VENUE_ORDER = ("NAACL", "ACL", "EMNLP")


def banner(title):
    print("\n" + "=" * 80)
    print(title)
    print("=" * 80)


# ============================================================================
# PART 1: INGEST
# ============================================================================

def ingest(text_dir, output_dir):
    banner("PART 1: INGESTING CORPUS")
    corpus, warnings = load_text_dir(text_dir, VENUE_ORDER)
    store(corpus, output_dir / "corpus.jsonl")
    for key in corpus.conferences():
        print(f"  {key.ordinal}. {key.label}: {len(corpus.papers_for(key.venue, key.year))} papers")
    for paper_id, messages in sorted(warnings.items()):
        print(f"  ! {paper_id}: {'; '.join(messages)}")
    print(f"✓ Loaded {len(corpus)} papers")
    return corpus


# ============================================================================
# PART 2: SCAN
# ============================================================================

def scan(corpus, lexicon, output_dir):
    banner("PART 2: SCANNING BODY TEXT")
    counts = scan_corpus(corpus, lexicon, "body")
    path = output_dir / "counts.jsonl"
    write_counts(path, counts, "body", lexicon_digest(lexicon))
    related = sum(1 for c in counts if c.lm_related)
    mentions = sum(c.n for c in counts)
    print(f"✓ {related}/{len(counts)} papers mention a generic LM term")
    print(f"✓ {mentions} model mentions over {len(lexicon)} lexicon entries")
    return counts, path


# ============================================================================
# PART 3: STATISTICS
# ============================================================================

def statistics(corpus, counts, lexicon, counts_path, output_dir):
    banner("PART 3: COMPUTING STATISTICS")
    analysis = run_analysis(corpus, counts, lexicon)
    print(stats_frame(analysis.stats).to_string(index=False))

    if analysis.series:
        print("\nShare-scaled estimate of mean N^L:")
        for p in analysis.series:
            est = "n/a" if p.estimated_mean_n_l is None else f"{p.estimated_mean_n_l:.2f}"
            print(f"  {p.key.label}: actual {p.mean_n_l:.2f}, estimated {est}")

    generated_from = file_digest(counts_path)
    written = []
    for name in report_names():
        try:
            written.append(write_stats_report(output_dir, name, analysis_payload(analysis, name), generated_from))
        except StatsError as e:
            print(f"  - {name} skipped: {e}")
    print(f"✓ Wrote {len(written)} stats files to {output_dir / 'stats'}")
    for scope, reason in sorted(analysis.skipped.items()):
        print(f"  - {scope}: {reason}")
    return analysis


# ============================================================================
# PART 4: REPORT
# ============================================================================

def report(analysis, lexicon, output_dir):
    banner("PART 4: RENDERING FIGURES")
    manifest = emit_all(analysis, lexicon, output_dir, force=True)
    for kind in manifest["kinds"]:
        n = sum(1 for f in manifest["files"] if f["kind"] == kind and f["path"].endswith(".svg"))
        print(f"  • {kind}: {n} charts")
    print(f"✓ {len(manifest['files'])} files -> {output_dir / 'figures'}")
    return manifest


# ============================================================================
# MAIN EXECUTION
# ============================================================================

def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    base_dir = Path(__file__).parent
    text_dir = Path(argv[0]) if len(argv) > 0 else base_dir / "tests" / "fixtures" / "mini"
    output_dir = Path(argv[1]) if len(argv) > 1 else base_dir / "output" / "demo"
    lexicon_path = Path(argv[2]) if len(argv) > 2 else DEMO_LEXICON_PATH

    print("\n")
    print("+" + "=" * 78 + "+")
    print("|" + "  LM DRIFT - TERM AND MODEL-NAME DRIFT ACROSS CONFERENCES  ".center(78) + "|")
    print("+" + "=" * 78 + "+")

    if not (text_dir / "manifest.jsonl").exists():
        print(f"\n✗ No manifest.jsonl in {text_dir}")
        return 1

    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        lexicon = parse_lexicon(lexicon_path)
        print(f"Lexicon: {lexicon_path} ({len(lexicon)} entries, {len(lexicon.roots())} components)")

        corpus = ingest(text_dir, output_dir)
        counts, counts_path = scan(corpus, lexicon, output_dir)
        analysis = statistics(corpus, counts, lexicon, counts_path, output_dir)
        report(analysis, lexicon, output_dir)

        banner("✓ PIPELINE COMPLETE")
        print(f"  Stats:   {output_dir / 'stats'}")
        print(f"  Figures: {output_dir / 'figures'}")
        return 0
    except LmDriftError as e:
        print(f"\n✗ {e}")
        return e.exit_code
    except Exception as e:
        print(f"\n✗ FATAL ERROR: {e}")
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
