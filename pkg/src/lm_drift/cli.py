"""
lm-drift command line.

Usage:
    lm-drift [--config FILE] [-v | -q] [path overrides] <command> [options]

Commands:
    ingest    VENUE YEAR | --from-text DIR   add papers to the corpus file
    scan      count LM terms and model names per paper
    stats     compute analyses and write stats report files
    extract   ask the chat service for candidate model names
    triage    review candidates and grow the lexicon
    report    render charts from the current counts

Exit codes: 0 success, 1 usage, 2 data, 3 external service.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .analysis import (
    ANALYSES,
    AnalysisOptions,
    analysis_payload,
    report_names,
    run_analysis,
    write_stats_report,
)
from .analysis.composition import JACCARD_MODES
from .analysis.majority import SELECTORS
from .config import Config, load_config
from .corpus import Corpus, ExtractionOptions, fetch_metadata, fetch_papers, load, load_text_dir, store
from .errors import (
    EXIT_OK,
    EXIT_SERVICE,
    EXIT_USAGE,
    ConfigError,
    LmDriftError,
    StatsError,
    UnknownVenueError,
)
from .http import make_session
from .lexicon import Lexicon, lexicon_digest, parse_lexicon, read_decisions, seed_lexicon, write_lexicon
from .llm import ChatClient, ResponseCache, read_candidates, run_extraction, write_candidates
from .matching import SCOPES, file_digest, read_counts, scan_corpus, write_counts
from .report import emit_all
from .triage import TriageSession

logger = logging.getLogger("lm_drift")


def _ok(message: str) -> None:
    print(f"✓ {message}")


def _fail(message: str) -> None:
    print(f"✗ {message}", file=sys.stderr)


def configure_logging(verbose: bool, quiet: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


def _load_lexicon(cfg: Config) -> Lexicon:
    path = cfg.paths.lexicon
    if not path.exists():
        write_lexicon(seed_lexicon(), path)
        _ok(f"Initialised {path} from the seed lexicon")
    return parse_lexicon(path)


def _load_corpus_or_empty(path: Path) -> Corpus:
    return load(path) if Path(path).exists() else Corpus()


# ---------- ingest ----------

def cmd_ingest(args: argparse.Namespace, cfg: Config) -> int:
    venue_order = tuple(v.strip() for v in args.venue_order.split(",")) if args.venue_order else cfg.venue_order

    if args.from_text:
        if args.venue or args.year:
            raise ConfigError("give either VENUE YEAR or --from-text DIR, not both")
        incoming, warnings = load_text_dir(Path(args.from_text), venue_order, ExtractionOptions())
        if warnings:
            _fail(f"{len(warnings)} papers ingested with warnings (see log)")
    else:
        if not args.venue or args.year is None:
            raise ConfigError("ingest needs VENUE YEAR or --from-text DIR")
        if args.venue not in venue_order:
            raise UnknownVenueError(args.venue, venue_order)
        endpoint = cfg.metadata_url
        if not endpoint:
            raise ConfigError("no metadata endpoint: set fetch.metadata_url or LM_DRIFT_METADATA_URL")
        session = make_session(max_retries=cfg.fetch.max_retries)
        metas = fetch_metadata(args.venue, args.year, endpoint, session=session, timeout=cfg.fetch.timeout)
        papers, failures = fetch_papers(
            metas,
            cfg.fetch.pdf_url_template,
            session=session,
            max_workers=cfg.fetch.max_workers,
            timeout=cfg.fetch.timeout,
            progress=not args.quiet,
        )
        if failures:
            _fail(f"{len(failures)} PDFs skipped")
        incoming = Corpus.from_papers(papers)

    corpus = _load_corpus_or_empty(cfg.paths.corpus).merge(incoming, venue_order)
    store(corpus, cfg.paths.corpus)
    _ok(f"Corpus: {len(corpus)} papers across {len(corpus.conferences())} conferences -> {cfg.paths.corpus}")
    return EXIT_OK


# ---------- scan ----------

def cmd_scan(args: argparse.Namespace, cfg: Config) -> int:
    scope = args.scope or cfg.matcher.scope
    corpus = load(cfg.paths.corpus)
    lexicon = _load_lexicon(cfg)
    counts = scan_corpus(corpus, lexicon, scope, max_workers=args.workers, progress=not args.quiet)
    write_counts(cfg.paths.counts, counts, scope, lexicon_digest(lexicon))
    related = sum(1 for c in counts if c.lm_related)
    _ok(f"Scanned {len(counts)} papers ({scope}): {related} LM-related -> {cfg.paths.counts}")
    return EXIT_OK


# ---------- stats ----------

def _load_scan(cfg: Config):
    corpus = load(cfg.paths.corpus)
    lexicon = _load_lexicon(cfg)
    table = read_counts(cfg.paths.counts)
    if table.lexicon_digest and table.lexicon_digest != lexicon_digest(lexicon):
        logger.warning("counts were produced with a different lexicon; rerun scan")
    return corpus, lexicon, table


def _selected_names(args: argparse.Namespace) -> List[str]:
    names = report_names(args.analysis or ANALYSES)
    if args.mode:
        names = [n for n in names if not n.startswith("jaccard__") or n == f"jaccard__{args.mode}"]
    if args.selector:
        names = [n for n in names if not n.startswith("majority__") or n == f"majority__{args.selector}"]
    return names


def cmd_stats(args: argparse.Namespace, cfg: Config) -> int:
    corpus, lexicon, table = _load_scan(cfg)
    options = AnalysisOptions(
        top_k=args.top_k if args.top_k is not None else cfg.report.top_k,
        include_zero=args.include_zero,
    )
    analyses = args.analysis or ANALYSES
    analysis = run_analysis(corpus, table.counts, lexicon, options, analyses)
    generated_from = file_digest(cfg.paths.counts)
    explicit = bool(args.analysis)

    written = 0
    for name in _selected_names(args):
        try:
            payload = analysis_payload(analysis, name)
        except StatsError:
            # an analysis the user asked for by name must not be silently dropped
            if explicit:
                raise
            _fail(f"{name}: skipped ({analysis.skipped.get(name.partition('__')[0], 'no valid scope')})")
            continue
        path = write_stats_report(cfg.paths.output_dir, name, payload, generated_from)
        _ok(f"{name} -> {path}")
        written += 1
    for scope, reason in sorted(analysis.skipped.items()):
        logger.info("skipped %s: %s", scope, reason)
    if not written:
        raise StatsError("no analysis produced output")
    return EXIT_OK


# ---------- extract ----------

def cmd_extract(args: argparse.Namespace, cfg: Config) -> int:
    cfg = cfg.with_section("extraction", endpoint=args.endpoint, model=args.model,
                           include_title=True if args.include_title else None)
    ext = cfg.extraction
    client = ChatClient(ext.endpoint, ext.model, api_key=cfg.api_key(), timeout=ext.timeout,
                        max_retries=ext.max_retries)
    if args.check:
        ok, error = client.check_server()
        if ok:
            _ok(f"Chat service reachable at {ext.endpoint}")
            return EXIT_OK
        _fail(f"Chat service not available at {ext.endpoint}: {error}")
        return EXIT_SERVICE

    corpus = load(cfg.paths.corpus)
    run = run_extraction(
        corpus.papers,
        client,
        ResponseCache(cfg.paths.cache),
        max_workers=ext.max_workers,
        include_title=ext.include_title,
        credential_env=ext.api_key_env,
        progress=not args.quiet,
    )
    write_candidates(cfg.paths.candidates, run.candidates)
    _ok(f"{len(run.candidates)} candidates ({run.requested} requested, {run.cached} cached) -> {cfg.paths.candidates}")
    if run.failures:
        _fail(f"{len(run.failures)} requests failed; rerun extract to retry them")
        return EXIT_SERVICE
    return EXIT_OK


# ---------- triage ----------

def cmd_triage(args: argparse.Namespace, cfg: Config) -> int:
    session = TriageSession(
        _load_lexicon(cfg),
        cfg.paths.lexicon,
        cfg.paths.decision_log,
        decided_by=args.decided_by or "",
    )

    if args.decisions:
        path = Path(args.decisions)
        if not path.exists():
            raise ConfigError(f"decisions file not found: {path}")
        summary = session.replay(read_decisions(path))
        _ok(f"Replayed {len(summary.decided)} decisions ({len(summary.skipped)} already logged)")
        return EXIT_OK

    candidates = read_candidates(cfg.paths.candidates)
    titles = {}
    if cfg.paths.corpus.exists():
        titles = {p.paper_id: p.meta.title for p in load(cfg.paths.corpus).papers}
    session.titles = titles
    summary = session.run(candidates)
    _ok(f"{len(summary.decided)} decided, {len(summary.skipped)} skipped, {summary.remaining} pending")
    return EXIT_OK


# ---------- report ----------

def cmd_report(args: argparse.Namespace, cfg: Config) -> int:
    corpus, lexicon, table = _load_scan(cfg)
    options = AnalysisOptions(top_k=cfg.report.top_k)
    analysis = run_analysis(corpus, table.counts, lexicon, options)
    threshold = args.threshold if args.threshold is not None else cfg.report.sunburst_threshold
    manifest = emit_all(analysis, lexicon, cfg.paths.output_dir, force=args.force, threshold=threshold)
    _ok(f"{len(manifest['files'])} figure files ({', '.join(manifest['kinds'])}) -> {cfg.paths.output_dir / 'figures'}")
    return EXIT_OK


# ---------- parser ----------

COMMANDS = {
    "ingest": cmd_ingest,
    "scan": cmd_scan,
    "stats": cmd_stats,
    "extract": cmd_extract,
    "triage": cmd_triage,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lm-drift",
        description="Track how papers talk about language models and which models they name.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, help="YAML config file (default: ./lm_drift.yaml if present)")
    noise = parser.add_mutually_exclusive_group()
    noise.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    noise.add_argument("-q", "--quiet", action="store_true", help="warnings only, no progress bars")
    paths = parser.add_argument_group("path overrides")
    paths.add_argument("--corpus", type=Path, help="corpus file")
    paths.add_argument("--lexicon", type=Path, help="lexicon YAML file")
    paths.add_argument("--decision-log", type=Path, help="triage decision log")
    paths.add_argument("--counts", type=Path, help="counts file")
    paths.add_argument("--candidates", type=Path, help="extraction candidates file")
    paths.add_argument("--cache", type=Path, help="extraction response cache")
    paths.add_argument("--output-dir", type=Path, help="directory for stats and figures")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("ingest", help="add papers to the corpus file")
    p.add_argument("venue", nargs="?", help="venue, e.g. ACL")
    p.add_argument("year", nargs="?", type=int, help="year, e.g. 2023")
    p.add_argument("--from-text", metavar="DIR", help="directory with manifest.jsonl and text/<paper_id>.txt")
    p.add_argument("--venue-order", metavar="A,B,C", help="within-year venue order (default from config)")

    p = sub.add_parser("scan", help="count LM terms and model names per paper")
    p.add_argument("--scope", choices=SCOPES, help="text to scan (default from config: body)")
    p.add_argument("--workers", type=int, default=4, help="scan threads (default: 4)")

    p = sub.add_parser("stats", help="compute analyses and write stats report files")
    p.add_argument("--analysis", action="append", choices=ANALYSES, help="analysis to run; repeatable (default: all)")
    p.add_argument("--mode", choices=JACCARD_MODES, help="only this Jaccard mode")
    p.add_argument("--selector", choices=SELECTORS, help="only this majority selector")
    p.add_argument("--include-zero", action="store_true", help="count papers with N = 0 in majority rates")
    p.add_argument("--top-k", type=int, help="components kept in quartile contrasts (default from config)")

    p = sub.add_parser("extract", help="ask the chat service for candidate model names")
    p.add_argument("--endpoint", help="OpenAI-compatible base URL (default from config)")
    p.add_argument("--model", help="model name (default from config)")
    p.add_argument("--include-title", action="store_true", help="send the title along with the abstract")
    p.add_argument("--check", action="store_true", help="only check that the chat service is reachable")

    p = sub.add_parser("triage", help="review candidates and grow the lexicon")
    p.add_argument("--decisions", metavar="FILE", help="replay recorded decisions instead of prompting")
    p.add_argument("--decided-by", metavar="NAME", help="reviewer name stored with each decision")

    p = sub.add_parser("report", help="render charts from the current counts")
    p.add_argument("--force", action="store_true", help="replace an existing figures directory")
    p.add_argument("--threshold", type=float, help="sunburst collapse share (default from config: 0.005)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    configure_logging(args.verbose, args.quiet)
    try:
        cfg = load_config(args.config).with_paths(
            corpus=args.corpus,
            lexicon=args.lexicon,
            decision_log=args.decision_log,
            counts=args.counts,
            candidates=args.candidates,
            cache=args.cache,
            output_dir=args.output_dir,
        )
        return COMMANDS[args.command](args, cfg)
    except LmDriftError as e:
        _fail(str(e))
        return e.exit_code
    except KeyboardInterrupt:
        _fail("interrupted")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
