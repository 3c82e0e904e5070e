"""
From-text ingestion - builds a corpus from pre-extracted page text, bypassing PDFs.

Directory layout::

    <dir>/manifest.jsonl      one PaperMeta record per line (no ordinal)
    <dir>/text/<paper_id>.txt raw page text, pages separated by form feeds
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from ..errors import CorpusFormatError
from .body_text import ExtractionOptions, extract_body
from .models import Corpus, Paper, PaperMeta, assign_ordinals

logger = logging.getLogger(__name__)


MANIFEST_NAME = "manifest.jsonl"
TEXT_DIR = "text"


def _read_manifest(path: Path) -> List[PaperMeta]:
    metas = []
    with open(path, "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                metas.append(PaperMeta(
                    paper_id=record["paper_id"],
                    venue=record["venue"],
                    year=int(record["year"]),
                    ordinal=0,
                    title=record.get("title", ""),
                    abstract=record.get("abstract", ""),
                    source_url=record.get("source_url"),
                ))
            except (ValueError, KeyError, TypeError) as e:
                raise CorpusFormatError(str(path), line_number, f"bad manifest record ({e})") from e
    return metas


def load_text_dir(
    directory: Path,
    venue_order: Sequence[str],
    options: ExtractionOptions = ExtractionOptions(),
) -> Tuple[Corpus, Dict[str, List[str]]]:
    """
    Ingest a from-text directory.

    Returns:
        (corpus, warnings mapping paper_id -> extract_body warnings)

    Raises:
        CorpusFormatError: unreadable manifest or a missing text file
        UnknownVenueError: a venue absent from ``venue_order``
    """
    directory = Path(directory)
    manifest = directory / MANIFEST_NAME
    if not manifest.exists():
        raise CorpusFormatError(str(manifest), 0, "manifest not found")

    metas = assign_ordinals(_read_manifest(manifest), venue_order)
    papers = []
    warnings: Dict[str, List[str]] = {}
    for line_number, meta in enumerate(metas, start=1):
        text_path = directory / TEXT_DIR / f"{meta.paper_id}.txt"
        if not text_path.exists():
            raise CorpusFormatError(str(manifest), line_number, f"no text file for {meta.paper_id}")
        raw = text_path.read_text(encoding="utf-8")
        extraction = extract_body(raw, options)
        if extraction.warnings:
            warnings[meta.paper_id] = extraction.warnings
            logger.info("%s: %s", meta.paper_id, ", ".join(extraction.warnings))
        papers.append(Paper(meta=meta, body_text=extraction.body_text, sections=tuple(extraction.sections)))
    return Corpus.from_papers(papers), warnings
