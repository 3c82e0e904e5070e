"""
Corpus store - one header record plus one paper record per line (UTF-8 JSON lines).

Header::

    {"record": "header", "kind": "corpus", "schema_version": 1, "paper_count": N}

Paper::

    {"record": "paper", "meta": {...PaperMeta...}, "body_text": "...",
     "sections": [["1 Introduction", 0], ...]}
"""

import logging
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, List

from ..errors import CorpusFormatError
from ..jsonl import read_jsonl, write_jsonl_atomic
from .models import Corpus, Paper, PaperMeta, Section

logger = logging.getLogger(__name__)


SCHEMA_VERSION = 1


def paper_to_record(paper: Paper) -> Dict[str, Any]:
    return {
        "record": "paper",
        "meta": asdict(paper.meta),
        "body_text": paper.body_text,
        "sections": [[s.title, s.char_offset] for s in paper.sections],
    }


def paper_from_record(record: Dict[str, Any]) -> Paper:
    meta = PaperMeta(**record["meta"])
    sections = tuple(Section(str(t), int(o)) for t, o in record.get("sections", []))
    return Paper(meta=meta, body_text=record["body_text"], sections=sections)


def store(corpus: Corpus, path: Path) -> None:
    header = {
        "record": "header",
        "kind": "corpus",
        "schema_version": SCHEMA_VERSION,
        "paper_count": len(corpus.papers),
    }
    write_jsonl_atomic(path, iter([header] + [paper_to_record(p) for p in corpus.papers]))
    logger.info("stored %d papers to %s", len(corpus.papers), path)


def load(path: Path) -> Corpus:
    """
    Load a corpus file.

    Raises:
        CorpusFormatError: missing/invalid header, malformed line (named by number),
            or a paper count that disagrees with the header.
    """
    path = Path(path)
    if not path.exists():
        raise CorpusFormatError(str(path), 0, "corpus file not found (run ingest first)")
    papers: List[Paper] = []
    header = None
    last_line = 0
    for line_number, record in read_jsonl(path, CorpusFormatError):
        last_line = line_number
        if header is None:
            if record.get("record") != "header" or record.get("kind") != "corpus":
                raise CorpusFormatError(str(path), line_number, "first record must be a corpus header")
            if record.get("schema_version") != SCHEMA_VERSION:
                raise CorpusFormatError(
                    str(path), line_number, f"unsupported schema_version {record.get('schema_version')!r}"
                )
            header = record
            continue
        if record.get("record") != "paper":
            raise CorpusFormatError(str(path), line_number, "expected a paper record")
        try:
            papers.append(paper_from_record(record))
        except (KeyError, TypeError, ValueError) as e:
            raise CorpusFormatError(str(path), line_number, f"bad paper record ({e})") from e

    if header is None:
        raise CorpusFormatError(str(path), 1, "empty file, no header")
    if header.get("paper_count") != len(papers):
        raise CorpusFormatError(
            str(path), last_line,
            f"header declares {header.get('paper_count')} papers, found {len(papers)}",
        )
    return Corpus.from_papers(papers)
