"""
Counts file - header plus one PaperCounts record per paper, ordered by paper_id.

Header::

    {"record": "header", "kind": "counts", "schema_version": 1, "scope": "body",
     "paper_count": N, "lexicon_digest": "<sha256>"}
"""

import hashlib
import logging
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Sequence

from ..errors import RecordFormatError
from ..jsonl import read_jsonl, write_jsonl_atomic
from .counting import PaperCounts

logger = logging.getLogger(__name__)


SCHEMA_VERSION = 1


class CountsTable(NamedTuple):
    scope: str
    counts: List[PaperCounts]
    lexicon_digest: Optional[str] = None

    def by_id(self) -> Dict[str, PaperCounts]:
        return {c.paper_id: c for c in self.counts}


def counts_to_record(c: PaperCounts) -> Dict[str, Any]:
    return {
        "record": "counts",
        "paper_id": c.paper_id,
        "n_l": c.n_l,
        "per_term_l": dict(c.per_term_l),
        "per_entry": dict(c.per_entry),
        "n": c.n,
    }


def counts_from_record(record: Dict[str, Any]) -> PaperCounts:
    return PaperCounts(
        paper_id=record["paper_id"],
        n_l=int(record["n_l"]),
        per_term_l={k: int(v) for k, v in record["per_term_l"].items()},
        per_entry={k: int(v) for k, v in record["per_entry"].items()},
        n=int(record["n"]),
    )


def write_counts(
    path: Path,
    counts: Sequence[PaperCounts],
    scope: str,
    lexicon_digest: Optional[str] = None,
) -> None:
    ordered = sorted(counts, key=lambda c: c.paper_id)
    header = {
        "record": "header",
        "kind": "counts",
        "schema_version": SCHEMA_VERSION,
        "scope": scope,
        "paper_count": len(ordered),
        "lexicon_digest": lexicon_digest,
    }
    write_jsonl_atomic(path, [header] + [counts_to_record(c) for c in ordered])
    logger.info("wrote counts for %d papers to %s", len(ordered), path)


def read_counts(path: Path) -> CountsTable:
    """
    Raises:
        RecordFormatError: missing file, bad header, malformed record or count mismatch
    """
    path = Path(path)
    if not path.exists():
        raise RecordFormatError(str(path), 0, "counts file not found (run scan first)")
    header = None
    counts: List[PaperCounts] = []
    for line_number, record in read_jsonl(path):
        if header is None:
            if record.get("record") != "header" or record.get("kind") != "counts":
                raise RecordFormatError(str(path), line_number, "first record must be a counts header")
            if record.get("schema_version") != SCHEMA_VERSION:
                raise RecordFormatError(str(path), line_number, f"unsupported schema_version {record.get('schema_version')!r}")
            header = record
            continue
        try:
            counts.append(counts_from_record(record))
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise RecordFormatError(str(path), line_number, f"bad counts record ({e})") from e
    if header is None:
        raise RecordFormatError(str(path), 1, "empty file, no header")
    if header.get("paper_count") != len(counts):
        raise RecordFormatError(str(path), 0, f"header declares {header.get('paper_count')} records, found {len(counts)}")
    return CountsTable(scope=header.get("scope", "body"), counts=counts, lexicon_digest=header.get("lexicon_digest"))


def file_digest(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
