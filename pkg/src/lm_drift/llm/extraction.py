"""
Candidate model-name extraction: one chat request per paper abstract, raw
responses cached on disk, answers merged into a frequency-ranked candidate
list for human triage.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from tqdm import tqdm

from ..corpus.models import Paper
from ..errors import DataError, ExtractionServiceError, MissingCredentialError, RecordFormatError
from ..jsonl import append_jsonl, read_jsonl, repair_truncated_tail, write_jsonl_atomic
from ..lexicon.decisions import TriageDecision
from ..lexicon.model import Lexicon
from .client import ChatClient
from .prompts import build_prompt, parse_response

logger = logging.getLogger(__name__)


MAX_EXAMPLES = 5


@dataclass(frozen=True)
class CandidateName:
    surface: str
    frequency: int
    example_paper_ids: Tuple[str, ...] = ()
    decision: Optional[TriageDecision] = None

    def __post_init__(self):
        if not self.surface or self.surface != self.surface.strip():
            raise ValueError(f"candidate surface {self.surface!r} must be non-empty and trimmed")
        if self.frequency < 1:
            raise ValueError(f"{self.surface}: frequency must be >= 1")
        object.__setattr__(self, "example_paper_ids", tuple(self.example_paper_ids)[:MAX_EXAMPLES])

    @property
    def status(self) -> str:
        return "pending" if self.decision is None else "decided"


class ResponseCache:
    """
    Append-only JSONL cache of raw responses keyed by paper_id.

    Single writer: only the thread driving the run calls ``put``. A final
    line cut short by an interrupted append is dropped on load; damage
    anywhere else is an error.
    """

    def __init__(self, path: Path):
        self.path = Path(path)
        self._responses: Dict[str, str] = {}
        if self.path.exists():
            repair_truncated_tail(self.path)
            for line_number, record in read_jsonl(self.path):
                try:
                    self._responses[record["paper_id"]] = record["raw"]
                except KeyError as e:
                    raise RecordFormatError(str(self.path), line_number, f"bad cache record (missing {e})") from e

    def __contains__(self, paper_id: str) -> bool:
        return paper_id in self._responses

    def __len__(self) -> int:
        return len(self._responses)

    def get(self, paper_id: str) -> Optional[str]:
        return self._responses.get(paper_id)

    def put(self, paper_id: str, raw: str, model: str = "") -> None:
        append_jsonl(self.path, {"paper_id": paper_id, "model": model, "raw": raw})
        self._responses[paper_id] = raw

    def responses(self, paper_ids: Optional[Iterable[str]] = None) -> Dict[str, str]:
        if paper_ids is None:
            return dict(self._responses)
        return {pid: self._responses[pid] for pid in paper_ids if pid in self._responses}


@dataclass
class ExtractionRun:
    candidates: List[CandidateName]
    requested: int = 0
    cached: int = 0
    skipped: List[str] = field(default_factory=list)
    failures: Dict[str, str] = field(default_factory=dict)


def aggregate_candidates(responses: Mapping[str, str]) -> List[CandidateName]:
    """
    Merge raw responses into candidates by exact surface string.

    Frequency counts abstracts, not mentions. Ranked by frequency descending,
    then surface; the result does not depend on input order.
    """
    papers_by_surface: Dict[str, set] = {}
    for paper_id, raw in responses.items():
        for surface in set(parse_response(raw)):
            papers_by_surface.setdefault(surface, set()).add(paper_id)

    candidates = [
        CandidateName(surface=s, frequency=len(ids), example_paper_ids=tuple(sorted(ids)))
        for s, ids in papers_by_surface.items()
    ]
    candidates.sort(key=lambda c: (-c.frequency, c.surface))
    return candidates


def run_extraction(
    papers: Sequence[Paper],
    client: ChatClient,
    cache: ResponseCache,
    max_workers: int = 4,
    include_title: bool = False,
    credential_env: Optional[str] = None,
    progress: bool = False,
) -> ExtractionRun:
    """
    Request candidates for every paper not yet in ``cache``, then aggregate
    over all cached responses for ``papers``.

    A fully cached run makes no network calls. Per-paper service failures are
    recorded and skipped; they are retried on the next run.

    Raises:
        MissingCredentialError: requests are needed, ``credential_env`` is set,
            and the client has no API key
    """
    pending = [p for p in papers if p.paper_id not in cache]
    run = ExtractionRun(candidates=[], cached=len(papers) - len(pending))

    if pending and credential_env and not client.api_key:
        raise MissingCredentialError(credential_env)

    requests_ = []
    for paper in pending:
        try:
            requests_.append(build_prompt(paper.meta.title, paper.meta.abstract, paper.paper_id, include_title))
        except DataError:
            logger.warning("%s: empty abstract, skipped", paper.paper_id)
            run.skipped.append(paper.paper_id)

    def work(request):
        try:
            return request.paper_id, client.complete(request), None
        except ExtractionServiceError as e:
            return request.paper_id, None, str(e)

    if requests_:
        with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
            results = executor.map(work, requests_)
            for paper_id, raw, error in tqdm(results, total=len(requests_), desc="Extracting", disable=not progress):
                if error is not None:
                    logger.warning("extraction failed for %s: %s", paper_id, error)
                    run.failures[paper_id] = error
                    continue
                cache.put(paper_id, raw, client.model)
                run.requested += 1

    run.candidates = aggregate_candidates(cache.responses(p.paper_id for p in papers))
    logger.info(
        "extraction: %d requested, %d cached, %d failed, %d candidates",
        run.requested, run.cached, len(run.failures), len(run.candidates),
    )
    return run


# ---------- suggestions ----------

class SuggestionKind(str, Enum):
    ALREADY_ALIAS = "already_alias"
    VARIATION_OF = "variation_of"
    POSSIBLE_ALIAS_OF = "possible_alias_of"
    NEW_OR_DISCARD = "new_or_discard"


@dataclass(frozen=True)
class Suggestion:
    kind: SuggestionKind
    entry_id: Optional[str] = None

    @property
    def label(self) -> str:
        return f"{self.kind.value}({self.entry_id})" if self.entry_id else self.kind.value


def suggest_classification(candidate: str, lexicon: Lexicon) -> Suggestion:
    """
    Advisory classification of a candidate against the lexicon.

    Checked in order: exact alias, contains an alias (longest alias wins,
    ties by alias string), case-insensitive alias match, otherwise new or
    discard.
    """
    owner = lexicon.alias_owner(candidate)
    if owner is not None:
        return Suggestion(SuggestionKind.ALREADY_ALIAS, owner)

    contained = [a for a in lexicon.alias_index if a in candidate]
    if contained:
        best = min(contained, key=lambda a: (-len(a), a))
        return Suggestion(SuggestionKind.VARIATION_OF, lexicon.alias_index[best])

    folded = candidate.casefold()
    matches = sorted(a for a in lexicon.alias_index if a.casefold() == folded)
    if matches:
        return Suggestion(SuggestionKind.POSSIBLE_ALIAS_OF, lexicon.alias_index[matches[0]])

    return Suggestion(SuggestionKind.NEW_OR_DISCARD)


# ---------- candidates file ----------

def write_candidates(path: Path, candidates: Sequence[CandidateName]) -> None:
    write_jsonl_atomic(path, [
        {"surface": c.surface, "frequency": c.frequency, "example_paper_ids": list(c.example_paper_ids)}
        for c in candidates
    ])


def read_candidates(path: Path) -> List[CandidateName]:
    path = Path(path)
    if not path.exists():
        raise RecordFormatError(str(path), 0, "candidates file not found (run extract first)")
    out = []
    for line_number, record in read_jsonl(path):
        try:
            out.append(CandidateName(
                surface=record["surface"],
                frequency=int(record["frequency"]),
                example_paper_ids=tuple(record.get("example_paper_ids", ())),
            ))
        except (KeyError, TypeError, ValueError) as e:
            raise RecordFormatError(str(path), line_number, f"bad candidate record ({e})") from e
    return out


def mark_decided(candidates: Sequence[CandidateName], decisions: Iterable[TriageDecision]) -> List[CandidateName]:
    """Attach the latest logged decision to each candidate it concerns."""
    latest = {d.candidate: d for d in decisions}
    return [
        CandidateName(c.surface, c.frequency, c.example_paper_ids, latest.get(c.surface))
        for c in candidates
    ]
