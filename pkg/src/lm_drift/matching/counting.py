"""
Counting functions over paper text.

- N^L: occurrences of the generic LM terms
- N_m: occurrences of one model entry (any of its aliases)
- N:   sum of N_m over all entries
- M:   the entries with N_m > 0
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

import ahocorasick
from tqdm import tqdm

from ..corpus.models import Corpus, Paper
from ..lexicon.model import LTermSet, Lexicon, TermRule, acronym_pattern, term_rule

logger = logging.getLogger(__name__)


SCOPES = ("body", "abstract")


@dataclass(frozen=True)
class PaperCounts:
    paper_id: str
    n_l: int = 0
    per_term_l: Mapping[str, int] = field(default_factory=dict)
    per_entry: Mapping[str, int] = field(default_factory=dict)
    n: int = 0

    def __post_init__(self):
        object.__setattr__(self, "per_term_l", dict(self.per_term_l))
        object.__setattr__(self, "per_entry", {k: v for k, v in self.per_entry.items() if v})
        if any(v < 0 for v in self.per_entry.values()) or any(v < 0 for v in self.per_term_l.values()):
            raise ValueError(f"{self.paper_id}: negative count")
        if self.n != sum(self.per_entry.values()):
            raise ValueError(f"{self.paper_id}: n={self.n} but entries sum to {sum(self.per_entry.values())}")
        if self.n_l != sum(self.per_term_l.values()):
            raise ValueError(f"{self.paper_id}: n_l={self.n_l} but terms sum to {sum(self.per_term_l.values())}")

    @classmethod
    def build(cls, paper_id: str, per_term_l: Mapping[str, int], per_entry: Mapping[str, int]) -> "PaperCounts":
        return cls(
            paper_id=paper_id,
            n_l=sum(per_term_l.values()),
            per_term_l=per_term_l,
            per_entry=per_entry,
            n=sum(per_entry.values()),
        )

    @property
    def present_models(self) -> frozenset:
        return frozenset(self.per_entry)

    @property
    def lm_related(self) -> bool:
        return self.n_l > 0

    def count_of(self, entries: Iterable[str]) -> int:
        """N_M for a set of entries."""
        return sum(self.per_entry.get(e, 0) for e in set(entries))


class Span(NamedTuple):
    start: int
    end: int
    alias: str
    entry_id: str


def _left_boundary_ok(text: str, start: int) -> bool:
    if start == 0:
        return True
    prev = text[start - 1]
    return not (prev.isascii() and prev.isalpha())


class AliasMatcher:
    """
    Compiled alias scanner for one lexicon.

    Leftmost-longest, non-overlapping, case-sensitive. An alias may only start
    where the preceding character is not an ASCII letter; the right side is
    open, so "T5-3B" counts as T5. Immutable after construction and safe to
    share across threads.
    """

    def __init__(self, lexicon: Lexicon):
        self.automaton = ahocorasick.Automaton()
        for entry in lexicon.entries.values():
            for alias in entry.aliases:
                self.automaton.add_word(alias, (alias, entry.entry_id))
        if len(self.automaton):
            self.automaton.make_automaton()

    def spans(self, text: str) -> List[Span]:
        if not len(self.automaton) or not text:
            return []
        candidates = [
            Span(end_index + 1 - len(alias), end_index + 1, alias, entry_id)
            for end_index, (alias, entry_id) in self.automaton.iter(text)
            if _left_boundary_ok(text, end_index + 1 - len(alias))
        ]
        candidates.sort(key=lambda s: (s.start, s.start - s.end))

        chosen: List[Span] = []
        cursor = 0
        for span in candidates:
            if span.start >= cursor:
                chosen.append(span)
                cursor = span.end
        return chosen

    def count(self, text: str) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for span in self.spans(text):
            counts[span.entry_id] = counts.get(span.entry_id, 0) + 1
        return counts


def count_lm_terms(text: str, l_terms: LTermSet) -> Tuple[int, Dict[str, int]]:
    """
    Count generic LM term occurrences, non-overlapping and left to right per term.

    Phrase terms match case-insensitively anywhere ("language models",
    "large language modeling"); all-caps acronyms match case-sensitively where
    the left neighbour is not alphanumeric ("LLMs" and "LLM-based" count,
    "XLLM" does not).
    """
    lowered = None
    per_term: Dict[str, int] = {}
    for term in l_terms:
        if term_rule(term) is TermRule.ACRONYM:
            per_term[term] = sum(1 for _ in acronym_pattern(term).finditer(text))
        else:
            if lowered is None:
                lowered = text.lower()
            per_term[term] = lowered.count(term.lower())
    return sum(per_term.values()), per_term


def count_models(text: str, lexicon: Lexicon, matcher: Optional[AliasMatcher] = None) -> Dict[str, int]:
    """N_m for every entry present in ``text``; zero counts are omitted."""
    return (matcher or AliasMatcher(lexicon)).count(text)


def scan_text(paper_id: str, text: str, lexicon: Lexicon, matcher: Optional[AliasMatcher] = None) -> PaperCounts:
    _, per_term = count_lm_terms(text, lexicon.l_terms)
    return PaperCounts.build(paper_id, per_term, count_models(text, lexicon, matcher))


def scan_paper(
    paper: Paper,
    lexicon: Lexicon,
    scope: str = "body",
    matcher: Optional[AliasMatcher] = None,
) -> PaperCounts:
    """Count over the body text (default setup) or, with scope="abstract", the abstract."""
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}, got {scope!r}")
    text = paper.body_text if scope == "body" else paper.meta.abstract
    return scan_text(paper.paper_id, text, lexicon, matcher)


def scan_corpus(
    corpus: Corpus,
    lexicon: Lexicon,
    scope: str = "body",
    max_workers: int = 4,
    progress: bool = False,
) -> List[PaperCounts]:
    """Scan every paper; output ordered by paper_id regardless of worker scheduling."""
    matcher = AliasMatcher(lexicon)

    def work(paper: Paper) -> PaperCounts:
        return scan_paper(paper, lexicon, scope, matcher)

    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        results = list(tqdm(
            executor.map(work, corpus.papers),
            total=len(corpus.papers),
            desc="Scanning",
            disable=not progress,
        ))
    logger.info("scanned %d papers (%s scope)", len(results), scope)
    return sorted(results, key=lambda c: c.paper_id)
