"""
Corpus data model - paper metadata, post-processed papers, conference index
"""

import dataclasses
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from ..errors import DuplicatePaperError, UnknownVenueError


class ConferenceKey(NamedTuple):
    """One conference edition; ordinal is its chronological position in the corpus."""
    venue: str
    year: int
    ordinal: int = 0

    @property
    def label(self) -> str:
        return f"{self.venue} {self.year}"

    @property
    def slug(self) -> str:
        return f"{self.venue.lower()}-{self.year}"


@dataclass(frozen=True)
class PaperMeta:
    paper_id: str
    venue: str
    year: int
    ordinal: int
    title: str
    abstract: str
    source_url: Optional[str] = None

    def __post_init__(self):
        if not self.paper_id:
            raise ValueError("paper_id must be non-empty")

    @property
    def conference(self) -> ConferenceKey:
        return ConferenceKey(self.venue, self.year, self.ordinal)


@dataclass(frozen=True)
class Section:
    title: str
    char_offset: int


@dataclass(frozen=True)
class Paper:
    meta: PaperMeta
    body_text: str
    sections: Tuple[Section, ...] = ()

    @property
    def paper_id(self) -> str:
        return self.meta.paper_id


@dataclass(frozen=True)
class Corpus:
    """
    Immutable collection of papers with a (venue, year) -> paper ids index.

    Build it with ``Corpus.from_papers`` so the index always matches the papers.
    """
    papers: Tuple[Paper, ...] = ()
    conference_index: Mapping[Tuple[str, int], Tuple[str, ...]] = field(default_factory=dict)

    @classmethod
    def from_papers(cls, papers: Iterable[Paper]) -> "Corpus":
        papers = tuple(papers)
        seen = set()
        index: Dict[Tuple[str, int], List[str]] = {}
        for p in papers:
            if p.paper_id in seen:
                raise DuplicatePaperError(p.paper_id)
            seen.add(p.paper_id)
            index.setdefault((p.meta.venue, p.meta.year), []).append(p.paper_id)
        return cls(papers=papers, conference_index={k: tuple(v) for k, v in index.items()})

    def __len__(self) -> int:
        return len(self.papers)

    def get(self, paper_id: str) -> Paper:
        for p in self.papers:
            if p.paper_id == paper_id:
                return p
        raise KeyError(paper_id)

    def by_id(self) -> Dict[str, Paper]:
        return {p.paper_id: p for p in self.papers}

    def conferences(self) -> List[ConferenceKey]:
        """Conference keys in chronological (ordinal) order."""
        keys = {p.meta.conference for p in self.papers}
        return sorted(keys, key=lambda k: (k.ordinal, k.year, k.venue))

    def papers_for(self, venue: str, year: int) -> List[Paper]:
        lookup = self.by_id()
        return [lookup[pid] for pid in self.conference_index.get((venue, year), ())]

    def merge(self, other: "Corpus", venue_order: Sequence[str]) -> "Corpus":
        """Papers of ``other`` replace same-id papers of self; ordinals recomputed."""
        replaced = {p.paper_id for p in other.papers}
        kept = [p for p in self.papers if p.paper_id not in replaced]
        combined = kept + list(other.papers)
        metas = assign_ordinals([p.meta for p in combined], venue_order)
        by_id = {m.paper_id: m for m in metas}
        return Corpus.from_papers(
            dataclasses.replace(p, meta=by_id[p.paper_id]) for p in combined
        )


def assign_ordinals(metas: Sequence[PaperMeta], venue_order: Sequence[str]) -> List[PaperMeta]:
    """
    Number conferences chronologically: by year, then by position of the venue
    in ``venue_order`` within the year.

    Raises:
        UnknownVenueError: a venue missing from ``venue_order``.
    """
    rank = {v: i for i, v in enumerate(venue_order)}
    for m in metas:
        if m.venue not in rank:
            raise UnknownVenueError(m.venue, venue_order)
    editions = sorted({(m.year, rank[m.venue], m.venue) for m in metas})
    ordinal = {(venue, year): i + 1 for i, (year, _, venue) in enumerate(editions)}
    return [dataclasses.replace(m, ordinal=ordinal[(m.venue, m.year)]) for m in metas]
