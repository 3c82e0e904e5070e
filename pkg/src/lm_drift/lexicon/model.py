"""
Lexicon data model - the generic LM term set and the model dictionary
(entries with aliases, variations and a dependency forest).
"""

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Dict, Iterator, List, Mapping, Optional, Pattern, Tuple

from ..errors import (
    ContainmentError,
    DependencyError,
    DuplicateAliasError,
    LexiconError,
    TermSetError,
    UnknownEntryError,
)


DEFAULT_L_TERMS = ("language model", "LLM", "PLM")


class TermRule(str, Enum):
    PHRASE = "phrase"    # case-insensitive substring
    ACRONYM = "acronym"  # case-sensitive, left neighbour not alphanumeric


def term_rule(term: str) -> TermRule:
    letters = [c for c in term if c.isalpha()]
    if letters and all(c.isupper() for c in letters):
        return TermRule.ACRONYM
    return TermRule.PHRASE


def acronym_pattern(term: str) -> Pattern[str]:
    return re.compile(r"(?<![A-Za-z0-9])" + re.escape(term))


def term_occurs_in(term: str, text: str) -> bool:
    """Whether ``term`` matches somewhere in ``text`` under its own rule."""
    if term_rule(term) is TermRule.ACRONYM:
        return acronym_pattern(term).search(text) is not None
    return term.lower() in text.lower()


@dataclass(frozen=True)
class LTermSet:
    terms: Tuple[str, ...] = DEFAULT_L_TERMS

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise TermSetError("L-term set must not be empty")
        if any(not t or t != t.strip() for t in terms):
            raise TermSetError("L-terms must be non-empty and trimmed")
        if len(set(terms)) != len(terms):
            raise TermSetError(f"duplicate L-term in {list(terms)}")
        for a in terms:
            for b in terms:
                if a != b and term_occurs_in(a, b):
                    raise TermSetError(f"L-term {a!r} matches inside {b!r}; occurrences would be double counted")

    def __iter__(self) -> Iterator[str]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class ModelEntry:
    """
    One model in the dictionary.

    ``entry_id`` is the canonical name and always equals ``aliases[0]``.
    Variations extend an alias ("T5-3B" for "T5"); they are recorded for
    curation but are never matched as patterns of their own.
    """
    entry_id: str
    aliases: Tuple[str, ...] = ()
    variations: Tuple[str, ...] = ()
    parent: Optional[str] = None

    def __post_init__(self):
        aliases = tuple(self.aliases) or (self.entry_id,)
        object.__setattr__(self, "aliases", aliases)
        object.__setattr__(self, "variations", tuple(self.variations))
        if any(not a or a != a.strip() for a in aliases):
            raise LexiconError(f"{self.entry_id!r}: aliases must be non-empty and trimmed")
        if self.entry_id != aliases[0]:
            raise LexiconError(f"{self.entry_id!r}: entry id must equal its first alias {aliases[0]!r}")
        if len(set(aliases)) != len(aliases):
            raise DuplicateAliasError(
                next(a for a in aliases if aliases.count(a) > 1), self.entry_id, self.entry_id
            )
        for v in self.variations:
            if not any(a in v for a in aliases):
                raise ContainmentError(v, self.entry_id)
        if self.parent == self.entry_id:
            raise DependencyError([self.entry_id, self.entry_id], "entry depends on itself")


@dataclass(frozen=True)
class Lexicon:
    l_terms: LTermSet = field(default_factory=LTermSet)
    entries: Mapping[str, ModelEntry] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", dict(self.entries))
        self._validate()

    # ---------- validation ----------

    def _validate(self) -> None:
        owner: Dict[str, str] = {}
        for key, entry in self.entries.items():
            if key != entry.entry_id:
                raise LexiconError(f"entry stored under {key!r} has id {entry.entry_id!r}")
            for alias in entry.aliases:
                if alias in owner:
                    raise DuplicateAliasError(alias, owner[alias], entry.entry_id)
                owner[alias] = entry.entry_id

        for entry in self.entries.values():
            if entry.parent is not None and entry.parent not in self.entries:
                raise DependencyError([entry.entry_id, entry.parent], "dangling parent")

        for entry_id in self.entries:
            chain = [entry_id]
            current = self.entries[entry_id].parent
            while current is not None:
                if current in chain:
                    raise DependencyError(chain + [current], "dependency cycle")
                chain.append(current)
                current = self.entries[current].parent

    # ---------- lookups ----------

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, entry_id: object) -> bool:
        return entry_id in self.entries

    def entry(self, entry_id: str) -> ModelEntry:
        try:
            return self.entries[entry_id]
        except KeyError:
            raise UnknownEntryError(entry_id) from None

    @cached_property
    def alias_index(self) -> Dict[str, str]:
        """alias -> owning entry_id"""
        return {a: e.entry_id for e in self.entries.values() for a in e.aliases}

    def alias_owner(self, alias: str) -> Optional[str]:
        return self.alias_index.get(alias)

    def root_of(self, entry_id: str) -> str:
        """Follow parent links to the forest root; a root is its own root."""
        current = self.entry(entry_id)
        while current.parent is not None:
            current = self.entries[current.parent]
        return current.entry_id

    def children(self, entry_id: str) -> List[str]:
        self.entry(entry_id)
        return sorted(e.entry_id for e in self.entries.values() if e.parent == entry_id)

    def roots(self) -> List[str]:
        return sorted(e.entry_id for e in self.entries.values() if e.parent is None)

    def components(self) -> Dict[str, List[str]]:
        """root -> all member entries (root included), sorted"""
        out: Dict[str, List[str]] = {}
        for entry_id in self.entries:
            out.setdefault(self.root_of(entry_id), []).append(entry_id)
        return {r: sorted(members) for r, members in sorted(out.items())}

    def depth(self) -> int:
        """Length of the longest root-to-leaf chain (0 for an empty lexicon)."""
        best = 0
        for entry_id in self.entries:
            d, current = 1, self.entries[entry_id]
            while current.parent is not None:
                d += 1
                current = self.entries[current.parent]
            best = max(best, d)
        return best

    # ---------- functional updates ----------

    def with_entry(self, entry: ModelEntry) -> "Lexicon":
        """New lexicon with ``entry`` added or replaced; fully revalidated."""
        entries = dict(self.entries)
        entries[entry.entry_id] = entry
        return replace(self, entries=entries)
