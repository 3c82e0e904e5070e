"""
Triage decisions and the append-only decision log kept beside the lexicon.
"""

import dataclasses
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from ..errors import DuplicateAliasError, LexiconError, RecordFormatError
from ..jsonl import append_jsonl, read_jsonl
from .model import Lexicon, ModelEntry

logger = logging.getLogger(__name__)


class Action(str, Enum):
    NEW_ENTRY = "new_entry"
    ALIAS_OF = "alias_of"
    VARIATION_OF = "variation_of"
    DISCARD = "discard"


TARGETED = (Action.ALIAS_OF, Action.VARIATION_OF)


def utc_timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class TriageDecision:
    """
    A human verdict on one candidate name.

    ``target`` is the entry for alias_of / variation_of; ``parent`` optionally
    places a new entry under an existing one.
    """
    candidate: str
    action: Action
    target: Optional[str] = None
    parent: Optional[str] = None
    decided_by: str = ""
    timestamp: str = field(default_factory=utc_timestamp)

    def __post_init__(self):
        object.__setattr__(self, "action", Action(self.action))
        if not self.candidate or self.candidate != self.candidate.strip():
            raise LexiconError(f"candidate {self.candidate!r} must be non-empty and trimmed")
        if self.action in TARGETED and not self.target:
            raise LexiconError(f"{self.action.value} decision for {self.candidate!r} needs a target entry")
        if self.action not in TARGETED and self.target is not None:
            raise LexiconError(f"{self.action.value} decision for {self.candidate!r} takes no target")
        if self.parent is not None and self.action is not Action.NEW_ENTRY:
            raise LexiconError("only new_entry decisions carry a parent")

    @property
    def label(self) -> str:
        if self.action in TARGETED:
            return f"{self.action.value}({self.target})"
        return self.action.value

    def to_record(self) -> Dict[str, Any]:
        record = dataclasses.asdict(self)
        record["action"] = self.action.value
        return record

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> "TriageDecision":
        return cls(
            candidate=record["candidate"],
            action=Action(record["action"]),
            target=record.get("target"),
            parent=record.get("parent"),
            decided_by=record.get("decided_by", ""),
            timestamp=record.get("timestamp", ""),
        )


def apply_decision(lexicon: Lexicon, decision: TriageDecision) -> Lexicon:
    """
    Apply one decision, returning a new, fully revalidated lexicon.

    The input lexicon is never modified; a rejected decision leaves nothing
    half-applied.

    Raises:
        UnknownEntryError: target or parent does not exist
        DuplicateAliasError: the candidate is already an alias somewhere
        ContainmentError: a variation that contains none of the target's aliases
    """
    candidate = decision.candidate

    if decision.action is Action.DISCARD:
        logger.info("discarded candidate %r (%s)", candidate, decision.decided_by or "unknown")
        return lexicon

    if decision.action is Action.NEW_ENTRY:
        owner = lexicon.alias_owner(candidate)
        if owner is not None:
            raise DuplicateAliasError(candidate, owner, candidate)
        if decision.parent is not None:
            lexicon.entry(decision.parent)
        return lexicon.with_entry(ModelEntry(entry_id=candidate, aliases=(candidate,), parent=decision.parent))

    target = lexicon.entry(decision.target)

    if decision.action is Action.ALIAS_OF:
        owner = lexicon.alias_owner(candidate)
        if owner is not None:
            raise DuplicateAliasError(candidate, owner, target.entry_id)
        return lexicon.with_entry(dataclasses.replace(target, aliases=target.aliases + (candidate,)))

    # variation_of
    owner = lexicon.alias_owner(candidate)
    if owner is not None:
        raise DuplicateAliasError(candidate, owner, target.entry_id)
    if candidate in target.variations:
        return lexicon
    return lexicon.with_entry(dataclasses.replace(target, variations=target.variations + (candidate,)))


def replay_decisions(lexicon: Lexicon, decisions: Iterable[TriageDecision]) -> Lexicon:
    for decision in decisions:
        lexicon = apply_decision(lexicon, decision)
    return lexicon


def append_decision(path: Path, decision: TriageDecision) -> None:
    append_jsonl(path, decision.to_record())


def read_decisions(path: Path) -> List[TriageDecision]:
    """Read a decision log; a missing file is an empty log."""
    path = Path(path)
    if not path.exists():
        return []
    decisions = []
    for line_number, record in read_jsonl(path):
        try:
            decisions.append(TriageDecision.from_record(record))
        except (KeyError, ValueError, LexiconError) as e:
            raise RecordFormatError(str(path), line_number, f"bad decision record ({e})") from e
    return decisions
