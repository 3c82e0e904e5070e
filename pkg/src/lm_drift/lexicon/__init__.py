"""
Keyword sets: the generic LM term set and the model dictionary.
"""

from pathlib import Path

from .model import DEFAULT_L_TERMS, LTermSet, Lexicon, ModelEntry, TermRule, term_rule
from .io import dump_lexicon, lexicon_digest, parse_lexicon, write_lexicon
from .decisions import (
    Action,
    TriageDecision,
    append_decision,
    apply_decision,
    read_decisions,
    replay_decisions,
)

DATA_DIR = Path(__file__).parent / "data"
SEED_LEXICON_PATH = DATA_DIR / "seed_lexicon.yaml"
DEMO_LEXICON_PATH = DATA_DIR / "demo_lexicon.yaml"


def seed_lexicon() -> Lexicon:
    return parse_lexicon(SEED_LEXICON_PATH)


def demo_lexicon() -> Lexicon:
    return parse_lexicon(DEMO_LEXICON_PATH)


def root_of(lexicon: Lexicon, entry_id: str) -> str:
    return lexicon.root_of(entry_id)


__all__ = [
    "DEFAULT_L_TERMS",
    "LTermSet",
    "Lexicon",
    "ModelEntry",
    "TermRule",
    "term_rule",
    "dump_lexicon",
    "lexicon_digest",
    "parse_lexicon",
    "write_lexicon",
    "Action",
    "TriageDecision",
    "append_decision",
    "apply_decision",
    "read_decisions",
    "replay_decisions",
    "seed_lexicon",
    "demo_lexicon",
    "root_of",
    "SEED_LEXICON_PATH",
    "DEMO_LEXICON_PATH",
]
