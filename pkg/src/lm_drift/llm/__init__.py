"""
LLM-assisted candidate extraction for lexicon curation.
"""

from .client import ChatClient
from .prompts import SYSTEM_PROMPT, USER_TEMPLATE, ExtractionRequest, build_prompt, parse_response
from .extraction import (
    CandidateName,
    ExtractionRun,
    ResponseCache,
    Suggestion,
    SuggestionKind,
    aggregate_candidates,
    mark_decided,
    read_candidates,
    run_extraction,
    suggest_classification,
    write_candidates,
)

__all__ = [
    "ChatClient",
    "SYSTEM_PROMPT",
    "USER_TEMPLATE",
    "ExtractionRequest",
    "build_prompt",
    "parse_response",
    "CandidateName",
    "ExtractionRun",
    "ResponseCache",
    "Suggestion",
    "SuggestionKind",
    "aggregate_candidates",
    "mark_decided",
    "read_candidates",
    "run_extraction",
    "suggest_classification",
    "write_candidates",
]
