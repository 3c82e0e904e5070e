"""
Counting functions: generic LM terms and model aliases.
"""

from .counting import (
    AliasMatcher,
    PaperCounts,
    SCOPES,
    Span,
    count_lm_terms,
    count_models,
    scan_corpus,
    scan_paper,
    scan_text,
)
from .store import CountsTable, file_digest, read_counts, write_counts

__all__ = [
    "AliasMatcher",
    "PaperCounts",
    "SCOPES",
    "Span",
    "count_lm_terms",
    "count_models",
    "scan_corpus",
    "scan_paper",
    "scan_text",
    "CountsTable",
    "file_digest",
    "read_counts",
    "write_counts",
]
