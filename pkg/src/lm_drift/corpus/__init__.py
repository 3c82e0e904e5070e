"""
Corpus acquisition, body-text post-processing and storage.
"""

from .models import ConferenceKey, Corpus, Paper, PaperMeta, Section, assign_ordinals
from .body_text import BodyExtraction, ExtractionOptions, extract_body
from .anthology import fetch_metadata, fetch_papers, make_session
from .text_dir import load_text_dir
from .store import load, store

__all__ = [
    "ConferenceKey",
    "Corpus",
    "Paper",
    "PaperMeta",
    "Section",
    "assign_ordinals",
    "BodyExtraction",
    "ExtractionOptions",
    "extract_body",
    "fetch_metadata",
    "fetch_papers",
    "make_session",
    "load_text_dir",
    "load",
    "store",
]
