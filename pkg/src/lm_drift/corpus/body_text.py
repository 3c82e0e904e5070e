"""
Body-text post-processing - turns raw page text into the "default setup" body:
page footers removed, section titles detected, text cut before References.
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass
from typing import List, NamedTuple, Pattern, Tuple

from .models import Section

logger = logging.getLogger(__name__)


PAGE_BREAK = "\f"

WARN_EMPTY = "empty-input"
WARN_NO_REFERENCES = "no-references-heading"

DEFAULT_SECTION_TITLES = (
    "Abstract",
    "Introduction",
    "Related Work",
    "Background",
    "Method",
    "Methods",
    "Methodology",
    "Approach",
    "Experiments",
    "Experimental Setup",
    "Results",
    "Analysis",
    "Discussion",
    "Conclusion",
    "Conclusions",
    "Limitations",
    "Ethics Statement",
    "Ethical Considerations",
    "Acknowledgments",
    "Acknowledgements",
)


@dataclass(frozen=True)
class ExtractionOptions:
    """Footer and heading rules used by ``extract_body``."""
    footer_page_fraction: float = 0.5
    reference_titles: Tuple[str, ...] = ("references", "bibliography")
    section_titles: Tuple[str, ...] = DEFAULT_SECTION_TITLES
    max_heading_words: int = 10

    def references_pattern(self) -> Pattern[str]:
        titles = "|".join(re.escape(t) for t in self.reference_titles)
        # optional section number: "7", "7.", "VII."
        return re.compile(rf"^(?:(?:\d+|[IVXLC]+)\.?\s*)?(?:{titles})$", re.IGNORECASE)


# "3 Method", "4.2 Results on GLUE", "A.1 Prompts"
NUMBERED_HEADING = re.compile(r"^(?:\d+(?:\.\d+)*|[A-Z](?:\.\d+)+)\.?\s+([A-Z][^.:;!?]*)$")


class BodyExtraction(NamedTuple):
    body_text: str
    sections: List[Section]
    warnings: List[str]


def _footer_lines(pages: List[List[str]], fraction: float) -> set:
    if len(pages) < 2:
        return set()
    seen = Counter()
    for lines in pages:
        seen.update({ln.strip() for ln in lines if ln.strip()})
    # a footer repeats; a line seen on one page never is
    threshold = max(2.0, fraction * len(pages))
    return {line for line, n in seen.items() if n >= threshold}


def _strip_footers(raw_text: str, options: ExtractionOptions) -> Tuple[str, int]:
    pages = [page.split("\n") for page in raw_text.split(PAGE_BREAK)]
    footers = _footer_lines(pages, options.footer_page_fraction)
    kept = [ln for lines in pages for ln in lines if ln.strip() not in footers]
    removed = sum(len(lines) for lines in pages) - len(kept)
    return "\n".join(kept), removed


def _line_starts(text: str) -> List[Tuple[int, str]]:
    out = []
    offset = 0
    for line in text.split("\n"):
        out.append((offset, line))
        offset += len(line) + 1
    return out


def _is_section_heading(line: str, options: ExtractionOptions, titles: set) -> bool:
    stripped = line.strip()
    if not stripped:
        return False
    if stripped.lower() in titles:
        return True
    m = NUMBERED_HEADING.match(stripped)
    if not m:
        return False
    return len(m.group(1).split()) <= options.max_heading_words


def extract_body(raw_text: str, options: ExtractionOptions = ExtractionOptions()) -> BodyExtraction:
    """
    Post-process raw page text into body text.

    Pages are separated by form feeds. A trimmed line present on at least
    ``footer_page_fraction`` of the pages is a footer and removed. The text is
    cut immediately before the last standalone references heading, and any
    earlier references heading lines are dropped, so extracting a body again
    returns it unchanged. Without a heading the cleaned text is returned with
    a ``no-references-heading`` warning.

    Args:
        raw_text: Extracted page text from any PDF extractor
        options: Footer and heading rules

    Returns:
        BodyExtraction(body_text, sections, warnings)
    """
    if not raw_text or not raw_text.strip():
        return BodyExtraction("", [], [WARN_EMPTY])

    text = raw_text.replace("\r\n", "\n").replace("\r", "\n")
    cleaned, removed = _strip_footers(text, options)
    if removed:
        logger.debug("removed %d footer lines", removed)

    warnings: List[str] = []
    ref_heading = options.references_pattern()
    lines = _line_starts(cleaned)
    headings = [offset for offset, line in lines if ref_heading.match(line.strip())]
    if not headings:
        body = cleaned
        warnings.append(WARN_NO_REFERENCES)
    else:
        body = cleaned[:headings[-1]]
        if len(headings) > 1:
            body = "\n".join(ln for ln in body.split("\n") if not ref_heading.match(ln.strip()))
            logger.debug("dropped %d earlier references heading lines", len(headings) - 1)

    titles = {t.lower() for t in options.section_titles}
    sections = [
        Section(line.strip(), offset)
        for offset, line in _line_starts(body)
        if offset < len(body) and _is_section_heading(line, options, titles)
    ]
    return BodyExtraction(body, sections, warnings)
