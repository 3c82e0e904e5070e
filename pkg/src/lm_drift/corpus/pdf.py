"""
PDF adapter - the only place that knows about PDFs. Returns raw page text with
pages separated by form feeds, ready for ``extract_body``.
"""

import io
import logging
from pathlib import Path
from typing import Union

from pypdf import PdfReader
from pypdf.errors import PdfReadError

from ..errors import DataError
from .body_text import PAGE_BREAK

logger = logging.getLogger(__name__)


def read_pdf_text(source: Union[str, Path, bytes]) -> str:
    """
    Extract page text from a PDF file path or raw PDF bytes.

    Raises:
        DataError: the PDF cannot be parsed.
    """
    stream = io.BytesIO(source) if isinstance(source, (bytes, bytearray)) else str(source)
    try:
        reader = PdfReader(stream)
        pages = [page.extract_text() or "" for page in reader.pages]
    except (PdfReadError, ValueError, OSError) as e:
        raise DataError(f"cannot read PDF: {e}") from e
    logger.debug("extracted %d pages", len(pages))
    return PAGE_BREAK.join(pages)
