"""
Anthology client - proceedings metadata and paper PDFs over HTTP.

Metadata endpoint schema (GET ``{base_url}/volumes/{venue}/{year}.json``)::

    {
      "venue": "ACL",
      "year": 2020,
      "papers": [
        {"paper_id": "2020.acl-main.1", "title": "...", "abstract": "...",
         "pdf_url": "https://...", "track": "main"}
      ]
    }

``track`` defaults to ``"main"``; any other track (findings, frontmatter,
demo) is excluded. A 404 means the volume does not exist.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import requests
from tqdm import tqdm

from ..errors import DataError, MetadataFetchError, VolumeNotFoundError
from ..http import make_session
from .body_text import ExtractionOptions, extract_body
from .models import Paper, PaperMeta
from .pdf import read_pdf_text

logger = logging.getLogger(__name__)


def fetch_metadata(
    venue: str,
    year: int,
    endpoint: str,
    session: Optional[requests.Session] = None,
    timeout: float = 30.0,
) -> List[PaperMeta]:
    """
    Fetch main-proceedings paper metadata for one conference edition.

    Returns:
        PaperMeta list ordered by paper_id (ordinal left at 0; see assign_ordinals)

    Raises:
        VolumeNotFoundError: the endpoint has no such volume
        MetadataFetchError: network failure or bad response (retryable)
    """
    session = session or make_session()
    url = f"{endpoint.rstrip('/')}/volumes/{venue}/{year}.json"
    try:
        resp = session.get(url, timeout=timeout)
    except requests.exceptions.RequestException as e:
        raise MetadataFetchError(venue, year, str(e)) from e

    if resp.status_code == 404:
        raise VolumeNotFoundError(venue, year)
    if resp.status_code >= 400:
        raise MetadataFetchError(venue, year, f"HTTP {resp.status_code}")
    try:
        payload = resp.json()
    except ValueError as e:
        raise MetadataFetchError(venue, year, "response is not JSON") from e

    metas = []
    for record in payload.get("papers", []):
        if record.get("track", "main") != "main":
            continue
        metas.append(PaperMeta(
            paper_id=str(record["paper_id"]),
            venue=venue,
            year=int(year),
            ordinal=0,
            title=record.get("title", "") or "",
            abstract=record.get("abstract", "") or "",
            source_url=record.get("pdf_url"),
        ))
    metas.sort(key=lambda m: m.paper_id)
    logger.info("fetched %d main-proceedings records for %s %s", len(metas), venue, year)
    return metas


def _download_one(
    meta: PaperMeta,
    session: requests.Session,
    pdf_url_template: str,
    timeout: float,
    options: ExtractionOptions,
) -> Paper:
    url = meta.source_url or pdf_url_template.format(paper_id=meta.paper_id)
    resp = session.get(url, timeout=timeout)
    resp.raise_for_status()
    extraction = extract_body(read_pdf_text(resp.content), options)
    for w in extraction.warnings:
        logger.warning("%s: %s", meta.paper_id, w)
    return Paper(meta=meta, body_text=extraction.body_text, sections=tuple(extraction.sections))


def fetch_papers(
    metas: Sequence[PaperMeta],
    pdf_url_template: str,
    session: Optional[requests.Session] = None,
    max_workers: int = 4,
    timeout: float = 30.0,
    options: ExtractionOptions = ExtractionOptions(),
    progress: bool = True,
) -> Tuple[List[Paper], Dict[str, str]]:
    """
    Download and post-process paper PDFs with bounded concurrency.

    Returns:
        (papers in input order, failures mapping paper_id -> reason)
    """
    session = session or make_session()

    def work(meta: PaperMeta):
        try:
            return meta.paper_id, _download_one(meta, session, pdf_url_template, timeout, options), None
        except (requests.exceptions.RequestException, DataError) as e:
            return meta.paper_id, None, str(e)

    papers: List[Paper] = []
    failures: Dict[str, str] = {}
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        results = executor.map(work, metas)
        for paper_id, paper, error in tqdm(results, total=len(metas), desc="PDFs", disable=not progress):
            if error is not None:
                logger.warning("skipping %s: %s", paper_id, error)
                failures[paper_id] = error
            else:
                papers.append(paper)
    return papers, failures
