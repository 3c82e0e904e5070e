import json
import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from lm_drift.corpus import ConferenceKey, Corpus, Paper, PaperMeta  # noqa: E402
from lm_drift.lexicon import Lexicon, ModelEntry, demo_lexicon  # noqa: E402
from lm_drift.matching import PaperCounts  # noqa: E402

settings.register_profile("ci", max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=50, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))

FIXTURES = Path(__file__).resolve().parent / "fixtures"
MINI_DIR = FIXTURES / "mini"
GOLDEN_DIR = FIXTURES / "golden"


@pytest.fixture
def mini_dir() -> Path:
    return MINI_DIR


@pytest.fixture
def golden_dir() -> Path:
    """Expected outputs for the mini corpus under the demo lexicon, derived by hand from make_mini.sh."""
    return GOLDEN_DIR


@pytest.fixture(scope="session")
def lexicon() -> Lexicon:
    return demo_lexicon()


@pytest.fixture
def gpt_chain() -> Lexicon:
    """GPT <- GPT-3 <- ChatGPT, plus an unrelated BERT root."""
    return Lexicon(entries={
        "GPT": ModelEntry("GPT"),
        "GPT-3": ModelEntry("GPT-3", parent="GPT"),
        "ChatGPT": ModelEntry("ChatGPT", parent="GPT-3"),
        "BERT": ModelEntry("BERT"),
    })


def make_paper(paper_id: str, venue: str = "ACL", year: int = 2020, body: str = "", abstract: str = "",
               ordinal: int = 0, title: str = "") -> Paper:
    meta = PaperMeta(paper_id, venue, year, ordinal, title or f"Paper {paper_id}", abstract)
    return Paper(meta=meta, body_text=body)


def pc(paper_id: str, n_l: int = 0, per_entry=None) -> PaperCounts:
    """PaperCounts with every N^L occurrence on "language model"."""
    return PaperCounts.build(paper_id, {"language model": n_l}, per_entry or {})


class StubResponse:
    def __init__(self, status_code: int = 200, payload=None, content: bytes = b"", text: str = ""):
        self.status_code = status_code
        self._payload = payload
        self.content = content
        self.text = text or (json.dumps(payload) if payload is not None else "")

    def json(self):
        if self._payload is None:
            raise ValueError("no JSON")
        return self._payload

    def raise_for_status(self):
        import requests

        if self.status_code >= 400:
            raise requests.exceptions.HTTPError(f"HTTP {self.status_code}")


class StubSession:
    """Records requests and answers from a url -> response (or callable) table."""

    def __init__(self, routes=None, post=None):
        self.routes = dict(routes or {})
        self.post_handler = post
        self.calls = []

    def get(self, url, **kwargs):
        self.calls.append(("GET", url, kwargs))
        route = self.routes.get(url)
        if route is None:
            return StubResponse(404)
        if isinstance(route, Exception):
            raise route
        return route

    def post(self, url, json=None, **kwargs):
        self.calls.append(("POST", url, json))
        return self.post_handler(url, json)


@pytest.fixture
def stub_session():
    return StubSession


def conference_corpus(spec):
    """spec: [(venue, year, [paper ids])] -> Corpus with ordinals by list position."""
    papers = []
    for ordinal, (venue, year, ids) in enumerate(spec, start=1):
        for pid in ids:
            papers.append(make_paper(pid, venue, year, ordinal=ordinal))
    return Corpus.from_papers(papers)


@pytest.fixture(scope="session")
def mini_corpus() -> Corpus:
    from lm_drift.corpus import load_text_dir

    corpus, _ = load_text_dir(MINI_DIR, ("NAACL", "ACL", "EMNLP"))
    return corpus
