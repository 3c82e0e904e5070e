"""
Per-conference aggregates and the share-scaled mean estimate.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..corpus.models import ConferenceKey, Corpus
from ..errors import DataError, StatsError
from ..matching.counting import PaperCounts

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConferenceStats:
    key: ConferenceKey
    paper_count: int
    lm_related_count: int
    prop_lm_related: float
    mean_n_l: float
    mean_n: float
    counts: Tuple[PaperCounts, ...] = ()

    @property
    def label(self) -> str:
        return self.key.label

    def values(self, metric: str) -> np.ndarray:
        """Per-paper N^L ("n_l") or N ("n") values."""
        if metric not in ("n_l", "n"):
            raise ValueError(f"unknown metric {metric!r}")
        return np.array([getattr(c, metric) for c in self.counts], dtype=float)


def aggregate(counts: Sequence[PaperCounts], key: ConferenceKey = ConferenceKey("", 0, 0)) -> ConferenceStats:
    """
    Aggregate one conference. Means run over ALL papers, zero-count papers included.

    Raises:
        StatsError: no papers
    """
    if not counts:
        raise StatsError("conference has no papers", key.label or None)
    n_l = np.array([c.n_l for c in counts], dtype=float)
    n = np.array([c.n for c in counts], dtype=float)
    related = int(np.count_nonzero(n_l > 0))
    return ConferenceStats(
        key=key,
        paper_count=len(counts),
        lm_related_count=related,
        prop_lm_related=related / len(counts),
        mean_n_l=float(n_l.mean()),
        mean_n=float(n.mean()),
        counts=tuple(counts),
    )


def estimated_mean(baseline: ConferenceStats, target_prop: float) -> float:
    """
    Scale the baseline mean N^L by the ratio of LM-related shares.

    Holds exactly when the LM-related papers' own mean stays fixed and only
    their share changes.

    Raises:
        StatsError: the baseline has no LM-related papers
    """
    if baseline.prop_lm_related <= 0:
        raise StatsError("baseline has no LM-related papers; ratio undefined", baseline.key.label or None)
    return baseline.mean_n_l * (target_prop / baseline.prop_lm_related)


def group_by_conference(corpus: Corpus, counts: Sequence[PaperCounts]) -> Dict[ConferenceKey, List[PaperCounts]]:
    """
    Split counts by conference, keyed in chronological order, papers by id.

    Raises:
        DataError: counts and corpus disagree on the paper set
    """
    by_id = {c.paper_id: c for c in counts}
    corpus_ids = {p.paper_id for p in corpus.papers}
    missing = sorted(corpus_ids - set(by_id))
    extra = sorted(set(by_id) - corpus_ids)
    if missing or extra:
        raise DataError(
            f"counts do not match the corpus ({len(missing)} papers unscanned, "
            f"{len(extra)} unknown ids); rerun scan"
        )
    grouped: Dict[ConferenceKey, List[PaperCounts]] = {}
    for key in corpus.conferences():
        ids = sorted(p.paper_id for p in corpus.papers_for(key.venue, key.year))
        grouped[key] = [by_id[pid] for pid in ids]
    return grouped


def conference_stats(grouped: Mapping[ConferenceKey, Sequence[PaperCounts]]) -> List[ConferenceStats]:
    return [aggregate(counts, key) for key, counts in grouped.items()]


@dataclass(frozen=True)
class SeriesPoint:
    key: ConferenceKey
    prop_lm_related: float
    mean_n_l: float
    estimated_mean_n_l: Optional[float]
    relative_deviation: Optional[float]
    mean_n: float


def conference_series(stats: Sequence[ConferenceStats]) -> List[SeriesPoint]:
    """
    Time series of LM-related share, actual mean N^L, the estimate scaled from
    the first conference, and mean N.
    """
    if not stats:
        raise StatsError("no conferences")
    baseline = stats[0]
    points = []
    for s in stats:
        est: Optional[float] = None
        dev: Optional[float] = None
        if baseline.prop_lm_related > 0:
            est = estimated_mean(baseline, s.prop_lm_related)
            dev = (s.mean_n_l - est) / est if est else None
        points.append(SeriesPoint(s.key, s.prop_lm_related, s.mean_n_l, est, dev, s.mean_n))
    if baseline.prop_lm_related <= 0:
        logger.warning("%s has no LM-related papers; estimated means omitted", baseline.label)
    return points


def stats_frame(stats: Sequence[ConferenceStats]) -> pd.DataFrame:
    """One row per conference, for display."""
    return pd.DataFrame([
        {
            "conference": s.label,
            "papers": s.paper_count,
            "lm_related": s.lm_related_count,
            "prop_lm_related": round(s.prop_lm_related, 4),
            "mean_n_l": round(s.mean_n_l, 4),
            "mean_n": round(s.mean_n, 4),
        }
        for s in stats
    ])
