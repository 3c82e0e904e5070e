"""
Analysis runner - computes every statistic over a scanned corpus and writes
schema-versioned stats report files.

Report file (``<output_dir>/stats/<name>.json``)::

    {"schema_version": 1, "analysis": "ks", "generated_from": "<counts sha256>",
     "payload": {...}}
"""

import dataclasses
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from ..corpus.models import Corpus
from ..errors import StatsError
from ..lexicon.model import Lexicon
from ..matching.counting import PaperCounts
from .composition import JACCARD_MODES, CompositionVector, JaccardMatrix, composition, jaccard_matrix
from .conference import ConferenceStats, SeriesPoint, conference_series, conference_stats, group_by_conference
from .ks import PairwiseCell, pairwise_matrix
from .majority import SELECTORS, MajorityReport, majority_rates
from .quartiles import GroupShift, QuartileContrast, group_shift, quartile_contrast

logger = logging.getLogger(__name__)


STATS_SCHEMA_VERSION = 1
ANALYSES = ("timeseries", "ks", "composition", "jaccard", "majority", "quartiles")
METRICS = ("n_l", "n")


@dataclass(frozen=True)
class AnalysisOptions:
    top_k: int = 10
    include_zero: bool = False


@dataclass
class DriftAnalysis:
    stats: List[ConferenceStats] = field(default_factory=list)
    series: List[SeriesPoint] = field(default_factory=list)
    ks: Dict[str, List[PairwiseCell]] = field(default_factory=dict)
    compositions: List[CompositionVector] = field(default_factory=list)
    jaccard: Dict[str, JaccardMatrix] = field(default_factory=dict)
    majority: Dict[str, List[MajorityReport]] = field(default_factory=dict)
    contrasts: List[QuartileContrast] = field(default_factory=list)
    shifts: List[GroupShift] = field(default_factory=list)
    skipped: Dict[str, str] = field(default_factory=dict)
    options: AnalysisOptions = field(default_factory=AnalysisOptions)

    def composition_for(self, label: str) -> Optional[CompositionVector]:
        return next((c for c in self.compositions if c.scope == label), None)


def _skip(analysis: DriftAnalysis, name: str, error: StatsError) -> None:
    logger.warning("skipping %s: %s", name, error)
    analysis.skipped[name] = str(error)


def run_analysis(
    corpus: Corpus,
    counts: Sequence[PaperCounts],
    lexicon: Lexicon,
    options: AnalysisOptions = AnalysisOptions(),
    analyses: Sequence[str] = ANALYSES,
    strict: bool = False,
) -> DriftAnalysis:
    """
    Compute the requested analyses.

    Degenerate scopes (a conference without model mentions, too few
    LM-related papers for quartiles) are skipped and listed in ``skipped``.
    With ``strict`` an analysis that cannot produce anything raises instead.

    Raises:
        DataError: counts do not cover the corpus
        StatsError: (strict only) an analysis has no valid scope
    """
    unknown = sorted(set(analyses) - set(ANALYSES))
    if unknown:
        raise ValueError(f"unknown analyses: {unknown}")

    grouped = group_by_conference(corpus, counts)
    result = DriftAnalysis(options=options)
    result.stats = conference_stats(grouped)
    labels = [s.label for s in result.stats]

    def attempt(name: str, fn):
        try:
            fn()
        except StatsError as e:
            if strict:
                raise
            _skip(result, name, e)

    if "timeseries" in analyses:
        def _series():
            result.series = conference_series(result.stats)
        attempt("timeseries", _series)

    if "ks" in analyses:
        def _ks():
            result.ks = {m: pairwise_matrix(result.stats, m) for m in METRICS}
        attempt("ks", _ks)

    if {"composition", "jaccard"} & set(analyses):
        for key, conf_counts in grouped.items():
            try:
                result.compositions.append(composition(conf_counts, lexicon, key.label))
            except StatsError as e:
                _skip(result, f"composition:{key.label}", e)
        if strict and not result.compositions:
            raise StatsError("no conference has model mentions; nothing to compose")

    if "jaccard" in analyses:
        def _jaccard():
            if len(result.compositions) < 2:
                raise StatsError(f"need >= 2 conferences with model mentions, got {len(result.compositions)}")
            result.jaccard = {m: jaccard_matrix(result.compositions, m) for m in JACCARD_MODES}
        attempt("jaccard", _jaccard)

    if "majority" in analyses:
        for selector in SELECTORS:
            reports = []
            for key, conf_counts in grouped.items():
                try:
                    reports.append(majority_rates(conf_counts, lexicon, selector, options.include_zero, key.label))
                except StatsError as e:
                    _skip(result, f"majority:{selector}:{key.label}", e)
            result.majority[selector] = reports
        if strict and not any(result.majority.values()):
            raise StatsError("no conference has countable papers for majority rates")

    if "quartiles" in analyses:
        for key, conf_counts in grouped.items():
            try:
                result.contrasts.append(quartile_contrast(conf_counts, lexicon, key.label, options.top_k))
            except StatsError as e:
                _skip(result, f"quartiles:{key.label}", e)
        if len(grouped) >= 2:
            (first, early), (last, late) = list(grouped.items())[0], list(grouped.items())[-1]
            try:
                result.shifts = group_shift(early, late, lexicon, first.label, last.label, options.top_k)
            except StatsError as e:
                _skip(result, "quartiles:group_shift", e)
        if strict and not result.contrasts:
            raise StatsError("no conference has >= 4 LM-related papers for quartiles")

    logger.info("analysis over %d conferences (%s); %d skipped", len(labels), ", ".join(labels), len(result.skipped))
    return result


# ---------- payloads ----------

def _conference_record(s: ConferenceStats) -> Dict[str, Any]:
    return {
        "label": s.label,
        "venue": s.key.venue,
        "year": s.key.year,
        "ordinal": s.key.ordinal,
        "paper_count": s.paper_count,
        "lm_related_count": s.lm_related_count,
        "prop_lm_related": s.prop_lm_related,
        "mean_n_l": s.mean_n_l,
        "mean_n": s.mean_n,
    }


def _composition_record(c: CompositionVector) -> Dict[str, Any]:
    return {
        "scope": c.scope,
        "total": c.total,
        "entry_counts": dict(c.entry_counts),
        "by_entry": dict(c.by_entry),
        "by_component": dict(c.by_component),
    }


def analysis_payload(analysis: DriftAnalysis, name: str) -> Dict[str, Any]:
    """JSON-ready payload for one analysis; raises StatsError if it was skipped."""
    if name == "timeseries":
        if not analysis.series:
            raise StatsError(analysis.skipped.get("timeseries", "time series not computed"))
        return {
            "conferences": [
                dict(_conference_record(s), estimated_mean_n_l=p.estimated_mean_n_l, relative_deviation=p.relative_deviation)
                for s, p in zip(analysis.stats, analysis.series)
            ],
        }
    if name == "ks":
        if not analysis.ks:
            raise StatsError(analysis.skipped.get("ks", "K-S matrix not computed"))
        return {
            "conferences": [s.label for s in analysis.stats],
            "metrics": {m: [dataclasses.asdict(c) for c in cells] for m, cells in analysis.ks.items()},
        }
    if name == "composition":
        if not analysis.compositions:
            raise StatsError("no compositions computed")
        return {"scopes": [_composition_record(c) for c in analysis.compositions]}
    if name.startswith("jaccard"):
        mode = name.partition("__")[2] or "weighted"
        if mode not in analysis.jaccard:
            raise StatsError(analysis.skipped.get("jaccard", "Jaccard matrix not computed"))
        m = analysis.jaccard[mode]
        return {"mode": m.mode, "labels": list(m.labels), "values": [list(r) for r in m.values]}
    if name.startswith("majority"):
        selector = name.partition("__")[2] or "all"
        reports = analysis.majority.get(selector)
        if not reports:
            raise StatsError(f"no majority reports for selector {selector!r}")
        return {
            "selector": selector,
            "include_zero": analysis.options.include_zero,
            "reports": [dataclasses.asdict(r) for r in reports],
        }
    if name == "quartiles":
        if not analysis.contrasts:
            raise StatsError("no quartile contrasts computed")
        return {
            "top_k": analysis.options.top_k,
            "contrasts": [
                {
                    "scope": c.scope,
                    "q4_plus": _composition_record(c.q4_plus),
                    "q1_minus": _composition_record(c.q1_minus),
                    "deltas": dict(c.deltas),
                }
                for c in analysis.contrasts
            ],
            "group_shift": [dataclasses.asdict(s) for s in analysis.shifts],
        }
    raise ValueError(f"unknown analysis {name!r}")


def report_names(analyses: Sequence[str] = ANALYSES) -> List[str]:
    """Stats file names per analysis: jaccard and majority get one file per mode/selector."""
    names = []
    for a in analyses:
        if a == "jaccard":
            names.extend(f"jaccard__{m}" for m in JACCARD_MODES)
        elif a == "majority":
            names.extend(f"majority__{s}" for s in SELECTORS)
        else:
            names.append(a)
    return names


def write_stats_report(output_dir: Path, name: str, payload: Dict[str, Any], generated_from: str) -> Path:
    path = Path(output_dir) / "stats" / f"{name}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {
        "schema_version": STATS_SCHEMA_VERSION,
        "analysis": name,
        "generated_from": generated_from,
        "payload": payload,
    }
    path.write_text(json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")
    return path


def read_stats_report(path: Path) -> Dict[str, Any]:
    document = json.loads(Path(path).read_text(encoding="utf-8"))
    if document.get("schema_version") != STATS_SCHEMA_VERSION:
        raise StatsError(f"{path}: unsupported stats schema_version {document.get('schema_version')!r}")
    return document
