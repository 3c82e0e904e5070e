"""
Chart kinds, their data schemas, and the builders that turn analysis
results into chart data.
"""

import re
from dataclasses import dataclass
from enum import Enum
from numbers import Real
from typing import Any, Dict, List, Mapping, Optional

from ..analysis.ks import BUCKETS
from ..analysis.runner import DriftAnalysis
from ..errors import SchemaError, StatsError
from ..lexicon.model import Lexicon
from .sunburst import sunburst_data


class ChartKind(str, Enum):
    TIMESERIES = "timeseries"
    PAIRWISE = "pairwise"
    SUNBURST = "sunburst"
    JACCARD = "jaccard"
    MAJORITY = "majority"
    DIVERGING = "diverging"


@dataclass(frozen=True)
class ChartBundle:
    kind: ChartKind
    scope: str
    data: Dict[str, Any]
    svg: Optional[str] = None

    @property
    def stem(self) -> str:
        return f"{self.kind.value}__{slugify(self.scope)}"


def slugify(text: str) -> str:
    slug = re.sub(r"[^a-z0-9_]+", "-", text.lower()).strip("-")
    return slug or "all"


# ---------- schema checks ----------

def _require(kind: str, data: Mapping[str, Any], key: str, types, where: str = "") -> Any:
    name = f"{where}{key}"
    if not isinstance(data, Mapping) or key not in data:
        raise SchemaError(kind, name, "missing")
    value = data[key]
    if types is Real:
        if isinstance(value, bool) or not isinstance(value, Real):
            raise SchemaError(kind, name, "must be a number")
    elif not isinstance(value, types):
        raise SchemaError(kind, name, f"must be {getattr(types, '__name__', types)}")
    return value


def _optional_number(kind: str, data: Mapping[str, Any], key: str, where: str) -> None:
    value = data.get(key)
    if value is not None and (isinstance(value, bool) or not isinstance(value, Real)):
        raise SchemaError(kind, f"{where}{key}", "must be a number or null")


def _check_node(kind: str, node: Any, where: str) -> None:
    for key in ("entry_id", "label", "color_key"):
        _require(kind, node, key, str, where)
    for key in ("value", "own"):
        _require(kind, node, key, int, where)
    for i, child in enumerate(_require(kind, node, "children", list, where)):
        _check_node(kind, child, f"{where}children[{i}].")


def validate(kind: ChartKind, data: Mapping[str, Any]) -> None:
    """
    Raises:
        SchemaError: naming the first missing or mistyped field
    """
    kind = ChartKind(kind)
    k = kind.value
    if not isinstance(data, Mapping):
        raise SchemaError(k, "<root>", "must be an object")
    _require(k, data, "scope", str)

    if kind is ChartKind.TIMESERIES:
        for i, p in enumerate(_require(k, data, "points", list)):
            w = f"points[{i}]."
            _require(k, p, "label", str, w)
            for key in ("prop_lm_related", "mean_n_l", "mean_n"):
                _require(k, p, key, Real, w)
            _optional_number(k, p, "estimated_mean_n_l", w)

    elif kind is ChartKind.PAIRWISE:
        _require(k, data, "labels", list)
        for i, c in enumerate(_require(k, data, "cells", list)):
            w = f"cells[{i}]."
            _require(k, c, "row", str, w)
            _require(k, c, "column", str, w)
            for key in ("ks_statistic", "p_value", "mean_diff"):
                _require(k, c, key, Real, w)
            if _require(k, c, "significance_bucket", str, w) not in BUCKETS:
                raise SchemaError(k, f"{w}significance_bucket", f"must be one of {BUCKETS}")

    elif kind is ChartKind.SUNBURST:
        _require(k, data, "total", int)
        for i, node in enumerate(_require(k, data, "roots", list)):
            _check_node(k, node, f"roots[{i}].")

    elif kind is ChartKind.JACCARD:
        labels = _require(k, data, "labels", list)
        values = _require(k, data, "values", list)
        if len(values) != len(labels) or any(not isinstance(r, list) or len(r) != len(labels) for r in values):
            raise SchemaError(k, "values", "must be a square matrix matching labels")

    elif kind is ChartKind.MAJORITY:
        for i, b in enumerate(_require(k, data, "bars", list)):
            w = f"bars[{i}]."
            _require(k, b, "label", str, w)
            _require(k, b, "counted_papers", int, w)
            _require(k, b, "no_majority_fraction", Real, w)
            shares = _require(k, b, "by_component", Mapping, w)
            if any(isinstance(v, bool) or not isinstance(v, Real) for v in shares.values()):
                raise SchemaError(k, f"{w}by_component", "values must be numbers")

    elif kind is ChartKind.DIVERGING:
        _require(k, data, "title", str)
        for i, d in enumerate(_require(k, data, "deltas", list)):
            w = f"deltas[{i}]."
            _require(k, d, "root", str, w)
            _require(k, d, "delta", Real, w)


# ---------- builders ----------

def timeseries_data(analysis: DriftAnalysis) -> Dict[str, Any]:
    return {
        "scope": "corpus",
        "points": [
            {
                "label": p.key.label,
                "prop_lm_related": p.prop_lm_related,
                "mean_n_l": p.mean_n_l,
                "estimated_mean_n_l": p.estimated_mean_n_l,
                "mean_n": p.mean_n,
            }
            for p in analysis.series
        ],
    }


def pairwise_data(analysis: DriftAnalysis, metric: str) -> Dict[str, Any]:
    return {
        "scope": metric,
        "labels": [s.label for s in analysis.stats],
        "cells": [
            {
                "row": c.row,
                "column": c.column,
                "ks_statistic": c.ks_statistic,
                "p_value": c.p_value,
                "mean_diff": c.mean_diff,
                "significance_bucket": c.significance_bucket,
            }
            for c in analysis.ks.get(metric, [])
        ],
    }


def diverging_data(scope: str, title: str, deltas: Mapping[str, float]) -> Dict[str, Any]:
    return {"scope": scope, "title": title, "deltas": [{"root": r, "delta": d} for r, d in deltas.items()]}


def chart_bundles(analysis: DriftAnalysis, lexicon: Lexicon, threshold: float = 0.005) -> List[ChartBundle]:
    """Chart data for every kind and every scope the analysis covers, in a fixed order."""
    bundles: List[ChartBundle] = []

    if analysis.series:
        bundles.append(ChartBundle(ChartKind.TIMESERIES, "corpus", timeseries_data(analysis)))

    for metric in sorted(analysis.ks):
        bundles.append(ChartBundle(ChartKind.PAIRWISE, metric, pairwise_data(analysis, metric)))

    for comp in analysis.compositions:
        try:
            forest = sunburst_data(comp.entry_counts, lexicon, threshold, comp.scope)
        except StatsError:
            continue
        bundles.append(ChartBundle(ChartKind.SUNBURST, comp.scope, {
            "scope": comp.scope,
            "total": comp.total,
            "threshold": threshold,
            "roots": [n.to_dict() for n in forest],
        }))

    for mode in sorted(analysis.jaccard):
        m = analysis.jaccard[mode]
        bundles.append(ChartBundle(ChartKind.JACCARD, mode, {
            "scope": mode, "labels": list(m.labels), "values": [list(r) for r in m.values],
        }))

    for selector in sorted(analysis.majority):
        reports = analysis.majority[selector]
        if not reports:
            continue
        bundles.append(ChartBundle(ChartKind.MAJORITY, selector, {
            "scope": selector,
            "bars": [
                {
                    "label": r.scope,
                    "counted_papers": r.counted_papers,
                    "by_component": dict(r.by_component),
                    "no_majority_fraction": r.no_majority_fraction,
                }
                for r in reports
            ],
        }))

    for contrast in analysis.contrasts:
        scope = f"{contrast.scope} Q4+ vs Q1-"
        bundles.append(ChartBundle(ChartKind.DIVERGING, scope, diverging_data(
            scope, f"{contrast.scope}: Q4+ share minus Q1- share", contrast.deltas,
        )))
    for shift in analysis.shifts:
        scope = f"{shift.group} {shift.early} to {shift.late}"
        bundles.append(ChartBundle(ChartKind.DIVERGING, scope, diverging_data(
            scope, f"{shift.group}: {shift.late} share minus {shift.early} share", shift.deltas,
        )))

    return bundles
