"""
Model compositions: entry and component shares of N, Jaccard similarity
between compositions, and component deltas.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

from ..errors import StatsError
from ..lexicon.model import Lexicon
from ..matching.counting import PaperCounts


JACCARD_MODES = ("set", "weighted")


@dataclass(frozen=True)
class CompositionVector:
    scope: str
    by_entry: Mapping[str, float] = field(default_factory=dict)
    by_component: Mapping[str, float] = field(default_factory=dict)
    total: int = 0
    entry_counts: Mapping[str, int] = field(default_factory=dict)

    def present(self) -> frozenset:
        return frozenset(e for e, share in self.by_entry.items() if share > 0)


def sum_counts(counts: Sequence[PaperCounts]) -> Dict[str, int]:
    totals: Dict[str, int] = {}
    for c in counts:
        for entry_id, n in c.per_entry.items():
            totals[entry_id] = totals.get(entry_id, 0) + n
    return dict(sorted(totals.items()))


def composition(counts: Sequence[PaperCounts], lexicon: Lexicon, scope: str = "") -> CompositionVector:
    """
    Share of N per entry and per component (root plus dependents) over ``counts``.

    Raises:
        StatsError: no model mentions in scope
        UnknownEntryError: counts reference an entry absent from ``lexicon``
    """
    entry_counts = sum_counts(counts)
    total = sum(entry_counts.values())
    if total == 0:
        raise StatsError("no model mentions (N = 0); composition undefined", scope or None)

    component_counts: Dict[str, int] = {}
    for entry_id, n in entry_counts.items():
        root = lexicon.root_of(entry_id)
        component_counts[root] = component_counts.get(root, 0) + n

    return CompositionVector(
        scope=scope,
        by_entry={e: n / total for e, n in entry_counts.items()},
        by_component={r: n / total for r, n in sorted(component_counts.items())},
        total=total,
        entry_counts=entry_counts,
    )


def jaccard(a: CompositionVector, b: CompositionVector, mode: str = "weighted") -> float:
    """
    set:      |A & B| / |A | B| over present entries
    weighted: sum(min(a_i, b_i)) / sum(max(a_i, b_i)) over the entry union
    """
    if mode == "set":
        pa, pb = a.present(), b.present()
        union = pa | pb
        return len(pa & pb) / len(union) if union else 1.0
    if mode == "weighted":
        keys = set(a.by_entry) | set(b.by_entry)
        lo = sum(min(a.by_entry.get(k, 0.0), b.by_entry.get(k, 0.0)) for k in keys)
        hi = sum(max(a.by_entry.get(k, 0.0), b.by_entry.get(k, 0.0)) for k in keys)
        return lo / hi if hi > 0 else 1.0
    raise ValueError(f"jaccard mode must be one of {JACCARD_MODES}, got {mode!r}")


@dataclass(frozen=True)
class JaccardMatrix:
    mode: str
    labels: List[str]
    values: List[List[float]]

    def value(self, row: str, column: str) -> float:
        return self.values[self.labels.index(row)][self.labels.index(column)]


def jaccard_matrix(vectors: Sequence[CompositionVector], mode: str = "weighted") -> JaccardMatrix:
    """Full symmetric matrix over every pair of scopes, diagonal included."""
    values = [[jaccard(a, b, mode) for b in vectors] for a in vectors]
    return JaccardMatrix(mode=mode, labels=[v.scope for v in vectors], values=values)


def composition_diff(
    a: CompositionVector,
    b: CompositionVector,
    top_k: Optional[int] = None,
) -> Dict[str, float]:
    """
    Component share deltas a - b, largest magnitude first (ties by root),
    optionally truncated to ``top_k``. Untruncated deltas sum to 0.
    """
    roots = set(a.by_component) | set(b.by_component)
    deltas = {r: a.by_component.get(r, 0.0) - b.by_component.get(r, 0.0) for r in roots}
    ordered = sorted(deltas.items(), key=lambda kv: (-abs(kv[1]), kv[0]))
    if top_k is not None:
        ordered = ordered[:top_k]
    return dict(ordered)
