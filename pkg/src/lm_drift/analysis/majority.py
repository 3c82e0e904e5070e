"""
Absolute-majority components per paper and per-conference majority rates.
"""

from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence

from ..errors import StatsError
from ..lexicon.model import Lexicon
from ..matching.counting import PaperCounts
from .quartiles import quartile_split


SELECTORS = ("all", "top_quarter_by_NL")


def component_counts(counts: PaperCounts, lexicon: Lexicon) -> Dict[str, int]:
    out: Dict[str, int] = {}
    for entry_id, n in counts.per_entry.items():
        root = lexicon.root_of(entry_id)
        out[root] = out.get(root, 0) + n
    return out


def absolute_majority(counts: PaperCounts, lexicon: Lexicon) -> Optional[str]:
    """The component root holding strictly more than N/2 of the paper's mentions, if any."""
    if counts.n == 0:
        return None
    for root, n in component_counts(counts, lexicon).items():
        if 2 * n > counts.n:
            return root
    return None


@dataclass(frozen=True)
class MajorityReport:
    scope: str
    selector: str
    counted_papers: int
    majority_fraction: float
    no_majority_fraction: float
    by_component: Mapping[str, float] = field(default_factory=dict)


def majority_rates(
    counts: Sequence[PaperCounts],
    lexicon: Lexicon,
    selector: str = "all",
    include_zero: bool = False,
    scope: str = "",
) -> MajorityReport:
    """
    Fraction of papers dominated by each component.

    Papers with N = 0 cannot have a majority and are left out of the
    denominator unless ``include_zero`` is set, in which case they count as
    no-majority papers.

    Raises:
        StatsError: nothing to count, or too few LM-related papers for the
            top-quarter selector
    """
    if selector not in SELECTORS:
        raise ValueError(f"selector must be one of {SELECTORS}, got {selector!r}")
    subset = list(counts) if selector == "all" else quartile_split(counts, scope).q4_plus
    counted = subset if include_zero else [c for c in subset if c.n > 0]
    if not counted:
        raise StatsError("no papers with model mentions to count", scope or None)

    dominated: Dict[str, int] = {}
    for c in counted:
        root = absolute_majority(c, lexicon)
        if root is not None:
            dominated[root] = dominated.get(root, 0) + 1

    total = len(counted)
    with_majority = sum(dominated.values())
    return MajorityReport(
        scope=scope,
        selector=selector,
        counted_papers=total,
        majority_fraction=with_majority / total,
        no_majority_fraction=(total - with_majority) / total,
        by_component={r: n / total for r, n in sorted(dominated.items(), key=lambda kv: (-kv[1], kv[0]))},
    )
