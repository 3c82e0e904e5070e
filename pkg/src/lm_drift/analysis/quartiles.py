"""
Quartile groups of LM-related papers and their composition contrasts.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence

from ..errors import StatsError
from ..lexicon.model import Lexicon
from ..matching.counting import PaperCounts
from .composition import CompositionVector, composition, composition_diff


class QuartileSplit(NamedTuple):
    q4_plus: List[PaperCounts]   # most LM-focused quarter
    q1_minus: List[PaperCounts]  # least LM-focused quarter


def quartile_split(counts: Sequence[PaperCounts], scope: str = "") -> QuartileSplit:
    """
    Rank LM-related papers (N^L > 0) by N^L descending, ties by paper_id, and
    take the first and last ceil(k/4).

    Raises:
        StatsError: fewer than 4 LM-related papers
    """
    related = sorted((c for c in counts if c.n_l > 0), key=lambda c: (-c.n_l, c.paper_id))
    k = len(related)
    if k < 4:
        raise StatsError(f"need >= 4 LM-related papers for quartiles, got {k}", scope or None)
    size = math.ceil(k / 4)
    # 2 * ceil(k/4) <= k for every k >= 4, so the quarters never overlap
    return QuartileSplit(q4_plus=related[:size], q1_minus=related[k - size:])


@dataclass(frozen=True)
class QuartileContrast:
    scope: str
    q4_plus: CompositionVector
    q1_minus: CompositionVector
    deltas: Dict[str, float]  # Q4+ share - Q1- share per component


def quartile_contrast(
    counts: Sequence[PaperCounts],
    lexicon: Lexicon,
    scope: str = "",
    top_k: Optional[int] = None,
) -> QuartileContrast:
    split = quartile_split(counts, scope)
    q4 = composition(split.q4_plus, lexicon, f"{scope} Q4+".strip())
    q1 = composition(split.q1_minus, lexicon, f"{scope} Q1-".strip())
    return QuartileContrast(scope, q4, q1, composition_diff(q4, q1, top_k))


@dataclass(frozen=True)
class GroupShift:
    group: str  # "Q4+" or "Q1-"
    early: str
    late: str
    early_shares: Dict[str, float]
    late_shares: Dict[str, float]
    deltas: Dict[str, float]  # late share - early share per component


def group_shift(
    early: Sequence[PaperCounts],
    late: Sequence[PaperCounts],
    lexicon: Lexicon,
    early_label: str = "early",
    late_label: str = "late",
    top_k: Optional[int] = None,
) -> List[GroupShift]:
    """
    How the same quartile group's composition moved between two conferences,
    for Q4+ and Q1- separately.
    """
    early_split = quartile_split(early, early_label)
    late_split = quartile_split(late, late_label)
    shifts = []
    for group, e_counts, l_counts in (
        ("Q4+", early_split.q4_plus, late_split.q4_plus),
        ("Q1-", early_split.q1_minus, late_split.q1_minus),
    ):
        early_vec = composition(e_counts, lexicon, f"{early_label} {group}")
        late_vec = composition(l_counts, lexicon, f"{late_label} {group}")
        shifts.append(GroupShift(
            group=group,
            early=early_label,
            late=late_label,
            early_shares=dict(early_vec.by_component),
            late_shares=dict(late_vec.by_component),
            deltas=composition_diff(late_vec, early_vec, top_k),
        ))
    return shifts
