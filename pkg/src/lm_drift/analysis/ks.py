"""
Two-sample Kolmogorov-Smirnov test and the pairwise conference matrix.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy import stats

from ..errors import StatsError
from .conference import ConferenceStats


BUCKETS = ("ns", "p<0.05", "p<0.01", "p<0.001")


def ks_two_sample(a: Sequence[float], b: Sequence[float]) -> Tuple[float, float]:
    """
    Two-sided two-sample K-S test.

    D is the largest gap between the empirical CDFs. The p-value comes from
    ``scipy.stats.ks_2samp`` with ``method="auto"``: the exact null
    distribution for the sample sizes seen per conference, the asymptotic
    one only for very large samples.

    Raises:
        StatsError: either sample is empty
    """
    data1 = np.sort(np.asarray(a, dtype=float))
    data2 = np.sort(np.asarray(b, dtype=float))
    n1, n2 = len(data1), len(data2)
    if n1 == 0 or n2 == 0:
        raise StatsError("K-S test needs two non-empty samples")

    data_all = np.concatenate([data1, data2])
    cdf1 = np.searchsorted(data1, data_all, side="right") / n1
    cdf2 = np.searchsorted(data2, data_all, side="right") / n2
    d = float(np.max(np.abs(cdf1 - cdf2)))
    if d == 0.0:
        return 0.0, 1.0

    p = float(stats.ks_2samp(data1, data2, alternative="two-sided", method="auto").pvalue)
    return d, min(1.0, max(0.0, p))


def significance_bucket(p_value: float) -> str:
    if p_value < 0.001:
        return "p<0.001"
    if p_value < 0.01:
        return "p<0.01"
    if p_value < 0.05:
        return "p<0.05"
    return "ns"


@dataclass(frozen=True)
class PairwiseCell:
    row: str
    column: str
    ks_statistic: float
    p_value: float
    mean_diff: float  # column mean - row mean
    significance_bucket: str


def pairwise_matrix(conferences: Sequence[ConferenceStats], metric: str = "n_l") -> List[PairwiseCell]:
    """
    Upper triangle of the conference-by-conference K-S matrix.

    Rows are the earlier conference, columns the later one; a positive
    mean_diff means the mean grew from row to column.

    Raises:
        StatsError: fewer than 2 conferences
    """
    if len(conferences) < 2:
        raise StatsError(f"need >= 2 conferences for a pairwise matrix, got {len(conferences)}")
    cells = []
    for i, row in enumerate(conferences):
        row_values = row.values(metric)
        for col in conferences[i + 1:]:
            col_values = col.values(metric)
            d, p = ks_two_sample(row_values, col_values)
            cells.append(PairwiseCell(
                row=row.label,
                column=col.label,
                ks_statistic=d,
                p_value=p,
                mean_diff=float(col_values.mean() - row_values.mean()),
                significance_bucket=significance_bucket(p),
            ))
    return cells
