"""
Diachronic statistics over scanned conferences.
"""

from .conference import (
    ConferenceStats,
    SeriesPoint,
    aggregate,
    conference_series,
    conference_stats,
    estimated_mean,
    group_by_conference,
    stats_frame,
)
from .ks import BUCKETS, PairwiseCell, ks_two_sample, pairwise_matrix, significance_bucket
from .composition import (
    JACCARD_MODES,
    CompositionVector,
    JaccardMatrix,
    composition,
    composition_diff,
    jaccard,
    jaccard_matrix,
)
from .majority import SELECTORS, MajorityReport, absolute_majority, majority_rates
from .quartiles import GroupShift, QuartileContrast, QuartileSplit, group_shift, quartile_contrast, quartile_split
from .runner import (
    ANALYSES,
    AnalysisOptions,
    DriftAnalysis,
    analysis_payload,
    read_stats_report,
    report_names,
    run_analysis,
    write_stats_report,
)

__all__ = [
    "ConferenceStats",
    "SeriesPoint",
    "aggregate",
    "conference_series",
    "conference_stats",
    "estimated_mean",
    "group_by_conference",
    "stats_frame",
    "BUCKETS",
    "PairwiseCell",
    "ks_two_sample",
    "pairwise_matrix",
    "significance_bucket",
    "JACCARD_MODES",
    "CompositionVector",
    "JaccardMatrix",
    "composition",
    "composition_diff",
    "jaccard",
    "jaccard_matrix",
    "SELECTORS",
    "MajorityReport",
    "absolute_majority",
    "majority_rates",
    "GroupShift",
    "QuartileContrast",
    "QuartileSplit",
    "group_shift",
    "quartile_contrast",
    "quartile_split",
    "ANALYSES",
    "AnalysisOptions",
    "DriftAnalysis",
    "analysis_payload",
    "read_stats_report",
    "report_names",
    "run_analysis",
    "write_stats_report",
]
