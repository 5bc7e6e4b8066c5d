"""Ranking and nonparametric-test pipeline over cross-algorithm results."""

from .fixture import (
    FUNCTION_LABELS,
    METRICS,
    reference_algorithms,
    reference_median_matrix,
    reference_values,
)
from .nonparametric import FriedmanResult, QuadeResult, friedman, quade
from .ranking import (
    DEFAULT_GROUPS,
    F1_POINTS,
    MedianMatrix,
    f1_scores,
    nbest,
    points_for_rank,
    rank_column,
    rank_matrix,
)
from .report import (
    format_text,
    full_report,
    write_json,
    write_rank_csv,
    write_scores_csv,
    write_tests_csv,
    write_text,
)
from .special import beta_inc, chi2_sf, f_sf, gamma_q

__all__ = [
    "FUNCTION_LABELS",
    "METRICS",
    "reference_algorithms",
    "reference_median_matrix",
    "reference_values",
    "FriedmanResult",
    "QuadeResult",
    "friedman",
    "quade",
    "DEFAULT_GROUPS",
    "F1_POINTS",
    "MedianMatrix",
    "f1_scores",
    "nbest",
    "points_for_rank",
    "rank_column",
    "rank_matrix",
    "format_text",
    "full_report",
    "write_json",
    "write_rank_csv",
    "write_scores_csv",
    "write_tests_csv",
    "write_text",
    "beta_inc",
    "chi2_sf",
    "f_sf",
    "gamma_q",
]
