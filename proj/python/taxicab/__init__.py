"""Counting and searching sums of exactly j positive k-th powers."""

from ._taxicab import (
    ArithmeticOverflow,
    ColumnClassification,
    ConfigurationError,
    ExistenceGrid,
    MembershipSequence,
    Outcome,
    ResourceBudgetExceeded,
    Searcher,
    StepBudgetExceeded,
    __version__,
    build_grid,
    count,
    fit_exponential,
    fit_root_affine,
    five_square_tail_threshold,
    is_sum_of_j_squares,
    pigeonhole_lower_bound,
    representations,
    square_search_bound,
)

__all__ = [
    "ArithmeticOverflow",
    "ColumnClassification",
    "ConfigurationError",
    "ExistenceGrid",
    "MembershipSequence",
    "Outcome",
    "ResourceBudgetExceeded",
    "Searcher",
    "StepBudgetExceeded",
    "__version__",
    "build_grid",
    "count",
    "fit_exponential",
    "fit_root_affine",
    "five_square_tail_threshold",
    "is_sum_of_j_squares",
    "pigeonhole_lower_bound",
    "representations",
    "square_search_bound",
]
