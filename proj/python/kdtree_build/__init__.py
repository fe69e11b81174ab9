"""Balanced k-d tree builders with a presort and a median-of-medians strategy."""

from ._core import (
    BuildStats,
    DegenerateFitError,
    FitResult,
    KdTree,
    LinearFit,
    PointSet,
    ValidityReport,
    build_median,
    build_naive_oracle,
    build_presort,
    check_validity,
    compare_super_key,
    fit_amdahl,
    fit_contention,
    fit_linear,
    fit_nlogn,
    generate_points,
    optimal_threads,
    select_median,
    time_pipeline,
    trees_equal,
)

__all__ = [
    "BuildStats",
    "DegenerateFitError",
    "FitResult",
    "KdTree",
    "LinearFit",
    "PointSet",
    "ValidityReport",
    "build_median",
    "build_naive_oracle",
    "build_presort",
    "check_validity",
    "compare_super_key",
    "fit_amdahl",
    "fit_contention",
    "fit_linear",
    "fit_nlogn",
    "generate_points",
    "optimal_threads",
    "select_median",
    "time_pipeline",
    "trees_equal",
]
