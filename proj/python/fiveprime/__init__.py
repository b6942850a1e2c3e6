"""Python access to the fiveprime numerical core."""

from ._core import (
    CountResult,
    DerivedScales,
    ExponentPair,
    IntegralResult,
    PrimeTable,
    SystemParams,
    apply_word,
    check_thresholds,
    classify_blocks,
    classify_region,
    count,
    derive_scales,
    eval_S,
    experiment_params,
    hb_verify_range,
    integrate_D,
    kernel_transform,
    run_criterion,
    sieve,
    smoothed_count,
    thresholds,
)

__all__ = [
    "CountResult",
    "DerivedScales",
    "ExponentPair",
    "IntegralResult",
    "PrimeTable",
    "SystemParams",
    "apply_word",
    "check_thresholds",
    "classify_blocks",
    "classify_region",
    "count",
    "derive_scales",
    "eval_S",
    "experiment_params",
    "hb_verify_range",
    "integrate_D",
    "kernel_transform",
    "run_criterion",
    "sieve",
    "smoothed_count",
    "thresholds",
]
