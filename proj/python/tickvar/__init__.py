"""Variation analytics for tick price series."""

from ._core import (
    DomainError,
    InputError,
    __version__,
    binom_count,
    binom_pz_exact,
    fat_tail_cdf,
    jordan_decompose,
    moments_from_alpha,
    normal_cdf,
    prob_decline,
    prob_nonpositive,
    pz_gaussian,
    run,
    sample_difference,
    solve_coeffs,
    structure,
    variation_band,
    variation_summary,
)

__all__ = [
    "DomainError",
    "InputError",
    "__version__",
    "binom_count",
    "binom_pz_exact",
    "fat_tail_cdf",
    "jordan_decompose",
    "moments_from_alpha",
    "normal_cdf",
    "prob_decline",
    "prob_nonpositive",
    "pz_gaussian",
    "run",
    "sample_difference",
    "solve_coeffs",
    "structure",
    "variation_band",
    "variation_summary",
]
