"""Numerics for the exponential family lambda*e^z with lambda in (0, 1/e)."""

from ._core import (
    ExpMap,
    GaugeFunction,
    KoenigsEvaluator,
    RatioStats,
    DivergenceProduct,
    attracting_fixed_point,
    repelling_fixed_point,
    phi_eval,
    dichotomy_gamma_star,
    packing_density_bound,
    distortion_bound_single,
    distortion_bound_composite,
    koebe_derivative_bounds,
    koebe_displacement_bounds,
    strip_contains,
    equivalence_probe,
    divergence_product,
    build_packing,
    nested_family_summary,
    dichotomy_probe,
    run_cli,
)

__all__ = [
    "ExpMap",
    "GaugeFunction",
    "KoenigsEvaluator",
    "RatioStats",
    "DivergenceProduct",
    "attracting_fixed_point",
    "repelling_fixed_point",
    "phi_eval",
    "dichotomy_gamma_star",
    "packing_density_bound",
    "distortion_bound_single",
    "distortion_bound_composite",
    "koebe_derivative_bounds",
    "koebe_displacement_bounds",
    "strip_contains",
    "equivalence_probe",
    "divergence_product",
    "build_packing",
    "nested_family_summary",
    "dichotomy_probe",
    "run_cli",
]
