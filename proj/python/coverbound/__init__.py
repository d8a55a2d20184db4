"""Greedy multi-agent coverage placement with curvature-based performance bounds."""

from ._core import (
    ResourceError,
    ValidationError,
    beta_elemental,
    beta_fundamental,
    beta_greedy,
    beta_total,
    builtin_names,
    builtin_text,
    normalize_scenario,
    render,
    solve,
    sweep,
)

__all__ = [
    "ResourceError",
    "ValidationError",
    "beta_elemental",
    "beta_fundamental",
    "beta_greedy",
    "beta_total",
    "builtin_names",
    "builtin_text",
    "normalize_scenario",
    "render",
    "solve",
    "sweep",
]
