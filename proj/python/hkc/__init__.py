"""Continuous-time Hegselmann-Krause dynamics on graphs."""

import json

from ._hkc import (
    UsageError,
    ValidationError,
    bound,
    center_and_radius,
    check_invariants,
    distance,
    estimate,
    generator_drift,
    simulate,
    theoretical_bound,
)

__all__ = [
    "UsageError",
    "ValidationError",
    "bound",
    "center_and_radius",
    "check_invariants",
    "distance",
    "estimate",
    "estimate_dict",
    "generator_drift",
    "simulate",
    "theoretical_bound",
]


def estimate_dict(config, parallel=1, base_dir="."):
    """Like estimate() but takes and returns dicts."""
    return json.loads(estimate(json.dumps(config), parallel, base_dir))
