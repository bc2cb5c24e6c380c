"""Easing curves used to pace animation tracks.

A track's local clock runs over [0, 1]; easing reshapes that clock without
moving the endpoints, so whatever quantity is interpolated still lands
exactly on its start and end values.
"""

from __future__ import annotations

from enum import Enum

from .errors import DomainError


class Easing(Enum):
    """Supported pacing curves."""

    LINEAR = "linear"
    SMOOTHSTEP = "smoothstep"


def smoothstep(t: float) -> float:
    """Cubic 3t^2 - 2t^3 with zero slope at t=0 and t=1.

    Defined for every real t so derivative probes can straddle the
    endpoints; ease() applies the [0, 1] domain gate.
    """
    return t * t * (3.0 - 2.0 * t)


def ease(easing: Easing, t: float) -> float:
    """Map a normalized time t in [0, 1] through the given curve."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"easing time must lie in [0, 1], got {t!r}")
    if easing is Easing.LINEAR:
        return t
    return smoothstep(t)
