"""Numeric kernel: level interpolation, reshape and shift kinematics, and
conservation checks.

Everything here is a pure function over immutable values, in double
precision. The underlying identities are exact in the reals; the tolerances
exported below exist only to absorb rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import ConservationError, DomainError, ShapeError

# Relative tolerance for plan-level conservation (endpoint totals, frame totals).
PLAN_TOL = 1e-9
# Relative tolerance for closed-form identities (width * height == area).
EXACT_TOL = 1e-12


def lerp(a: float, b: float, u: float) -> float:
    """(1-u)*a + u*b, exact at u=0 and u=1."""
    return (1.0 - u) * a + u * b


def _check_unit(u: float, name: str = "u") -> None:
    if not 0.0 <= u <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {u!r}")


def _check_positive(value: float, name: str) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")


@dataclass(frozen=True)
class LevelState:
    """Liquid levels over a group of fixed-width containers.

    widths are the container widths, levels the liquid heights above the
    baseline; total_area is the conserved quantity.
    """

    widths: tuple[float, ...]
    levels: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "widths", tuple(float(w) for w in self.widths))
        object.__setattr__(self, "levels", tuple(float(v) for v in self.levels))
        if len(self.widths) != len(self.levels):
            raise ShapeError(
                f"{len(self.widths)} widths vs {len(self.levels)} levels"
            )
        for w in self.widths:
            _check_positive(w, "width")
        for v in self.levels:
            if not (math.isfinite(v) and v >= 0.0):
                raise DomainError(f"levels must be finite and >= 0, got {v!r}")

    @property
    def total_area(self) -> float:
        return math.fsum(w * v for w, v in zip(self.widths, self.levels))


def interpolate_levels(start: LevelState, end: LevelState, u: float) -> LevelState:
    """Linearly interpolate liquid levels between two equal-area states.

    Because both endpoints hold the same total area over identical widths,
    the interpolated state holds it too, at every u.
    """
    if start.widths != end.widths:
        raise ShapeError("start and end width vectors differ")
    _check_unit(u)
    area0 = start.total_area
    area1 = end.total_area
    if area0 == 0.0:
        if area1 != 0.0:
            raise ConservationError(
                f"endpoint areas differ: start holds 0, end holds {area1!r}"
            )
    elif abs(area0 - area1) / area0 > PLAN_TOL:
        raise ConservationError(
            f"endpoint areas differ beyond tolerance: {area0!r} vs {area1!r}"
        )
    return LevelState(
        start.widths,
        tuple(lerp(a, b, u) for a, b in zip(start.levels, end.levels)),
    )


class Anchor(Enum):
    """Which bottom corner (or the bottom center) a reshape keeps fixed."""

    BOTTOM_LEFT = "bottom_left"
    BOTTOM_RIGHT = "bottom_right"
    BOTTOM_CENTER = "bottom_center"


@dataclass(frozen=True)
class ReshapeSpec:
    """Endpoints of an equal-area rectangle morph.

    Width is driven directly; height is slaved to area / width, so both
    endpoint rectangles must enclose the same area.
    """

    w0: float
    h0: float
    w1: float
    h1: float
    anchor: Anchor = Anchor.BOTTOM_LEFT

    def __post_init__(self) -> None:
        for name in ("w0", "h0", "w1", "h1"):
            value = float(getattr(self, name))
            _check_positive(value, name)
            object.__setattr__(self, name, value)
        area0 = self.w0 * self.h0
        area1 = self.w1 * self.h1
        if abs(area0 - area1) / area0 > PLAN_TOL:
            raise ConservationError(
                f"endpoint rectangles enclose different areas: {area0!r} vs {area1!r}"
            )

    @property
    def area(self) -> float:
        return self.w0 * self.h0


def reshape_at(spec: ReshapeSpec, u: float) -> tuple[float, float]:
    """Width and height of the reshaped rectangle at eased time u.

    Width interpolates linearly; height is area / width, which keeps
    width * height equal to the invariant area at every u.
    """
    _check_unit(u)
    width = lerp(spec.w0, spec.w1, u)
    return width, spec.area / width


def naive_vertex_lerp_area(spec: ReshapeSpec, u: float) -> float:
    """Area a plain vertex-lerp animation would show at time u.

    Interpolating width and height independently does not preserve area;
    this exists as the documented counterexample oracle.
    """
    _check_unit(u)
    return lerp(spec.w0, spec.w1, u) * lerp(spec.h0, spec.h1, u)


@dataclass(frozen=True)
class StackState:
    """One container's segments in stacking order, bottom first."""

    container_width: float
    segment_heights: tuple[float, ...]
    segment_ids: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "container_width", float(self.container_width))
        object.__setattr__(
            self, "segment_heights", tuple(float(h) for h in self.segment_heights)
        )
        object.__setattr__(self, "segment_ids", tuple(self.segment_ids))
        _check_positive(self.container_width, "container_width")
        if len(self.segment_heights) != len(self.segment_ids):
            raise ShapeError(
                f"{len(self.segment_heights)} heights vs {len(self.segment_ids)} ids"
            )
        for h in self.segment_heights:
            _check_positive(h, "segment height")
        if len(set(self.segment_ids)) != len(self.segment_ids):
            raise ShapeError("segment ids must be unique within a stack")

    def bottoms(self) -> dict[str, float]:
        """Bottom coordinate of each segment: prefix sums starting at 0."""
        out: dict[str, float] = {}
        y = 0.0
        for sid, h in zip(self.segment_ids, self.segment_heights):
            out[sid] = y
            y += h
        return out

    @property
    def total_level(self) -> float:
        return math.fsum(self.segment_heights)


def shift_bottoms(
    start_order: StackState, end_order: StackState, u: float
) -> dict[str, float]:
    """Per-segment bottom coordinates while a stack reorders itself.

    A shift exchanges liquid between segments of one container, so both
    orderings must list the same segments with the same heights; each
    bottom then interpolates linearly between its prefix-sum positions.
    """
    _check_unit(u)
    if start_order.container_width != end_order.container_width:
        raise ConservationError("container widths differ between orderings")
    start_heights = dict(zip(start_order.segment_ids, start_order.segment_heights))
    end_heights = dict(zip(end_order.segment_ids, end_order.segment_heights))
    if start_heights.keys() != end_heights.keys():
        raise ConservationError("orderings do not contain the same segment ids")
    for sid, h in start_heights.items():
        if end_heights[sid] != h:
            raise ConservationError(
                f"segment {sid!r} changes height ({h!r} -> {end_heights[sid]!r})"
            )
    b0 = start_order.bottoms()
    b1 = end_order.bottoms()
    return {sid: lerp(b0[sid], b1[sid], u) for sid in start_order.segment_ids}


@dataclass(frozen=True)
class InvariantReport:
    """Conservation diagnostics over a sampled series of level vectors."""

    tol: float
    baseline_area: float
    max_total_deviation: float
    worst_frame: int
    max_step_deviation: float
    worst_step: int
    passed: bool
    notes: tuple[str, ...] = ()

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        lines = [
            f"baseline area: {self.baseline_area:.12g}",
            f"max total-area deviation: {self.max_total_deviation:.6g}"
            f" (frame {self.worst_frame})",
            f"max step imbalance: {self.max_step_deviation:.6g}"
            f" (step {self.worst_step} -> {self.worst_step + 1})",
            f"tolerance: {self.tol:g} -> {verdict}",
        ]
        lines.extend(self.notes)
        return "\n".join(lines)


def check_conservation(
    widths: Sequence[float],
    level_series: Iterable[Sequence[float]],
    tol: float = PLAN_TOL,
) -> InvariantReport:
    """Check a time series of level vectors for area conservation.

    Reports the worst relative drift of the total area from its first
    sample and the worst per-step imbalance sum(w_k * dL_k), both relative
    to the initial total; passes iff both stay within tol.
    """
    width_vec = tuple(float(w) for w in widths)
    for w in width_vec:
        _check_positive(w, "width")
    series = [tuple(float(v) for v in levels) for levels in level_series]
    if len(series) < 2:
        raise DomainError("level series needs at least 2 samples")
    for i, levels in enumerate(series):
        if len(levels) != len(width_vec):
            raise ShapeError(f"sample {i} has {len(levels)} levels, expected {len(width_vec)}")
    totals = [math.fsum(w * v for w, v in zip(width_vec, levels)) for levels in series]
    baseline = totals[0]
    denom = baseline if baseline > 0.0 else 1.0

    max_total = 0.0
    worst_frame = 0
    for i, total in enumerate(totals):
        dev = abs(total - baseline) / denom
        if dev > max_total:
            max_total, worst_frame = dev, i

    max_step = 0.0
    worst_step = 0
    for i in range(len(series) - 1):
        imbalance = abs(
            math.fsum(
                w * (b - a)
                for w, a, b in zip(width_vec, series[i], series[i + 1])
            )
        ) / denom
        if imbalance > max_step:
            max_step, worst_step = imbalance, i

    return InvariantReport(
        tol=tol,
        baseline_area=baseline,
        max_total_deviation=max_total,
        worst_frame=worst_frame,
        max_step_deviation=max_step,
        worst_step=worst_step,
        passed=max_total <= tol and max_step <= tol,
    )
