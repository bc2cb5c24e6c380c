"""Transition planning: building-block tracks, the concrete planners
(histogram re-binning, baseline alignment, container reshape), frame
sampling, and plan verification.

A plan is a pair of scenes plus a list of tracks; sampling evaluates every
track at an eased local time and emits axis-aligned rectangles. Planning
and sampling are pure, so identical inputs produce bit-identical frames.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Union

from .easing import Easing, ease
from .errors import ConservationError, DomainError, ParameterError, ShapeError
from .kernel import (
    PLAN_TOL,
    Anchor,
    InvariantReport,
    LevelState,
    ReshapeSpec,
    StackState,
    check_conservation,
    interpolate_levels,
    lerp,
    reshape_at,
    shift_bottoms,
)
from .scene import (
    Container,
    LiquidSegment,
    Scene,
    bin_values,
    default_range,
    histogram_to_scene,
)

DEFAULT_FRAMES = 60


class TrackKind(Enum):
    """The building-block vocabulary."""

    FILL = "fill"
    EMPTY = "empty"
    TRANSFER = "transfer"
    SHIFT = "shift"
    RESHAPE = "reshape"


@dataclass(frozen=True)
class TransferMember:
    """One container of a transfer group plus its liquid identity."""

    container_id: str
    x: float
    width: float
    baseline_y: float
    segment_id: str
    color_key: str


@dataclass(frozen=True)
class TransferPayload:
    """Paired level states over a group of connected containers.

    draw_order lists member indices in paint order (first drawn sits
    behind); levels index members positionally.
    """

    members: tuple[TransferMember, ...]
    start: LevelState
    end: LevelState
    draw_order: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.members) != len(self.start.widths):
            raise ShapeError("member count does not match level vector length")
        for member, width in zip(self.members, self.start.widths):
            if member.width != width:
                raise ShapeError(f"container {member.container_id!r} width differs from level state")
        order = self.draw_order or tuple(range(len(self.members)))
        if sorted(order) != list(range(len(self.members))):
            raise ShapeError("draw_order must be a permutation of member indices")
        object.__setattr__(self, "draw_order", tuple(order))


@dataclass(frozen=True)
class ShiftPayload:
    """A stack reordering inside one container."""

    container: Container
    start: StackState
    end: StackState
    color_keys: tuple[tuple[str, str], ...]  # (segment_id, color_key)
    draw_order: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        colors = dict(self.color_keys)
        if set(colors) != set(self.start.segment_ids):
            raise ShapeError("color_keys must cover exactly the shifted segments")
        order = self.draw_order or self.end.segment_ids
        if sorted(order) != sorted(self.start.segment_ids):
            raise ShapeError("draw_order must be a permutation of the shifted segments")
        object.__setattr__(self, "draw_order", tuple(order))


@dataclass(frozen=True)
class ReshapePayload:
    """An equal-area width change of a single-segment container."""

    container: Container
    segment_id: str
    color_key: str
    spec: ReshapeSpec


@dataclass(frozen=True)
class FillPayload:
    """A single-container level change (area-changing in isolation)."""

    container: Container
    segment_id: str
    color_key: str
    start_level: float
    end_level: float

    def __post_init__(self) -> None:
        for name in ("start_level", "end_level"):
            value = float(getattr(self, name))
            if not (math.isfinite(value) and value >= 0.0):
                raise DomainError(f"{name} must be finite and >= 0")
            object.__setattr__(self, name, value)


Payload = Union[TransferPayload, ShiftPayload, ReshapePayload, FillPayload]

_PAYLOAD_TYPES = {
    TrackKind.TRANSFER: TransferPayload,
    TrackKind.SHIFT: ShiftPayload,
    TrackKind.RESHAPE: ReshapePayload,
    TrackKind.FILL: FillPayload,
    TrackKind.EMPTY: FillPayload,
}


@dataclass(frozen=True)
class Track:
    """One building block, scheduled on a window of the global clock."""

    kind: TrackKind
    payload: Payload
    window: tuple[float, float] = (0.0, 1.0)
    easing: Easing = Easing.SMOOTHSTEP

    def __post_init__(self) -> None:
        expected = _PAYLOAD_TYPES[self.kind]
        if not isinstance(self.payload, expected):
            raise ShapeError(
                f"{self.kind.value} track needs a {expected.__name__}, "
                f"got {type(self.payload).__name__}"
            )
        t0, t1 = (float(self.window[0]), float(self.window[1]))
        object.__setattr__(self, "window", (t0, t1))
        if not (0.0 <= t0 < t1 <= 1.0):
            raise DomainError(f"window must satisfy 0 <= start < end <= 1, got {self.window}")
        if self.kind is TrackKind.TRANSFER:
            area0 = self.payload.start.total_area
            area1 = self.payload.end.total_area
            denom = area0 if area0 > 0.0 else 1.0
            if abs(area0 - area1) / denom > PLAN_TOL:
                raise ConservationError(
                    f"transfer endpoints hold different areas: {area0!r} vs {area1!r}"
                )
        if self.kind is TrackKind.FILL and self.payload.end_level < self.payload.start_level:
            raise DomainError("a fill track must not lower the level")
        if self.kind is TrackKind.EMPTY and self.payload.end_level > self.payload.start_level:
            raise DomainError("an empty track must not raise the level")

    def local_u(self, t: float) -> float:
        """Eased local time: the global clock clamped into this window."""
        t0, t1 = self.window
        raw = (t - t0) / (t1 - t0)
        return ease(self.easing, min(1.0, max(0.0, raw)))

    def driven_segment_ids(self) -> frozenset[str]:
        payload = self.payload
        if isinstance(payload, TransferPayload):
            return frozenset(m.segment_id for m in payload.members)
        if isinstance(payload, ShiftPayload):
            return frozenset(payload.start.segment_ids)
        return frozenset((payload.segment_id,))


@dataclass(frozen=True)
class Rect:
    """An axis-aligned model-space rectangle carrying liquid identity."""

    x: float
    y: float
    width: float
    height: float
    color_key: str
    segment_id: str

    def __post_init__(self) -> None:
        for name in ("x", "y", "width", "height"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.width < 0.0 or self.height < 0.0:
            raise DomainError("rect width/height must be non-negative")

    @property
    def area(self) -> float:
        return self.width * self.height


@dataclass(frozen=True)
class Guide:
    """A remanent horizontal guide line for a reshape."""

    container_id: str
    y: float
    role: str  # "start" | "end"

    def __post_init__(self) -> None:
        object.__setattr__(self, "y", float(self.y))
        if self.role not in ("start", "end"):
            raise DomainError(f"guide role must be 'start' or 'end', got {self.role!r}")


@dataclass(frozen=True)
class Frame:
    """Everything a renderer needs at one instant."""

    t: float
    rects: tuple[Rect, ...]
    guides: tuple[Guide, ...] = ()

    def total_area(self) -> float:
        return math.fsum(r.area for r in self.rects)


@dataclass(frozen=True)
class TransitionPlan:
    """A staged list of tracks carrying one scene into another."""

    source: Scene
    target: Scene
    tracks: tuple[Track, ...] = ()
    conserving: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "tracks", tuple(self.tracks))
        if not self.conserving:
            return
        area0 = self.source.total_area
        area1 = self.target.total_area
        denom = area0 if area0 > 0.0 else 1.0
        if abs(area0 - area1) / denom > PLAN_TOL:
            raise ConservationError(
                f"conserving plan endpoints differ: {area0!r} vs {area1!r}"
            )
        fills = [t for t in self.tracks if t.kind in (TrackKind.FILL, TrackKind.EMPTY)]
        if fills:
            net = math.fsum(
                t.payload.container.width * (t.payload.end_level - t.payload.start_level)
                for t in fills
            )
            if abs(net) / denom > PLAN_TOL:
                raise ConservationError(
                    "fill/empty tracks do not balance; flag the plan non-conserving"
                )
            schedules = {(t.window, t.easing) for t in fills}
            if len(schedules) > 1:
                raise ConservationError(
                    "paired fill/empty tracks must share window and easing to conserve"
                )


def scene_rects(scene: Scene) -> tuple[Rect, ...]:
    """The static rectangle set of a scene: stacked segments per container."""
    rects = []
    for container in scene.containers:
        y = container.baseline_y
        for seg in scene.segments_in(container.id):
            height = seg.area / container.width
            rects.append(
                Rect(
                    x=container.x,
                    y=y,
                    width=container.width,
                    height=height,
                    color_key=seg.color_key,
                    segment_id=seg.id,
                )
            )
            y += height
    return tuple(rects)


def _anchored_x(container: Container, spec: ReshapeSpec, width: float) -> float:
    if spec.anchor is Anchor.BOTTOM_LEFT:
        return container.x
    if spec.anchor is Anchor.BOTTOM_RIGHT:
        return container.x + spec.w0 - width
    return container.x + (spec.w0 - width) / 2.0


def _track_rects(track: Track, u: float) -> list[Rect]:
    payload = track.payload
    if isinstance(payload, TransferPayload):
        state = interpolate_levels(payload.start, payload.end, u)
        rects = []
        for idx in payload.draw_order:
            level = state.levels[idx]
            if level > 0.0:
                m = payload.members[idx]
                rects.append(
                    Rect(m.x, m.baseline_y, m.width, level, m.color_key, m.segment_id)
                )
        return rects
    if isinstance(payload, ShiftPayload):
        bottoms = shift_bottoms(payload.start, payload.end, u)
        heights = dict(zip(payload.start.segment_ids, payload.start.segment_heights))
        colors = dict(payload.color_keys)
        c = payload.container
        return [
            Rect(c.x, c.baseline_y + bottoms[sid], c.width, heights[sid], colors[sid], sid)
            for sid in payload.draw_order
        ]
    if isinstance(payload, ReshapePayload):
        width, height = reshape_at(payload.spec, u)
        c = payload.container
        return [
            Rect(
                _anchored_x(c, payload.spec, width),
                c.baseline_y,
                width,
                height,
                payload.color_key,
                payload.segment_id,
            )
        ]
    level = lerp(payload.start_level, payload.end_level, u)
    c = payload.container
    if level <= 0.0:
        return []
    return [Rect(c.x, c.baseline_y, c.width, level, payload.color_key, payload.segment_id)]


def _track_guides(track: Track) -> list[Guide]:
    if not isinstance(track.payload, ReshapePayload):
        return []
    c = track.payload.container
    spec = track.payload.spec
    return [
        Guide(c.id, c.baseline_y + spec.h0, "start"),
        Guide(c.id, c.baseline_y + spec.h1, "end"),
    ]


def sample_frames(plan: TransitionPlan, n_frames: int = DEFAULT_FRAMES) -> list[Frame]:
    """Sample a plan at n_frames evenly spaced global times.

    Frame 0 reproduces the source scene and the last frame the target
    scene; segments no track drives are emitted unchanged in every frame.
    """
    if not isinstance(n_frames, int) or n_frames < 2:
        raise DomainError(f"n_frames must be an integer >= 2, got {n_frames!r}")
    driven: set[str] = set()
    for track in plan.tracks:
        driven |= track.driven_segment_ids()
    static_rects = [r for r in scene_rects(plan.source) if r.segment_id not in driven]
    guides: list[Guide] = []
    for track in plan.tracks:
        guides.extend(_track_guides(track))
    guide_tuple = tuple(guides)

    frames = []
    for i in range(n_frames):
        t = i / (n_frames - 1)
        rects = list(static_rects)
        for track in plan.tracks:
            rects.extend(_track_rects(track, track.local_u(t)))
        frames.append(Frame(t=t, rects=tuple(rects), guides=guide_tuple))
    return frames


def verify_plan(
    plan: TransitionPlan,
    n_frames: int = DEFAULT_FRAMES,
    tol: float = PLAN_TOL,
) -> InvariantReport:
    """Sample a plan and report whether its frames conserve area.

    Checks the per-frame total rectangle area against frame 0, the
    step-to-step imbalance, and (for shift tracks) that every shifted
    segment keeps an identical width x height in every frame.
    """
    frames = sample_frames(plan, n_frames)
    report = check_conservation(
        (1.0,), [(frame.total_area(),) for frame in frames], tol
    )
    notes = list(report.notes)
    passed = report.passed
    shift_ids = set()
    for track in plan.tracks:
        if track.kind is TrackKind.SHIFT:
            shift_ids |= track.driven_segment_ids()
    if shift_ids:
        sizes: dict[str, set[tuple[float, float]]] = {sid: set() for sid in shift_ids}
        for frame in frames:
            for rect in frame.rects:
                if rect.segment_id in sizes:
                    sizes[rect.segment_id].add((rect.width, rect.height))
        for sid in sorted(sizes):
            if len(sizes[sid]) != 1:
                passed = False
                notes.append(f"shifted segment {sid!r} changes size across frames")
    if passed == report.passed and not notes:
        return report
    return InvariantReport(
        tol=report.tol,
        baseline_area=report.baseline_area,
        max_total_deviation=report.max_total_deviation,
        worst_frame=report.worst_frame,
        max_step_deviation=report.max_step_deviation,
        worst_step=report.worst_step,
        passed=passed,
        notes=tuple(notes),
    )


# --- concrete planners ------------------------------------------------------


def plan_rebin(
    data: Sequence[float],
    from_bins: int,
    to_bins: int,
    easing: Easing = Easing.SMOOTHSTEP,
) -> TransitionPlan:
    """Animate a histogram from one bin count to another.

    Both histograms are density-normalized over a range computed once from
    the data, so each holds total area 1; a single transfer track drains
    the source bins while the target bins fill.
    """
    lo_hi = default_range(data)
    if from_bins == to_bins:
        scene = histogram_to_scene(bin_values(data, from_bins, lo_hi))
        return TransitionPlan(source=scene, target=scene)

    source = histogram_to_scene(bin_values(data, from_bins, lo_hi), id_prefix="src")
    target = histogram_to_scene(bin_values(data, to_bins, lo_hi), id_prefix="dst")

    members = []
    start_levels = []
    end_levels = []
    for scene, is_source in ((source, True), (target, False)):
        for container in scene.containers:
            level = scene.level_of(container.id)
            members.append(
                TransferMember(
                    container_id=container.id,
                    x=container.x,
                    width=container.width,
                    baseline_y=container.baseline_y,
                    segment_id=f"{container.id}:0",
                    color_key="data",
                )
            )
            start_levels.append(level if is_source else 0.0)
            end_levels.append(0.0 if is_source else level)

    widths = tuple(m.width for m in members)
    n_src = len(source.containers)
    n_dst = len(target.containers)
    # Paint target bins first so the draining source bins stay on top.
    draw_order = tuple(range(n_src, n_src + n_dst)) + tuple(range(n_src))
    track = Track(
        kind=TrackKind.TRANSFER,
        payload=TransferPayload(
            members=tuple(members),
            start=LevelState(widths, tuple(start_levels)),
            end=LevelState(widths, tuple(end_levels)),
            draw_order=draw_order,
        ),
        easing=easing,
    )
    return TransitionPlan(source=source, target=target, tracks=(track,))


def plan_align(
    scene: Scene,
    selected: Iterable[str],
    easing: Easing = Easing.SMOOTHSTEP,
) -> TransitionPlan:
    """Move each selected segment to its container's baseline.

    The selected segment goes to stack index 0; the remaining segments keep
    their original relative order. Containers without a selection are left
    alone, as are containers whose selection already sits at the bottom.
    """
    selected_ids = set(selected)
    for sid in selected_ids:
        if not scene.has_segment(sid):
            raise ParameterError(f"unknown segment id {sid!r}")
    per_container: dict[str, list[str]] = {}
    for sid in sorted(selected_ids):
        per_container.setdefault(scene.segment(sid).container_id, []).append(sid)
    for cid, sids in per_container.items():
        if len(sids) > 1:
            raise ParameterError(
                f"container {cid!r} has {len(sids)} selected segments; at most one may align"
            )

    tracks = []
    target_segments: list = []
    for container in scene.containers:
        segs = scene.segments_in(container.id)
        chosen = per_container.get(container.id)
        if not chosen or scene.segment(chosen[0]).stack_index == 0:
            target_segments.extend(segs)
            continue
        pick = scene.segment(chosen[0])
        new_order = [pick] + [s for s in segs if s.id != pick.id]
        heights = {s.id: s.area / container.width for s in segs}
        start_state = StackState(
            container.width,
            tuple(heights[s.id] for s in segs),
            tuple(s.id for s in segs),
        )
        end_state = StackState(
            container.width,
            tuple(heights[s.id] for s in new_order),
            tuple(s.id for s in new_order),
        )
        # End-state stacking order, with the moving segment painted last.
        draw_order = tuple(s.id for s in new_order if s.id != pick.id) + (pick.id,)
        tracks.append(
            Track(
                kind=TrackKind.SHIFT,
                payload=ShiftPayload(
                    container=container,
                    start=start_state,
                    end=end_state,
                    color_keys=tuple((s.id, s.color_key) for s in segs),
                    draw_order=draw_order,
                ),
                easing=easing,
            )
        )
        for index, seg in enumerate(new_order):
            target_segments.append(
                LiquidSegment(
                    id=seg.id,
                    color_key=seg.color_key,
                    area=seg.area,
                    container_id=seg.container_id,
                    stack_index=index,
                )
            )

    target = Scene(scene.containers, tuple(target_segments))
    return TransitionPlan(source=scene, target=target, tracks=tuple(tracks))


def plan_reshape(
    scene: Scene,
    container_id: str,
    new_width: float,
    anchor: Anchor = Anchor.BOTTOM_LEFT,
    easing: Easing = Easing.SMOOTHSTEP,
) -> TransitionPlan:
    """Change one single-segment container's width at constant area."""
    try:
        container = scene.container(container_id)
    except Exception:
        raise ParameterError(f"unknown container id {container_id!r}") from None
    segs = scene.segments_in(container_id)
    if len(segs) != 1:
        raise ParameterError(
            f"container {container_id!r} holds {len(segs)} segments; reshape needs exactly one"
        )
    new_width = float(new_width)
    if not (math.isfinite(new_width) and new_width > 0.0):
        raise ParameterError(f"new width must be positive, got {new_width!r}")
    if new_width == container.width:
        return TransitionPlan(source=scene, target=scene)

    seg = segs[0]
    spec = ReshapeSpec(
        w0=container.width,
        h0=seg.area / container.width,
        w1=new_width,
        h1=seg.area / new_width,
        anchor=anchor,
    )
    new_container = Container(
        id=container.id,
        x=_anchored_x(container, spec, new_width),
        width=new_width,
        baseline_y=container.baseline_y,
    )
    target = Scene(
        tuple(new_container if c.id == container.id else c for c in scene.containers),
        scene.segments,
    )
    track = Track(
        kind=TrackKind.RESHAPE,
        payload=ReshapePayload(
            container=container,
            segment_id=seg.id,
            color_key=seg.color_key,
            spec=spec,
        ),
        easing=easing,
    )
    return TransitionPlan(source=scene, target=target, tracks=(track,))
