"""Chart-state model: containers and liquid segments, histogram binning,
CSV ingestion, and the scene-spec document format.

Model space is y-up: liquid levels are heights above a container's
baseline. Renderers flip.
"""

from __future__ import annotations

import json
import math
import re
from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Sequence, Union

from .errors import (
    DomainError,
    IngestionError,
    InvariantError,
    SceneSyntaxError,
    SchemaError,
)
from .jsonio import dumps_canonical

SCENE_SPEC_VERSION = 1
TRANSITION_KINDS = ("rebin", "align", "custom")


@dataclass(frozen=True)
class Container:
    """A vessel positioned on the baseline; its liquid encodes the data."""

    id: str
    x: float
    width: float
    baseline_y: float = 0.0

    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not self.id:
            raise InvariantError(f"container id must be a non-empty string, got {self.id!r}")
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "width", float(self.width))
        object.__setattr__(self, "baseline_y", float(self.baseline_y))
        if not (math.isfinite(self.width) and self.width > 0.0):
            raise InvariantError(f"container {self.id!r}: width must be positive")
        if not (math.isfinite(self.x) and math.isfinite(self.baseline_y)):
            raise InvariantError(f"container {self.id!r}: coordinates must be finite")


@dataclass(frozen=True)
class LiquidSegment:
    """A colored, identity-carrying quantity of liquid with fixed area."""

    id: str
    color_key: str
    area: float
    container_id: str
    stack_index: int

    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not self.id:
            raise InvariantError(f"segment id must be a non-empty string, got {self.id!r}")
        if not isinstance(self.color_key, str):
            raise InvariantError(f"segment {self.id!r}: color_key must be a string")
        object.__setattr__(self, "area", float(self.area))
        if not (math.isfinite(self.area) and self.area > 0.0):
            raise InvariantError(f"segment {self.id!r}: area must be positive")
        if not isinstance(self.stack_index, int) or self.stack_index < 0:
            raise InvariantError(f"segment {self.id!r}: stack_index must be an int >= 0")


@dataclass(frozen=True)
class Scene:
    """A set of containers holding ordered liquid segments."""

    containers: tuple[Container, ...]
    segments: tuple[LiquidSegment, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "containers", tuple(self.containers))
        object.__setattr__(self, "segments", tuple(self.segments))
        by_id: dict[str, Container] = {}
        for c in self.containers:
            if c.id in by_id:
                raise InvariantError(f"duplicate container id {c.id!r}")
            by_id[c.id] = c
        seg_ids: set[str] = set()
        stacked: dict[str, list[int]] = {}
        for s in self.segments:
            if s.id in seg_ids:
                raise InvariantError(f"duplicate segment id {s.id!r}")
            seg_ids.add(s.id)
            if s.container_id not in by_id:
                raise InvariantError(
                    f"segment {s.id!r} references unknown container {s.container_id!r}"
                )
            stacked.setdefault(s.container_id, []).append(s.stack_index)
        for cid, indices in stacked.items():
            if sorted(indices) != list(range(len(indices))):
                raise InvariantError(
                    f"container {cid!r}: stack indices must be 0..{len(indices) - 1} with no gaps"
                )
        object.__setattr__(self, "_by_container_id", by_id)
        object.__setattr__(self, "_by_segment_id", {s.id: s for s in self.segments})

    @property
    def total_area(self) -> float:
        return math.fsum(s.area for s in self.segments)

    def container(self, container_id: str) -> Container:
        try:
            return self._by_container_id[container_id]  # type: ignore[attr-defined]
        except KeyError:
            raise InvariantError(f"unknown container {container_id!r}") from None

    def segment(self, segment_id: str) -> LiquidSegment:
        try:
            return self._by_segment_id[segment_id]  # type: ignore[attr-defined]
        except KeyError:
            raise InvariantError(f"unknown segment {segment_id!r}") from None

    def has_segment(self, segment_id: str) -> bool:
        return segment_id in self._by_segment_id  # type: ignore[attr-defined]

    def segments_in(self, container_id: str) -> list[LiquidSegment]:
        """Segments of one container, bottom first."""
        found = [s for s in self.segments if s.container_id == container_id]
        found.sort(key=lambda s: s.stack_index)
        return found

    def level_of(self, container_id: str) -> float:
        """Total liquid height in a container."""
        width = self.container(container_id).width
        return math.fsum(s.area / width for s in self.segments_in(container_id))


class Normalization(Enum):
    """How bin counts translate into liquid area."""

    DENSITY = "density"
    COUNT = "count"


@dataclass(frozen=True)
class Histogram:
    """Equal-width binned data: k+1 edges, k counts."""

    edges: tuple[float, ...]
    counts: tuple[int, ...]
    normalization: Normalization = Normalization.DENSITY

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(float(e) for e in self.edges))
        object.__setattr__(self, "counts", tuple(self.counts))
        if len(self.edges) != len(self.counts) + 1:
            raise DomainError(
                f"{len(self.edges)} edges do not fit {len(self.counts)} counts"
            )
        if not self.counts:
            raise DomainError("histogram needs at least one bin")
        for a, b in zip(self.edges, self.edges[1:]):
            if not (math.isfinite(a) and math.isfinite(b) and a < b):
                raise DomainError("edges must be finite and strictly increasing")
        for c in self.counts:
            if not isinstance(c, int) or c < 0:
                raise DomainError(f"counts must be non-negative integers, got {c!r}")

    @property
    def total_count(self) -> int:
        return sum(self.counts)

    def bin_widths(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in zip(self.edges, self.edges[1:]))

    def bin_areas(self) -> tuple[float, ...]:
        """Liquid area per bin; under density normalization these sum to 1."""
        if self.normalization is Normalization.DENSITY:
            total = self.total_count
            if total == 0:
                raise DomainError("total count zero cannot be density-normalized")
            return tuple(c / total for c in self.counts)
        return tuple(c * w for c, w in zip(self.counts, self.bin_widths()))

    def levels(self) -> tuple[float, ...]:
        """Liquid height per bin (area / bin width)."""
        return tuple(a / w for a, w in zip(self.bin_areas(), self.bin_widths()))


def bin_values(
    data: Sequence[float],
    k: int,
    value_range: tuple[float, float] | None = None,
    normalization: Normalization = Normalization.DENSITY,
) -> Histogram:
    """Bin data into k equal-width bins.

    Bins are half-open [e_i, e_i+1) except the last, which is closed. The
    default range is the data min/max (expanded by +-0.5 when they
    coincide); with an explicit range, out-of-range values are rejected.
    """
    values = [float(v) for v in data]
    if not values:
        raise DomainError("cannot bin empty data")
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"bin count must be a positive integer, got {k!r}")
    for v in values:
        if not math.isfinite(v):
            raise DomainError(f"data must be finite, got {v!r}")

    explicit = value_range is not None
    if explicit:
        lo, hi = (float(value_range[0]), float(value_range[1]))
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise DomainError(f"invalid range [{lo!r}, {hi!r}]")
    else:
        lo, hi = min(values), max(values)
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5

    span = hi - lo
    edges = [lo + i * span / k for i in range(k)] + [hi]
    for a, b in zip(edges, edges[1:]):
        if not a < b:
            raise DomainError(f"range [{lo}, {hi}] is too narrow for {k} bins")

    counts = [0] * k
    for v in values:
        if v < lo or v > hi:
            raise IngestionError(f"value {v!r} outside explicit range [{lo}, {hi}]")
        i = bisect_right(edges, v) - 1
        if i == k:  # v == hi: the last bin is closed
            i = k - 1
        counts[i] += 1
    return Histogram(tuple(edges), tuple(counts), normalization)


def default_range(data: Sequence[float]) -> tuple[float, float]:
    """The range bin_values would pick on its own; shared across re-bin pairs."""
    values = [float(v) for v in data]
    if not values:
        raise DomainError("cannot derive a range from empty data")
    lo, hi = min(values), max(values)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def histogram_to_scene(
    h: Histogram,
    *,
    id_prefix: str = "bin",
    color_key: str = "data",
    baseline_y: float = 0.0,
) -> Scene:
    """One container per bin; one segment per non-empty bin.

    Under density normalization segment areas are count/total, so the scene
    total area is 1. Empty bins yield containers with no segment.
    """
    areas = h.bin_areas()
    containers = []
    segments = []
    for i, (count, area) in enumerate(zip(h.counts, areas)):
        cid = f"{id_prefix}{i}"
        containers.append(
            Container(
                id=cid,
                x=h.edges[i],
                width=h.edges[i + 1] - h.edges[i],
                baseline_y=baseline_y,
            )
        )
        if count > 0:
            segments.append(
                LiquidSegment(
                    id=f"{cid}:0",
                    color_key=color_key,
                    area=area,
                    container_id=cid,
                    stack_index=0,
                )
            )
    return Scene(tuple(containers), tuple(segments))


@dataclass(frozen=True)
class TransitionRequest:
    """A scene plus the transition to run on it."""

    scene: Scene
    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in TRANSITION_KINDS:
            raise InvariantError(f"unknown transition kind {self.kind!r}")
        object.__setattr__(self, "params", dict(self.params))


# --- scene-spec document handling -----------------------------------------

_CONTAINER_REQUIRED = {"id", "x", "width"}
_CONTAINER_ALLOWED = _CONTAINER_REQUIRED | {"baseline_y"}
_SEGMENT_KEYS = {"id", "color_key", "area", "container_id", "stack_index"}
_TOP_KEYS = {"version", "containers", "segments", "transition"}
_TRANSITION_KEYS = {"kind", "params"}


def _expect_obj(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(f"expected an object, got {type(value).__name__}", path)
    return value


def _expect_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaError(f"expected an array, got {type(value).__name__}", path)
    return value


def _expect_str(obj: dict, key: str, path: str) -> str:
    value = _require(obj, key, path)
    if not isinstance(value, str):
        raise SchemaError("expected a string", f"{path}.{key}")
    return value


def _expect_number(obj: dict, key: str, path: str, default: float | None = None) -> float:
    if default is not None and key not in obj:
        return default
    value = _require(obj, key, path)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError("expected a number", f"{path}.{key}")
    return float(value)


def _expect_int(obj: dict, key: str, path: str) -> int:
    value = _require(obj, key, path)
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError("expected an integer", f"{path}.{key}")
    return value


def _require(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise SchemaError(f"missing field {key!r}", path)
    return obj[key]


def _reject_unknown(obj: dict, allowed: set[str], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"unknown field {key!r}", path)


def scene_spec_from_obj(doc: Any) -> Union[Scene, TransitionRequest]:
    """Validate a decoded scene-spec object and build the model."""
    root = _expect_obj(doc, "$")
    _reject_unknown(root, _TOP_KEYS, "$")
    version = _expect_int(root, "version", "$")
    if version != SCENE_SPEC_VERSION:
        raise SchemaError(f"unsupported version {version}", "$.version")

    containers = []
    seen_cids: set[str] = set()
    for i, item in enumerate(_expect_list(_require(root, "containers", "$"), "$.containers")):
        path = f"$.containers[{i}]"
        obj = _expect_obj(item, path)
        _reject_unknown(obj, _CONTAINER_ALLOWED, path)
        cid = _expect_str(obj, "id", path)
        if cid in seen_cids:
            raise SchemaError(f"duplicate container id {cid!r}", f"{path}.id")
        seen_cids.add(cid)
        containers.append(
            Container(
                id=cid,
                x=_expect_number(obj, "x", path),
                width=_expect_number(obj, "width", path),
                baseline_y=_expect_number(obj, "baseline_y", path, default=0.0),
            )
        )

    segments = []
    seen_sids: set[str] = set()
    for i, item in enumerate(_expect_list(_require(root, "segments", "$"), "$.segments")):
        path = f"$.segments[{i}]"
        obj = _expect_obj(item, path)
        _reject_unknown(obj, _SEGMENT_KEYS, path)
        sid = _expect_str(obj, "id", path)
        if sid in seen_sids:
            raise SchemaError(f"duplicate segment id {sid!r}", f"{path}.id")
        seen_sids.add(sid)
        segments.append(
            LiquidSegment(
                id=sid,
                color_key=_expect_str(obj, "color_key", path),
                area=_expect_number(obj, "area", path),
                container_id=_expect_str(obj, "container_id", path),
                stack_index=_expect_int(obj, "stack_index", path),
            )
        )

    scene = Scene(tuple(containers), tuple(segments))
    if "transition" not in root:
        return scene

    path = "$.transition"
    tr = _expect_obj(root["transition"], path)
    _reject_unknown(tr, _TRANSITION_KEYS, path)
    kind = _expect_str(tr, "kind", path)
    if kind not in TRANSITION_KINDS:
        raise SchemaError(f"kind must be one of {TRANSITION_KINDS}", f"{path}.kind")
    params = _expect_obj(_require(tr, "params", path), f"{path}.params")
    return TransitionRequest(scene=scene, kind=kind, params=params)


def parse_scene_spec(text: bytes | str) -> Union[Scene, TransitionRequest]:
    """Parse scene-spec text into a Scene or TransitionRequest.

    Syntax problems raise SceneSyntaxError with a position, structural
    problems SchemaError with a field path, and semantic problems
    InvariantError; the three are distinct exception types.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SceneSyntaxError(f"not valid UTF-8: {exc.reason}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    return scene_spec_from_obj(doc)


def scene_to_obj(scene: Scene) -> dict:
    return {
        "version": SCENE_SPEC_VERSION,
        "containers": [
            {"id": c.id, "x": c.x, "width": c.width, "baseline_y": c.baseline_y}
            for c in scene.containers
        ],
        "segments": [
            {
                "id": s.id,
                "color_key": s.color_key,
                "area": s.area,
                "container_id": s.container_id,
                "stack_index": s.stack_index,
            }
            for s in scene.segments
        ],
    }


def serialize_scene(scene: Scene) -> bytes:
    """Canonical scene-spec bytes; parse(serialize(s)) is the identity."""
    return dumps_canonical(scene_to_obj(scene))


def serialize_spec(spec: Union[Scene, TransitionRequest]) -> bytes:
    """Serialize either scene-spec variant canonically."""
    if isinstance(spec, Scene):
        return serialize_scene(spec)
    doc = scene_to_obj(spec.scene)
    doc["transition"] = {"kind": spec.kind, "params": dict(spec.params)}
    return dumps_canonical(doc)


# --- CSV ingestion ---------------------------------------------------------

# Plain decimal or scientific notation; no thousands separators, no
# underscores, no inf/nan.
_NUMBER_RE = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")


def read_csv_values(text: bytes | str) -> list[float]:
    """Read the one-value-per-line CSV dialect.

    A single leading header line is skipped when it is not numeric; any
    other non-numeric line is an error naming the line number. Blank lines
    are ignored.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise IngestionError(f"CSV is not valid UTF-8: {exc.reason}") from exc
    values: list[float] = []
    first_content_line = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if _NUMBER_RE.match(line):
            values.append(float(line))
        elif first_content_line:
            pass  # header
        else:
            raise IngestionError(f"line {lineno}: not a number: {line!r}")
        first_content_line = False
    return values
