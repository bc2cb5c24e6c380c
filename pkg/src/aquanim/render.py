"""Frame rendering: standalone SVG documents and the frames.json stream.

Rendering is pure: identical (frame, config) inputs produce byte-identical
output. One affine transform, fixed from the union bounding box of a whole
stream, maps model space (y up) into the viewport (y down), so rectangle
sizes stay visually comparable across frames.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .errors import DomainError, RenderError, SceneSyntaxError, SchemaError
from .jsonio import dumps_canonical
from .planner import Frame, Guide, Rect

FRAMES_VERSION = 1

# Max |coordinate| a frame may carry; beyond this the affine math degrades.
COORD_LIMIT = 1e12

# Colorblind-safe categorical cycle (Okabe-Ito, minus black).
DEFAULT_PALETTE = (
    "#0072b2",
    "#e69f00",
    "#009e73",
    "#56b4e9",
    "#f0e442",
    "#d55e00",
    "#cc79a7",
    "#999999",
)

# Reserved highlight for selected segments.
ACCENT_COLOR = "#ff00ff"


@dataclass(frozen=True)
class Viewport:
    width_px: int = 800
    height_px: int = 500
    margin_px: int = 40

    def __post_init__(self) -> None:
        if self.width_px <= 0 or self.height_px <= 0 or self.margin_px < 0:
            raise DomainError("viewport dimensions must be positive")
        if 2 * self.margin_px >= min(self.width_px, self.height_px):
            raise DomainError("margins leave no drawable space")


@dataclass(frozen=True)
class ContainerOutline:
    """A hairline vessel outline drawn behind the liquid."""

    container_id: str
    x: float
    y: float
    width: float
    height: float


@dataclass(frozen=True)
class RenderConfig:
    """Everything render_svg needs besides the frame itself."""

    viewport: Viewport = Viewport()
    palette: tuple[str, ...] = DEFAULT_PALETTE
    accent_color: str = ACCENT_COLOR
    guide_dash: str = "4 3"
    y_flip: bool = True
    bounds: tuple[float, float, float, float] | None = None
    color_order: tuple[str, ...] = ()
    outlines: tuple[ContainerOutline, ...] = ()
    accent_segments: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if not self.palette:
            raise DomainError("palette must not be empty")
        if not self.y_flip:
            raise DomainError("model space is y-up; rendering always flips")
        object.__setattr__(self, "accent_segments", frozenset(self.accent_segments))


def stream_bounds(
    frames: Sequence[Frame],
    outlines: Iterable[ContainerOutline] = (),
) -> tuple[float, float, float, float]:
    """Union bounding box over all rects, guides, and outlines of a stream."""
    xs: list[float] = []
    ys: list[float] = []
    for frame in frames:
        for r in frame.rects:
            xs.extend((r.x, r.x + r.width))
            ys.extend((r.y, r.y + r.height))
        for g in frame.guides:
            ys.append(g.y)
    for o in outlines:
        xs.extend((o.x, o.x + o.width))
        ys.extend((o.y, o.y + o.height))
    if not xs:
        return (0.0, 0.0, 1.0, 1.0)
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x0 == x1:
        x1 = x0 + 1.0
    if y0 == y1:
        y1 = y0 + 1.0
    return (x0, y0, x1, y1)


def color_order_for(frames: Sequence[Frame]) -> tuple[str, ...]:
    """Color keys in first-seen order across a whole stream."""
    seen: dict[str, None] = {}
    for frame in frames:
        for r in frame.rects:
            seen.setdefault(r.color_key, None)
    return tuple(seen)


def container_outlines(plan) -> tuple[ContainerOutline, ...]:
    """Vessel outlines for a plan: each container at its fuller endpoint.

    Drained containers keep this hairline outline on screen while their
    liquid is elsewhere.
    """
    boxes: dict[str, ContainerOutline] = {}
    for scene in (plan.source, plan.target):
        for container in scene.containers:
            level = scene.level_of(container.id)
            if level <= 0.0:
                continue
            previous = boxes.get(container.id)
            if previous is None or level > previous.height:
                boxes[container.id] = ContainerOutline(
                    container_id=container.id,
                    x=container.x,
                    y=container.baseline_y,
                    width=container.width,
                    height=level,
                )
    return tuple(boxes[cid] for cid in boxes)


class _Transform:
    """Model -> screen mapping: uniform scale-to-fit plus y flip."""

    def __init__(self, cfg: RenderConfig):
        vp = cfg.viewport
        self.height_px = float(vp.height_px)
        margin = float(vp.margin_px)
        if cfg.bounds is None:
            self.scale = 1.0
            self.x0 = 0.0
            self.y0 = 0.0
            self.ox = margin
            self.oy = margin
        else:
            x0, y0, x1, y1 = cfg.bounds
            inner_w = vp.width_px - 2.0 * margin
            inner_h = vp.height_px - 2.0 * margin
            span_x = x1 - x0 if x1 > x0 else 1.0
            span_y = y1 - y0 if y1 > y0 else 1.0
            self.scale = min(inner_w / span_x, inner_h / span_y)
            self.x0 = x0
            self.y0 = y0
            self.ox = margin + (inner_w - self.scale * span_x) / 2.0
            self.oy = margin + (inner_h - self.scale * span_y) / 2.0

    def point(self, x: float, y: float) -> tuple[float, float]:
        sx = self.ox + (x - self.x0) * self.scale
        sy = self.height_px - self.oy - (y - self.y0) * self.scale
        return sx, sy

    def box(self, x: float, y: float, w: float, h: float) -> tuple[float, float, float, float]:
        left, bottom = self.point(x, y)
        return left, bottom - h * self.scale, w * self.scale, h * self.scale


def _num(value: float) -> str:
    # Three decimals, with -0.000 normalized.
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


def _attr(value: str) -> str:
    return escape(value, {'"': "&quot;"})


def _check_extent(rect: Rect) -> None:
    for v in (rect.x, rect.y, rect.x + rect.width, rect.y + rect.height):
        if abs(v) > COORD_LIMIT:
            raise RenderError(f"rect coordinate {v!r} exceeds renderable range")


def render_svg(frame: Frame, cfg: RenderConfig = RenderConfig()) -> bytes:
    """Render one frame as a standalone SVG 1.1 document."""
    for rect in frame.rects:
        _check_extent(rect)
    tf = _Transform(cfg)
    vp = cfg.viewport

    color_of: dict[str, str] = {}
    for key in cfg.color_order:
        color_of.setdefault(key, cfg.palette[len(color_of) % len(cfg.palette)])
    for rect in frame.rects:
        color_of.setdefault(rect.color_key, cfg.palette[len(color_of) % len(cfg.palette)])

    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{vp.width_px}" height="{vp.height_px}" '
        f'viewBox="0 0 {vp.width_px} {vp.height_px}">',
        f'<rect class="background" x="0" y="0" width="{vp.width_px}" '
        f'height="{vp.height_px}" fill="#ffffff"/>',
    ]

    if cfg.outlines:
        lines.append('<g class="outlines" fill="none" stroke="#c0c0c0" stroke-width="1">')
        for o in cfg.outlines:
            x, y, w, h = tf.box(o.x, o.y, o.width, o.height)
            lines.append(
                f'<rect x="{_num(x)}" y="{_num(y)}" width="{_num(w)}" height="{_num(h)}" '
                f'data-container="{_attr(o.container_id)}"/>'
            )
        lines.append("</g>")

    baseline_y = 0.0 if cfg.bounds is None else cfg.bounds[1]
    ax0, ay = tf.point(tf.x0, baseline_y)
    if cfg.bounds is None:
        ax1 = vp.width_px - vp.margin_px
    else:
        ax1, _ = tf.point(cfg.bounds[2], baseline_y)
    lines.append('<g class="axis" stroke="#404040" stroke-width="1">')
    lines.append(
        f'<line x1="{_num(ax0)}" y1="{_num(ay)}" x2="{_num(ax1)}" y2="{_num(ay)}"/>'
    )
    lines.append("</g>")

    lines.append('<g class="liquid">')
    for rect in frame.rects:
        x, y, w, h = tf.box(rect.x, rect.y, rect.width, rect.height)
        fill = (
            cfg.accent_color
            if rect.segment_id in cfg.accent_segments
            else color_of[rect.color_key]
        )
        lines.append(
            f'<rect x="{_num(x)}" y="{_num(y)}" width="{_num(w)}" height="{_num(h)}" '
            f'fill="{_attr(fill)}" data-segment="{_attr(rect.segment_id)}"/>'
        )
    lines.append("</g>")

    if frame.guides:
        lines.append(
            f'<g class="guides" stroke="#707070" stroke-width="1" '
            f'stroke-dasharray="{_attr(cfg.guide_dash)}">'
        )
        for guide in frame.guides:
            gx0, gy = tf.point(tf.x0, guide.y)
            gx1 = ax1
            lines.append(
                f'<line x1="{_num(gx0)}" y1="{_num(gy)}" x2="{_num(gx1)}" y2="{_num(gy)}" '
                f'data-container="{_attr(guide.container_id)}" data-role="{_attr(guide.role)}"/>'
            )
        lines.append("</g>")

    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


# --- frames.json ------------------------------------------------------------


def frames_to_doc(frames: Sequence[Frame]) -> dict:
    return {
        "version": FRAMES_VERSION,
        "frames": [
            {
                "t": frame.t,
                "rects": [
                    {
                        "x": r.x,
                        "y": r.y,
                        "width": r.width,
                        "height": r.height,
                        "color_key": r.color_key,
                        "segment_id": r.segment_id,
                    }
                    for r in frame.rects
                ],
                "guides": [
                    {"container_id": g.container_id, "y": g.y, "role": g.role}
                    for g in frame.guides
                ],
            }
            for frame in frames
        ],
    }


def export_frames_json(frames: Sequence[Frame]) -> bytes:
    """Canonical frames.json bytes; parse_frames_json inverts losslessly."""
    if not frames:
        raise DomainError("cannot export an empty frame stream")
    return dumps_canonical(frames_to_doc(frames))


def _number(obj: dict, key: str, path: str) -> float:
    if key not in obj:
        raise SchemaError(f"missing field {key!r}", path)
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError("expected a number", f"{path}.{key}")
    return float(value)


def _string(obj: dict, key: str, path: str) -> str:
    if key not in obj:
        raise SchemaError(f"missing field {key!r}", path)
    value = obj[key]
    if not isinstance(value, str):
        raise SchemaError("expected a string", f"{path}.{key}")
    return value


def parse_frames_json(data: bytes | str) -> list[Frame]:
    """Parse a frames.json document back into Frame values."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SceneSyntaxError(f"not valid UTF-8: {exc.reason}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SceneSyntaxError(exc.msg, exc.lineno, exc.colno) from exc

    if not isinstance(doc, dict):
        raise SchemaError("expected an object", "$")
    if doc.get("version") != FRAMES_VERSION:
        raise SchemaError(f"unsupported version {doc.get('version')!r}", "$.version")
    raw_frames = doc.get("frames")
    if not isinstance(raw_frames, list) or not raw_frames:
        raise SchemaError("frames must be a non-empty array", "$.frames")

    frames = []
    for i, raw in enumerate(raw_frames):
        path = f"$.frames[{i}]"
        if not isinstance(raw, dict):
            raise SchemaError("expected an object", path)
        for key in raw:
            if key not in ("t", "rects", "guides"):
                raise SchemaError(f"unknown field {key!r}", path)
        t = _number(raw, "t", path)
        rects = []
        if not isinstance(raw.get("rects"), list):
            raise SchemaError("rects must be an array", f"{path}.rects")
        for j, robj in enumerate(raw["rects"]):
            rpath = f"{path}.rects[{j}]"
            if not isinstance(robj, dict):
                raise SchemaError("expected an object", rpath)
            rects.append(
                Rect(
                    x=_number(robj, "x", rpath),
                    y=_number(robj, "y", rpath),
                    width=_number(robj, "width", rpath),
                    height=_number(robj, "height", rpath),
                    color_key=_string(robj, "color_key", rpath),
                    segment_id=_string(robj, "segment_id", rpath),
                )
            )
        guides = []
        if not isinstance(raw.get("guides"), list):
            raise SchemaError("guides must be an array", f"{path}.guides")
        for j, gobj in enumerate(raw["guides"]):
            gpath = f"{path}.guides[{j}]"
            if not isinstance(gobj, dict):
                raise SchemaError("expected an object", gpath)
            guides.append(
                Guide(
                    container_id=_string(gobj, "container_id", gpath),
                    y=_number(gobj, "y", gpath),
                    role=_string(gobj, "role", gpath),
                )
            )
        frames.append(Frame(t=t, rects=tuple(rects), guides=tuple(guides)))
    return frames
