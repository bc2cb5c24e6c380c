"""Area-preserving animated transitions for rectangle-based charts.

Data is modeled as incompressible liquid held by containers: the liquid,
not the container, carries identity and color, and its total area never
changes during a transition.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .easing import Easing, ease, smoothstep
from .errors import (
    AquanimError,
    ConservationError,
    DomainError,
    IngestionError,
    InvariantError,
    ParameterError,
    RenderError,
    SceneSyntaxError,
    SchemaError,
    ShapeError,
)
from .kernel import (
    EXACT_TOL,
    PLAN_TOL,
    Anchor,
    InvariantReport,
    LevelState,
    ReshapeSpec,
    StackState,
    check_conservation,
    interpolate_levels,
    lerp,
    naive_vertex_lerp_area,
    reshape_at,
    shift_bottoms,
)
from .scene import (
    Container,
    Histogram,
    LiquidSegment,
    Normalization,
    Scene,
    TransitionRequest,
    bin_values,
    default_range,
    histogram_to_scene,
    parse_scene_spec,
    read_csv_values,
    scene_spec_from_obj,
    serialize_scene,
    serialize_spec,
)
from .planner import (
    DEFAULT_FRAMES,
    FillPayload,
    Frame,
    Guide,
    Rect,
    ReshapePayload,
    ShiftPayload,
    Track,
    TrackKind,
    TransferMember,
    TransferPayload,
    TransitionPlan,
    plan_align,
    plan_rebin,
    plan_reshape,
    sample_frames,
    scene_rects,
    verify_plan,
)
from .render import (
    ACCENT_COLOR,
    DEFAULT_PALETTE,
    ContainerOutline,
    RenderConfig,
    Viewport,
    color_order_for,
    container_outlines,
    export_frames_json,
    parse_frames_json,
    render_svg,
    stream_bounds,
)
from .cli import cli_main

__all__ = [name for name in dir() if not name.startswith("_")]
