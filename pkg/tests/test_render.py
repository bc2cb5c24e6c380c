import math
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aquanim import (
    DomainError,
    Frame,
    Guide,
    Rect,
    RenderConfig,
    RenderError,
    SceneSyntaxError,
    SchemaError,
    Viewport,
    color_order_for,
    container_outlines,
    export_frames_json,
    parse_frames_json,
    plan_rebin,
    render_svg,
    sample_frames,
    stream_bounds,
)

GOLDEN_DIR = Path(__file__).parent / "golden"


def _unit_square_frame():
    return Frame(
        t=0.0,
        rects=(Rect(x=0.0, y=0.0, width=1.0, height=1.0, color_key="k", segment_id="s"),),
    )


# --- SVG rendering ------------------------------------------------------------


def test_identity_transform_places_unit_square():
    cfg = RenderConfig(viewport=Viewport(width_px=100, height_px=100, margin_px=0))
    svg = render_svg(_unit_square_frame(), cfg).decode()
    assert '<rect x="0.000" y="99.000" width="1.000" height="1.000"' in svg


def test_scale_to_fit_fills_viewport():
    cfg = RenderConfig(
        viewport=Viewport(width_px=100, height_px=100, margin_px=0),
        bounds=(0.0, 0.0, 1.0, 1.0),
    )
    svg = render_svg(_unit_square_frame(), cfg).decode()
    assert '<rect x="0.000" y="0.000" width="100.000" height="100.000"' in svg


def test_empty_frame_has_background_and_axis_only():
    svg = render_svg(Frame(t=0.0, rects=())).decode()
    assert 'class="background"' in svg
    assert 'class="axis"' in svg
    assert "data-segment" not in svg


def test_rendering_is_deterministic():
    plan = plan_rebin([0.0, 0.3, 0.7, 1.0], 3, 2)
    frames = sample_frames(plan, 9)
    cfg = RenderConfig(
        bounds=stream_bounds(frames),
        color_order=color_order_for(frames),
        outlines=container_outlines(plan),
    )
    assert render_svg(frames[4], cfg) == render_svg(frames[4], cfg)


def test_golden_rebin_midframe():
    from aquanim import Easing

    plan = plan_rebin([0.0, 0.25, 0.5, 0.75, 1.0], 3, 2, easing=Easing.SMOOTHSTEP)
    frames = sample_frames(plan, 5)
    outlines = container_outlines(plan)
    cfg = RenderConfig(
        viewport=Viewport(width_px=320, height_px=200, margin_px=20),
        bounds=stream_bounds(frames, outlines),
        color_order=color_order_for(frames),
        outlines=outlines,
    )
    golden = (GOLDEN_DIR / "rebin_midframe.svg").read_bytes()
    assert render_svg(frames[2], cfg) == golden


def test_palette_follows_first_seen_order():
    frame = Frame(
        t=0.0,
        rects=(
            Rect(0.0, 0.0, 1.0, 1.0, "beta", "s0"),
            Rect(1.0, 0.0, 1.0, 1.0, "alpha", "s1"),
            Rect(2.0, 0.0, 1.0, 1.0, "beta", "s2"),
        ),
    )
    cfg = RenderConfig(palette=("#111111", "#222222"))
    svg = render_svg(frame, cfg).decode()
    assert svg.index('fill="#111111" data-segment="s0"') < svg.index(
        'fill="#222222" data-segment="s1"'
    )
    assert 'fill="#111111" data-segment="s2"' in svg


def test_accent_segments_use_accent_color():
    frame = _unit_square_frame()
    cfg = RenderConfig(accent_segments=frozenset({"s"}))
    svg = render_svg(frame, cfg).decode()
    assert 'fill="#ff00ff" data-segment="s"' in svg


def test_ids_are_escaped():
    frame = Frame(
        t=0.0,
        rects=(Rect(0.0, 0.0, 1.0, 1.0, "k", 'we"ird<&id'),),
    )
    svg = render_svg(frame).decode()
    assert 'data-segment="we&quot;ird&lt;&amp;id"' in svg
    assert 'we"ird<' not in svg


def test_guides_render_dashed():
    frame = Frame(
        t=0.5,
        rects=(),
        guides=(Guide(container_id="c", y=1.0, role="start"),),
    )
    svg = render_svg(frame).decode()
    assert "stroke-dasharray" in svg
    assert 'data-role="start"' in svg


def test_extreme_coordinates_rejected():
    frame = Frame(
        t=0.0,
        rects=(Rect(1e13, 0.0, 1.0, 1.0, "k", "s"),),
    )
    with pytest.raises(RenderError):
        render_svg(frame)


def test_viewport_validation():
    with pytest.raises(DomainError):
        Viewport(width_px=0)
    with pytest.raises(DomainError):
        Viewport(width_px=10, height_px=10, margin_px=5)
    with pytest.raises(DomainError):
        RenderConfig(palette=())


# --- frames.json ----------------------------------------------------------------


finite = st.floats(allow_nan=False, allow_infinity=False, min_value=-1e6, max_value=1e6)
sizes = st.floats(min_value=0.0, max_value=1e6)
names = st.text(
    alphabet=st.characters(codec="ascii", exclude_characters='\x00'),
    min_size=0,
    max_size=8,
)


@st.composite
def frame_streams(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    frames = []
    for i in range(n):
        rects = tuple(
            Rect(
                x=draw(finite),
                y=draw(finite),
                width=draw(sizes),
                height=draw(sizes),
                color_key=draw(names),
                segment_id=draw(names),
            )
            for _ in range(draw(st.integers(0, 4)))
        )
        guides = tuple(
            Guide(
                container_id=draw(names),
                y=draw(finite),
                role=draw(st.sampled_from(["start", "end"])),
            )
            for _ in range(draw(st.integers(0, 2)))
        )
        frames.append(Frame(t=i / max(n - 1, 1), rects=rects, guides=guides))
    return frames


@given(frames=frame_streams())
def test_frames_json_round_trip(frames):
    data = export_frames_json(frames)
    parsed = parse_frames_json(data)
    assert parsed == frames
    assert export_frames_json(parsed) == data


def test_frames_json_preserves_doubles_exactly():
    frames = [
        Frame(t=0.0, rects=(Rect(0.1, 0.2, 0.3, 1e-17, "k", "s"),)),
        Frame(t=1.0, rects=(Rect(-0.0, 2.0**-40, 1.0, 1.0, "k", "s"),)),
    ]
    parsed = parse_frames_json(export_frames_json(frames))
    for original, roundtripped in zip(frames, parsed):
        for a, b in zip(original.rects, roundtripped.rects):
            assert (a.x, a.y, a.width, a.height) == (b.x, b.y, b.width, b.height)


def test_export_rejects_empty_stream():
    with pytest.raises(DomainError):
        export_frames_json([])


def test_parse_frames_rejects_bad_documents():
    with pytest.raises(SceneSyntaxError):
        parse_frames_json(b"{nope")
    with pytest.raises(SchemaError):
        parse_frames_json(b'{"version": 2, "frames": []}')
    with pytest.raises(SchemaError):
        parse_frames_json(b'{"version": 1, "frames": []}')
    with pytest.raises(SchemaError) as err:
        parse_frames_json(
            b'{"version": 1, "frames": [{"t": 0, "rects": [{"x": 0}], "guides": []}]}'
        )
    assert "frames[0].rects[0]" in err.value.path


def test_recovered_model_area_matches_plan_total():
    plan = plan_rebin([0.1, 0.4, 0.9, 1.6, 2.2, 3.0], 6, 3)
    frames = sample_frames(plan, 40)
    recovered = parse_frames_json(export_frames_json(frames))
    for frame in recovered:
        total = math.fsum(r.width * r.height for r in frame.rects)
        assert total == pytest.approx(1.0, rel=1e-9)
