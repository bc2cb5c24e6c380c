"""Shared hypothesis strategies and small oracles for the test suite."""

from __future__ import annotations

import math

from hypothesis import strategies as st

from aquanim import Container, LevelState, LiquidSegment, ReshapeSpec, Scene

finite_coords = st.floats(
    allow_nan=False, allow_infinity=False, min_value=-1e9, max_value=1e9
)
positive_lengths = st.floats(min_value=1e-3, max_value=1e3)
level_values = st.floats(min_value=0.0, max_value=1e3)
unit_floats = st.floats(min_value=0.0, max_value=1.0)


def weighted_sum(widths, levels) -> float:
    """Independent conservation oracle: plain exact summation."""
    return math.fsum(w * v for w, v in zip(widths, levels))


@st.composite
def matched_level_states(draw) -> tuple[LevelState, LevelState]:
    """Two level states over identical widths holding the same total area."""
    n = draw(st.integers(min_value=1, max_value=8))
    widths = tuple(draw(st.lists(positive_lengths, min_size=n, max_size=n)))
    start = tuple(draw(st.lists(level_values, min_size=n, max_size=n)))
    raw_end = tuple(draw(st.lists(level_values, min_size=n, max_size=n)))
    total0 = weighted_sum(widths, start)
    total1 = weighted_sum(widths, raw_end)
    if total0 == 0.0:
        end = tuple(0.0 for _ in raw_end)
    elif total1 == 0.0 or total0 / total1 > 1e9:
        # Rescaling would blow up; park the whole start area in one container.
        end = (total0 / widths[0],) + tuple(0.0 for _ in raw_end[1:])
    else:
        scale = total0 / total1
        end = tuple(v * scale for v in raw_end)
    return LevelState(widths, start), LevelState(widths, end)


@st.composite
def reshape_specs(draw) -> ReshapeSpec:
    w0 = draw(positive_lengths)
    h0 = draw(positive_lengths)
    w1 = draw(positive_lengths)
    area = w0 * h0
    return ReshapeSpec(w0=w0, h0=h0, w1=w1, h1=area / w1)


@st.composite
def scenes(draw) -> Scene:
    n_containers = draw(st.integers(min_value=1, max_value=5))
    containers = []
    for i in range(n_containers):
        containers.append(
            Container(
                id=f"c{i}",
                x=draw(finite_coords),
                width=draw(positive_lengths),
                baseline_y=draw(finite_coords),
            )
        )
    segments = []
    counter = 0
    for container in containers:
        stack = draw(st.integers(min_value=0, max_value=3))
        for index in range(stack):
            segments.append(
                LiquidSegment(
                    id=f"s{counter}",
                    color_key=draw(st.sampled_from(["alpha", "beta", "gamma"])),
                    area=draw(positive_lengths),
                    container_id=container.id,
                    stack_index=index,
                )
            )
            counter += 1
    return Scene(tuple(containers), tuple(segments))


@st.composite
def stacked_scenes(draw) -> Scene:
    """Scenes where every container holds at least two segments."""
    scene = draw(scenes())
    containers = scene.containers
    segments = list(scene.segments)
    counter = len(segments)
    for container in containers:
        have = len([s for s in segments if s.container_id == container.id])
        for index in range(have, 2):
            segments.append(
                LiquidSegment(
                    id=f"extra{counter}",
                    color_key="delta",
                    area=draw(positive_lengths),
                    container_id=container.id,
                    stack_index=index,
                )
            )
            counter += 1
    return Scene(containers, tuple(segments))
