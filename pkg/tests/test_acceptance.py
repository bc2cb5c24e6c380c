"""Acceptance suite: the engine's mathematical contracts, end to end.

Each test covers one acceptance criterion at its stated tolerance and
prints one pass line; any assertion failure marks the criterion failed.
Everything here runs without the browser UI built.
"""

import json
import math
import random
import time

from fastapi.testclient import TestClient

from aquanim import (
    Container,
    Easing,
    LiquidSegment,
    ReshapeSpec,
    Scene,
    StackState,
    check_conservation,
    cli_main,
    ease,
    export_frames_json,
    naive_vertex_lerp_area,
    parse_frames_json,
    parse_scene_spec,
    plan_align,
    plan_rebin,
    plan_reshape,
    reshape_at,
    sample_frames,
    scene_rects,
    serialize_scene,
    shift_bottoms,
    smoothstep,
)
from aquanim.planner import TrackKind
from aquanim.service import create_app


def _report(name):
    print(f"[acceptance] {name}: PASS")


def _random_scene(rng: random.Random) -> Scene:
    containers = []
    segments = []
    x = 0.0
    for i in range(rng.randint(1, 6)):
        width = rng.uniform(0.2, 3.0)
        containers.append(
            Container(id=f"c{i}", x=x, width=width, baseline_y=rng.uniform(-2.0, 2.0))
        )
        for index in range(rng.randint(0, 3)):
            segments.append(
                LiquidSegment(
                    id=f"c{i}s{index}",
                    color_key=rng.choice(["alpha", "beta", "gamma"]),
                    area=rng.uniform(0.05, 5.0),
                    container_id=f"c{i}",
                    stack_index=index,
                )
            )
        x += width + rng.uniform(0.0, 1.0)
    return Scene(tuple(containers), tuple(segments))


def _assert_rects_match(actual, expected, tol):
    actual = sorted(actual, key=lambda r: r.segment_id)
    expected = sorted(expected, key=lambda r: r.segment_id)
    assert [r.segment_id for r in actual] == [r.segment_id for r in expected]
    for a, e in zip(actual, expected):
        for attr in ("x", "y", "width", "height"):
            assert math.isclose(
                getattr(a, attr), getattr(e, attr), rel_tol=tol, abs_tol=tol
            )


def test_conservation_under_transfer():
    """200 randomized re-bin plans: every frame total is 1 within 1e-9."""
    rng = random.Random(20240 + 1)
    started = time.perf_counter()
    for case in range(200):
        if case % 2 == 0:
            data = [rng.uniform(-3.0, 3.0) for _ in range(1000)]
        else:
            data = [rng.gauss(0.0, 1.0) for _ in range(1000)]
        plan = plan_rebin(data, rng.randint(1, 32), rng.randint(1, 32))
        for frame in sample_frames(plan, 60):
            total = math.fsum(r.width * r.height for r in frame.rects)
            assert abs(total - 1.0) <= 1e-9
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"conservation sweep took {elapsed:.1f}s"
    _report("conservation under transfer (200 plans, 60 frames, tol 1e-9)")


def test_reshape_closed_form():
    """1000 random reshape specs on a 101-point grid: w*h = area to 1e-12."""
    rng = random.Random(20240 + 2)
    grid = [i / 100 for i in range(101)]
    for _ in range(1000):
        w0 = rng.uniform(0.01, 50.0)
        h0 = rng.uniform(0.01, 50.0)
        w1 = rng.uniform(0.01, 50.0)
        spec = ReshapeSpec(w0=w0, h0=h0, w1=w1, h1=(w0 * h0) / w1)
        for u in grid:
            width, height = reshape_at(spec, u)
            assert abs(width * height - spec.area) <= 1e-12 * spec.area

    flat_to_tall = ReshapeSpec(w0=1.0, h0=4.0, w1=4.0, h1=1.0)
    assert naive_vertex_lerp_area(flat_to_tall, 0.5) == 6.25
    assert reshape_at(flat_to_tall, 0.5) == (2.5, 1.6)
    _report("reshape closed form (1000 specs x 101 samples, tol 1e-12)")


def test_easing_contract():
    """Smoothstep endpoints and midpoint exact; endpoint slopes ~ 0."""
    assert ease(Easing.SMOOTHSTEP, 0.0) == 0.0
    assert ease(Easing.SMOOTHSTEP, 1.0) == 1.0
    assert ease(Easing.SMOOTHSTEP, 0.5) == 0.5
    h = 1e-4
    for t in (0.0, 1.0):
        derivative = (smoothstep(t + h) - smoothstep(t - h)) / (2.0 * h)
        assert abs(derivative) <= 1e-6
    _report("easing contract (exact endpoints, slope <= 1e-6)")


def test_differential_law():
    """Per consecutive frame pair of a transfer: |sum w dL| / S <= 1e-9."""
    rng = random.Random(20240 + 3)
    for _ in range(20):
        data = [rng.gauss(0.0, 1.0) for _ in range(500)]
        m, n = rng.randint(2, 32), rng.randint(2, 32)
        if n == m:  # the identity plan has no transfer track to probe
            n = m + 1 if m < 32 else m - 1
        plan = plan_rebin(data, m, n)
        (track,) = plan.tracks
        payload = track.payload
        series = []
        for i in range(60):
            u = track.local_u(i / 59)
            series.append(
                tuple(
                    (1.0 - u) * a + u * b
                    for a, b in zip(payload.start.levels, payload.end.levels)
                )
            )
        widths = payload.start.widths
        baseline = payload.start.total_area
        for previous, current in zip(series, series[1:]):
            imbalance = math.fsum(
                w * (b - a) for w, a, b in zip(widths, previous, current)
            )
            assert abs(imbalance) / baseline <= 1e-9
        report = check_conservation(widths, series, tol=1e-9)
        assert report.passed and report.max_step_deviation <= 1e-9
    _report("differential law (sum_k w_k dL_k = 0 within 1e-9)")


def test_shift_contract():
    """Shifted segments keep bit-identical sizes; stacks partition exactly."""
    scene = Scene(
        (Container(id="c0", x=0.0, width=1.0),),
        (
            LiquidSegment(id="A", color_key="a", area=1.0, container_id="c0", stack_index=0),
            LiquidSegment(id="B", color_key="b", area=2.0, container_id="c0", stack_index=1),
            LiquidSegment(id="C", color_key="c", area=1.0, container_id="c0", stack_index=2),
        ),
    )
    plan = plan_align(scene, {"C"})
    frames = sample_frames(plan, 60)
    sizes = {}
    for frame in frames:
        for rect in frame.rects:
            sizes.setdefault(rect.segment_id, set()).add((rect.width, rect.height))
    assert all(len(seen) == 1 for seen in sizes.values()), "segment size drifted"

    for frame in (frames[0], frames[-1]):
        stacked = sorted(frame.rects, key=lambda r: r.y)
        cursor = 0.0
        for rect in stacked:
            assert rect.y == cursor  # exact partition, no gaps or overlap
            cursor += rect.height
        assert cursor == 4.0

    # Midpoint bottoms: lerp of the prefix-sum bottoms in each ordering.
    start = StackState(1.0, (1.0, 2.0, 1.0), ("A", "B", "C"))
    end = StackState(1.0, (1.0, 1.0, 2.0), ("C", "A", "B"))
    expected = {
        sid: 0.5 * (start.bottoms()[sid] + end.bottoms()[sid])
        for sid in ("A", "B", "C")
    }
    assert expected == {"A": 0.5, "B": 1.5, "C": 1.5}
    assert shift_bottoms(start, end, 0.5) == expected
    (track,) = plan.tracks
    assert track.kind is TrackKind.SHIFT
    mid_rects = {r.segment_id: r.y for r in sample_frames(plan, 3)[1].rects}
    eased_half = ease(track.easing, 0.5)
    assert eased_half == 0.5
    assert mid_rects == expected
    _report("shift contract (bit-constant areas, exact partitions, midpoint bottoms)")


def test_endpoint_fidelity():
    """First/last frames reproduce the endpoint scenes within 1e-12."""
    rng = random.Random(20240 + 4)
    for _ in range(10):
        data = [rng.uniform(0.0, 10.0) for _ in range(200)]
        plan = plan_rebin(data, rng.randint(1, 16), rng.randint(1, 16))
        frames = sample_frames(plan, rng.randint(2, 80))
        _assert_rects_match(frames[0].rects, scene_rects(plan.source), 1e-12)
        _assert_rects_match(frames[-1].rects, scene_rects(plan.target), 1e-12)

    scene = Scene(
        (Container(id="c0", x=0.0, width=2.0), Container(id="c1", x=3.0, width=1.0)),
        (
            LiquidSegment(id="p", color_key="a", area=2.0, container_id="c0", stack_index=0),
            LiquidSegment(id="q", color_key="b", area=1.0, container_id="c0", stack_index=1),
            LiquidSegment(id="r", color_key="c", area=3.0, container_id="c0", stack_index=2),
            LiquidSegment(id="z", color_key="a", area=1.0, container_id="c1", stack_index=0),
        ),
    )
    for plan in (plan_align(scene, {"r"}), plan_reshape(scene, "c1", 2.5)):
        frames = sample_frames(plan, 33)
        _assert_rects_match(frames[0].rects, scene_rects(plan.source), 1e-12)
        _assert_rects_match(frames[-1].rects, scene_rects(plan.target), 1e-12)
    _report("endpoint fidelity (frame 0 / frame N-1 within 1e-12)")


def test_round_trips(tmp_path):
    """Serialization identities plus the CLI check exit codes."""
    rng = random.Random(20240 + 5)
    for _ in range(25):
        scene = _random_scene(rng)
        data = serialize_scene(scene)
        assert parse_scene_spec(data) == scene
        assert serialize_scene(parse_scene_spec(data)) == data

    for _ in range(10):
        data = [rng.gauss(0.0, 2.0) for _ in range(100)]
        frames = sample_frames(plan_rebin(data, rng.randint(1, 8), rng.randint(1, 8)), 12)
        doc = export_frames_json(frames)
        assert parse_frames_json(doc) == frames
        assert export_frames_json(parse_frames_json(doc)) == doc

    csv_path = tmp_path / "data.csv"
    csv_path.write_text("".join(f"{rng.uniform(0, 5)!r}\n" for _ in range(120)))
    out = tmp_path / "stream"
    assert cli_main(
        ["rebin", "--input", str(csv_path), "--from-bins", "9", "--to-bins", "4",
         "--frames", "24", "--out", str(out)]
    ) == 0
    assert cli_main(["check", "--frames", str(out / "frames.json")]) == 0

    doc = json.loads((out / "frames.json").read_bytes())
    doc["frames"][10]["rects"][0]["height"] *= 1.01
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(doc))
    assert cli_main(["check", "--frames", str(broken)]) == 2
    _report("round-trips (scene-spec, frames.json, CLI check 0/2)")


def test_cli_api_equivalence(tmp_path):
    """CLI rebin and /api/rebin produce byte-identical frames.json."""
    rng = random.Random(20240 + 6)
    client = TestClient(create_app())
    for case in range(20):
        values = [rng.gauss(0.0, 1.0) for _ in range(rng.randint(5, 200))]
        csv_text = "".join(f"{v!r}\n" for v in values)
        from_bins = rng.randint(1, 32)
        to_bins = rng.randint(1, 32)
        frames = rng.randint(2, 20)
        easing = rng.choice(["linear", "smoothstep"])

        out = tmp_path / f"case{case}"
        csv_path = tmp_path / f"case{case}.csv"
        csv_path.write_text(csv_text)
        assert cli_main(
            ["rebin", "--input", str(csv_path),
             "--from-bins", str(from_bins), "--to-bins", str(to_bins),
             "--frames", str(frames), "--ease", easing, "--out", str(out)]
        ) == 0
        response = client.post(
            "/api/rebin",
            json={"csv": csv_text, "from_bins": from_bins, "to_bins": to_bins,
                  "frames": frames, "ease": easing},
        )
        assert response.status_code == 200
        assert response.content == (out / "frames.json").read_bytes()
    _report("CLI/API equivalence (20 randomized inputs, byte-identical)")
