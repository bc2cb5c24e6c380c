"""Command-line interface: plan transitions, render frame streams, and
verify conservation.

Exit codes: 0 success, 1 usage or input error, 2 invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .easing import Easing
from .errors import AquanimError
from .kernel import check_conservation
from .planner import TransitionPlan, plan_align, plan_rebin, plan_reshape, sample_frames
from .render import (
    RenderConfig,
    color_order_for,
    container_outlines,
    export_frames_json,
    parse_frames_json,
    render_svg,
    stream_bounds,
)
from .scene import Scene, parse_scene_spec, read_csv_values

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; this CLI reserves 2 for
    # invariant failures, so usage problems surface as exceptions instead.
    def error(self, message):  # noqa: D102
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="aquanim", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    rebin = sub.add_parser("rebin", help="animate a histogram bin-count change")
    rebin.add_argument("--input", required=True, help="CSV file, one value per line")
    rebin.add_argument("--from-bins", required=True, type=int, dest="from_bins")
    rebin.add_argument("--to-bins", required=True, type=int, dest="to_bins")
    rebin.add_argument("--frames", type=int, default=60)
    rebin.add_argument("--ease", choices=["linear", "smoothstep"], default="smoothstep")
    rebin.add_argument("--out", required=True, help="output directory")

    align = sub.add_parser("align", help="align selected segments to the baseline")
    align.add_argument("--scene", required=True, help="scene-spec file")
    align.add_argument("--select", required=True, help="comma-separated segment ids")
    align.add_argument("--out", required=True)

    reshape = sub.add_parser("reshape", help="change a container's width at constant area")
    reshape.add_argument("--scene", required=True)
    reshape.add_argument("--container", required=True)
    reshape.add_argument("--width", required=True, type=float)
    reshape.add_argument("--out", required=True)

    check = sub.add_parser("check", help="verify conservation of a frames.json stream")
    check.add_argument("--frames", required=True, help="frames.json file")
    check.add_argument("--tol", type=float, default=1e-9)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument(
        "--assets",
        default="frontend/dist",
        help="directory with the built UI (served at /; 404 when absent)",
    )

    return parser


def _load_scene(path: str) -> Scene:
    spec = parse_scene_spec(Path(path).read_bytes())
    if not isinstance(spec, Scene):
        raise AquanimError(
            f"{path} contains a transition request; pass a plain scene document"
        )
    return spec


def _write_stream(
    out_dir: str,
    plan: TransitionPlan,
    frames,
    accent_segments: frozenset[str] = frozenset(),
) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "frames.json").write_bytes(export_frames_json(frames))
    outlines = container_outlines(plan)
    cfg = RenderConfig(
        bounds=stream_bounds(frames, outlines),
        color_order=color_order_for(frames),
        outlines=outlines,
        accent_segments=accent_segments,
    )
    for i, frame in enumerate(frames):
        (out / f"frame_{i:04d}.svg").write_bytes(render_svg(frame, cfg))


def _cmd_rebin(args) -> int:
    values = read_csv_values(Path(args.input).read_bytes())
    plan = plan_rebin(values, args.from_bins, args.to_bins, easing=Easing(args.ease))
    frames = sample_frames(plan, args.frames)
    _write_stream(args.out, plan, frames)
    print(f"wrote {len(frames)} frames to {args.out}")
    return EXIT_OK


def _cmd_align(args) -> int:
    scene = _load_scene(args.scene)
    selected = frozenset(s for s in args.select.split(",") if s)
    plan = plan_align(scene, selected)
    frames = sample_frames(plan)
    _write_stream(args.out, plan, frames, accent_segments=selected)
    print(f"wrote {len(frames)} frames to {args.out}")
    return EXIT_OK


def _cmd_reshape(args) -> int:
    scene = _load_scene(args.scene)
    plan = plan_reshape(scene, args.container, args.width)
    frames = sample_frames(plan)
    _write_stream(args.out, plan, frames)
    print(f"wrote {len(frames)} frames to {args.out}")
    return EXIT_OK


def _cmd_check(args) -> int:
    frames = parse_frames_json(Path(args.frames).read_bytes())
    report = check_conservation(
        (1.0,), [(frame.total_area(),) for frame in frames], tol=args.tol
    )
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_INVARIANT


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(args.assets), host="127.0.0.1", port=args.port)
    return EXIT_OK


_COMMANDS = {
    "rebin": _cmd_rebin,
    "align": _cmd_align,
    "reshape": _cmd_reshape,
    "check": _cmd_check,
    "serve": _cmd_serve,
}


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except AquanimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
