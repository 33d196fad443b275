"""Command-line front door: validate maps, replay traces, export frame timelines.

Exit status discipline: 0 success, 1 domain error (bad document, infeasible
palette, replay failure), 2 environment error (unreadable file, bad image).
Every command is deterministic; identical inputs give byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .engine import (
    EngineConfig,
    EngineError,
    RenderFrame,
    TipPolicy,
    handle_event,
    new_session,
    render_at,
)
from .imagemap import Guidebook, GuidebookError, parse_guidebook
from .styling import (
    PaletteError,
    choose_outline_style,
    default_palette,
    image_color_stats,
    load_palette,
)
from .tracelog import (
    TraceError,
    compute_metrics,
    event_of,
    parse_trace,
    pointer_records,
    replay,
    serialize_trace,
)

__all__ = ["main"]


class _CliError(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}", 2) from exc


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _CliError(f"cannot write {path}: {exc}", 2) from exc


def _load_guidebook(path: str) -> Guidebook:
    try:
        return parse_guidebook(_read_text(path))
    except GuidebookError as exc:
        raise _CliError(f"{path}: {exc}", 1) from exc


def _load_trace(path: str):
    try:
        return parse_trace(_read_text(path))
    except TraceError as exc:
        raise _CliError(f"{path}: {exc}", 1) from exc


def _config_from_args(args: argparse.Namespace) -> EngineConfig:
    try:
        return EngineConfig(
            tip_hold_ms=args.tip_hold_ms,
            tip_fade_ms=args.tip_fade_ms,
            slide_hold_threshold_ms=args.slide_hold_ms,
            tap_max_travel_px=args.tap_travel_px,
            tap_max_duration_ms=args.tap_duration_ms,
        )
    except EngineError as exc:
        raise _CliError(str(exc), 1) from exc


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tip-hold-ms", type=int, default=600, help="full-opacity hold phase")
    parser.add_argument("--tip-fade-ms", type=int, default=1200, help="linear fade phase")
    parser.add_argument("--slide-hold-ms", type=int, default=500, help="slide_lift reveal threshold")
    parser.add_argument("--tap-travel-px", type=float, default=8.0, help="max travel for a tap")
    parser.add_argument("--tap-duration-ms", type=int, default=400, help="max duration for a tap")


def _policy(value: str) -> TipPolicy:
    try:
        return TipPolicy(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown policy {value!r}; choose from "
            + ", ".join(p.value for p in TipPolicy)
        ) from None


def _dump_json(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        _write_text(out_path, text)


# --- commands ----------------------------------------------------------------

def _cmd_validate(args: argparse.Namespace) -> int:
    guidebook = _load_guidebook(args.map)
    rooms = len(guidebook.rooms)
    walls = sum(len(r.walls) for r in guidebook.rooms)
    targets = sum(len(w.targets) for _r, w in guidebook.walls())
    print(f"OK: {rooms} rooms, {walls} walls, {targets} targets")
    return 0


def _cmd_replay(args: argparse.Namespace) -> int:
    guidebook = _load_guidebook(args.map)
    config = _config_from_args(args)
    records = pointer_records(_load_trace(args.log))
    try:
        _effects, trace = replay(guidebook, args.policy, config, records)
    except (TraceError, EngineError) as exc:
        raise _CliError(f"replay failed: {exc}", 1) from exc
    metrics = compute_metrics(trace)
    _write_text(args.report, _dump_json(metrics.as_dict()))
    out_trace = args.out_trace
    if out_trace is None:
        report = Path(args.report)
        out_trace = str(report.with_name(report.stem + ".trace.jsonl"))
    _write_text(out_trace, serialize_trace(trace))
    return 0


def _frame_obj(frame: RenderFrame) -> dict:
    return {
        "t": frame.t,
        "entries": [
            {"target": e.target, "alpha": e.alpha, "visited": e.visited} for e in frame.entries
        ],
    }


def _cmd_frames(args: argparse.Namespace) -> int:
    guidebook = _load_guidebook(args.map)
    config = _config_from_args(args)
    if args.sample_ms < 1:
        raise _CliError("--sample-ms must be >= 1", 1)
    script = pointer_records(_load_trace(args.script))
    start_wall = script[0].wall if script else next(iter(guidebook.walls()))[1].id
    try:
        state = new_session(guidebook, start_wall, args.policy, config)
        events = [event_of(r) for r in script]
        last_t = events[-1].t if events else 0
        end = last_t + config.tip_total_ms
        frames = []
        index = 0
        for t in range(0, end + 1, args.sample_ms):
            while index < len(events) and events[index].t <= t:
                state, _ = handle_event(state, events[index])
                index += 1
            frames.append(_frame_obj(render_at(state, t)))
    except (TraceError, EngineError) as exc:
        raise _CliError(f"frame export failed: {exc}", 1) from exc
    timeline = {"sample_ms": args.sample_ms, "policy": args.policy.value, "frames": frames}
    _write_text(args.out, json.dumps(timeline, separators=(",", ":")) + "\n")
    return 0


def _cmd_style(args: argparse.Namespace) -> int:
    guidebook = _load_guidebook(args.map)
    if args.palette is None:
        palette = default_palette()
    else:
        try:
            palette = load_palette(_read_text(args.palette))
        except PaletteError as exc:
            raise _CliError(f"{args.palette}: {exc}", 1) from exc
    try:
        from PIL import Image, UnidentifiedImageError
    except ImportError as exc:  # pragma: no cover - Pillow is a hard dependency
        raise _CliError(f"Pillow is required for the style command: {exc}", 2) from exc
    import numpy as np

    base = Path(args.map).parent
    results = []
    for room, wall in guidebook.walls():
        image_path = base / wall.image
        try:
            with Image.open(image_path) as image:
                pixels = np.asarray(image.convert("RGB")).reshape(-1, 3)
        except (OSError, UnidentifiedImageError) as exc:
            raise _CliError(f"cannot read image {image_path}: {exc}", 2) from exc
        # Uniform subsample keeps the stats cost bounded on large photos.
        stride = max(1, -(-len(pixels) // 10_000))
        stats = image_color_stats(pixels[::stride])
        try:
            style = choose_outline_style(stats, palette)
        except PaletteError as exc:
            raise _CliError(f"wall {wall.id!r}: {exc}", 1) from exc
        results.append(
            {
                "room": room.id,
                "wall": wall.id,
                "unvisited": style.unvisited,
                "visited": style.visited,
                "stroke_width": style.stroke_width,
            }
        )
    _emit(_dump_json({"walls": results}), args.out)
    return 0


def _cmd_metrics(args: argparse.Namespace) -> int:
    trace = _load_trace(args.log)
    metrics = compute_metrics(trace)
    _emit(_dump_json(metrics.as_dict()), args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taptips",
        description="Touchscreen-imagemap interaction engine: validate maps, replay traces, export timelines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a guidebook file against the format")
    p_validate.add_argument("map", help="path to a .gbk.json guidebook")
    p_validate.set_defaults(func=_cmd_validate)

    p_replay = sub.add_parser("replay", help="re-run a pointer log and report its metrics")
    p_replay.add_argument("--map", required=True)
    p_replay.add_argument("--log", required=True, help="trace with pointer records to replay")
    p_replay.add_argument("--policy", type=_policy, default=TipPolicy.TAP_TIPS)
    p_replay.add_argument("--report", required=True, help="where to write the metrics JSON")
    p_replay.add_argument("--out-trace", default=None, help="where to write the derived trace")
    _add_config_flags(p_replay)
    p_replay.set_defaults(func=_cmd_replay)

    p_frames = sub.add_parser("frames", help="sample render frames for a scripted session")
    p_frames.add_argument("--map", required=True)
    p_frames.add_argument("--script", required=True, help="pointer-record script (trace format)")
    p_frames.add_argument("--policy", type=_policy, default=TipPolicy.TAP_TIPS)
    p_frames.add_argument("--sample-ms", type=int, default=100)
    p_frames.add_argument("--out", required=True)
    _add_config_flags(p_frames)
    p_frames.set_defaults(func=_cmd_frames)

    p_style = sub.add_parser("style", help="choose outline colors per wall by popout")
    p_style.add_argument("--map", required=True)
    p_style.add_argument("--palette", default=None, help="palette JSON (default: bundled palette)")
    p_style.add_argument("--out", default=None)
    p_style.set_defaults(func=_cmd_style)

    p_metrics = sub.add_parser("metrics", help="compute metrics for an existing full trace")
    p_metrics.add_argument("--log", required=True)
    p_metrics.add_argument("--out", default=None)
    p_metrics.set_defaults(func=_cmd_metrics)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.status


if __name__ == "__main__":
    raise SystemExit(main())
