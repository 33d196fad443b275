"""Gesture logs: record, replay, and the metrics a device log supports.

Run with: python demos/06_trace_metrics.py
"""

from pathlib import Path

from taptips.engine import EngineConfig, TipPolicy
from taptips.imagemap import parse_guidebook
from taptips.tracelog import compute_metrics, parse_trace, pointer_records, replay, serialize_trace

ROOT = Path(__file__).resolve().parents[1]
book = parse_guidebook((ROOT / "content" / "demo.gbk.json").read_text(encoding="utf-8"))
config = EngineConfig()


def show(name: str) -> None:
    log = parse_trace((ROOT / "content" / "traces" / f"{name}.trace.jsonl").read_text("utf-8"))
    effects, trace = replay(book, TipPolicy.TAP_TIPS, config, pointer_records(log))
    print(f"--- {name} ---")
    print("derived record kinds:", " ".join(r.kind.value for r in trace if r.kind.value not in ("down", "up")))
    metrics = compute_metrics(trace)
    for field, value in metrics.as_dict().items():
        print(f"  {field:<24} {value}")
    print()


# A visitor who glances at the tips once and then selects six targets in a
# row: the discovery aid was needed once, not continuously.
show("six_streak")

# A visitor who re-summons the tips before every selection is using them as
# an inventory checklist; the alternation count exposes that pattern.
show("checklist")

# Replays are deterministic: the same pointer log always produces the same
# derived trace, byte for byte.
log = parse_trace((ROOT / "content" / "traces" / "six_streak.trace.jsonl").read_text("utf-8"))
once = serialize_trace(replay(book, TipPolicy.TAP_TIPS, config, pointer_records(log))[1])
twice = serialize_trace(replay(book, TipPolicy.TAP_TIPS, config, pointer_records(log))[1])
assert once == twice
print("replay determinism: two runs, identical bytes,", len(once), "chars")

# The same gestures under `none` produce no tips records at all: the log
# format is policy-neutral, the derived records are not.
under_none = replay(book, TipPolicy.NONE, config, pointer_records(log))[1]
print("same gestures under 'none': tips_shown =", compute_metrics(under_none).tips_shown)
