"""Five tip policies, one pointer script: when are the outlines visible?

Run with: python demos/04_policies.py
"""

from pathlib import Path

from taptips.engine import TipPolicy, handle_event, new_session, render_at
from taptips.imagemap import parse_guidebook
from taptips.tracelog import event_of, parse_trace, pointer_records

ROOT = Path(__file__).resolve().parents[1]
book = parse_guidebook((ROOT / "content" / "demo.gbk.json").read_text(encoding="utf-8"))
script = pointer_records(
    parse_trace((ROOT / "content" / "scripts" / "policy_matrix.trace.jsonl").read_text("utf-8"))
)
events = [event_of(r) for r in script]

print("script: quick missed tap @0, toggle @2000, long slide 2500-3400,")
print("        toggle @4000, quick hit on 'portrait' @4300\n")

SAMPLE = 200
end = events[-1].t + 1800
header = "policy      " + "".join(f"{t // 1000}" if t % 1000 == 0 else "." for t in range(0, end + 1, SAMPLE))
print(header + "   (seconds)")

for policy in TipPolicy:
    state = new_session(book, script[0].wall, policy)
    index = 0
    cells = []
    for t in range(0, end + 1, SAMPLE):
        while index < len(events) and events[index].t <= t:
            state, _ = handle_event(state, events[index])
            index += 1
        alpha = render_at(state, t).entries[0].alpha
        cells.append("#" if alpha == 1.0 else ("+" if alpha > 0.5 else ("-" if alpha > 0 else " ")))
    print(f"{policy.value:<12}" + "".join(cells))

print("""
#/+/- = outline opacity (full/strong/faint), blank = invisible
  none:       never shows outlines; misses are dead air
  always_on:  permanent outlines (visual clutter, but no discovery problem)
  modal:      outlines while the explicit tip mode is on (two extra gestures)
  slide_lift: press-and-hold reveals, lift selects (novel gesture to learn)
  tap_tips:   the missed tap itself flashes a fading display, then it is gone
""")
