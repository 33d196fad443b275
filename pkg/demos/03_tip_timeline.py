"""The tip timeline: a missed tap opens a fading window, auto-expiring.

Run with: python demos/03_tip_timeline.py
"""

from pathlib import Path

from taptips.engine import (
    EngineConfig,
    PointerEvent,
    TipPolicy,
    active_tip_window,
    handle_event,
    new_session,
    render_at,
    tip_alpha,
)
from taptips.imagemap import parse_guidebook

CONTENT = Path(__file__).resolve().parents[1] / "content"
book = parse_guidebook((CONTENT / "demo.gbk.json").read_text(encoding="utf-8"))
config = EngineConfig()  # 600 ms hold + 1200 ms linear fade

state = new_session(book, "parlor-north", TipPolicy.TAP_TIPS, config)

# Tap a bare patch of wall. The miss itself is the trigger: no extra gesture.
state, _ = handle_event(state, PointerEvent.down(106, 120, 1000))
state, effects = handle_event(state, PointerEvent.up(106, 120, 1000))
print("effects of the missed tap:", effects)
print("active window:", active_tip_window(state))

print("\nalpha over time (each column = 100 ms):")
bars = " .:-=+*#%@"
samples = [tip_alpha(config, ms) for ms in range(0, 2001, 100)]
print("  " + "".join(bars[min(int(a * (len(bars) - 1) + 0.5), len(bars) - 1)] for a in samples))
print("  " + "".join("^" if ms % 500 == 0 else " " for ms in range(0, 2001, 100)))
print("  0ms       500ms     1000ms    1500ms    2000ms")

for ms in (0, 300, 600, 1200, 1800, 2000):
    frame = render_at(state, 1000 + ms)
    print(f"  t=+{ms:4d} ms  alpha={frame.entries[0].alpha:.3f}")

# No dismissal gesture exists or is needed; the window reports itself gone.
print("\nwindow queried at +2000 ms:", active_tip_window(state, at_ms=3000))

# A hit interrupts the display immediately: selection is the subsequent
# user action par excellence.
state, _ = handle_event(state, PointerEvent.down(55, 156, 1400))
state, effects = handle_event(state, PointerEvent.up(55, 156, 1500))
print("\na hit mid-fade:", [type(e).__name__ for e in effects])
print("window after the hit:", active_tip_window(state))
