"""Deterministic touchscreen-imagemap interaction engine.

Walls are imagemaps with polygonal targets. A tap that hits a target
dispatches its content action; under the tap-tips policy, a tap that hits
nothing flashes fading outlines around every target, so the hint arrives
exactly when the user has shown they need it and costs no extra gesture.
"""

from .engine import (
    EngineConfig,
    EngineError,
    PointerEvent,
    RenderFrame,
    SessionState,
    TipPolicy,
    active_tip_window,
    handle_event,
    new_session,
    render_at,
    tip_alpha,
)
from .geometry import Point, Polygon, bounding_box, point_in_polygon, polygon
from .imagemap import (
    Guidebook,
    GuidebookError,
    Room,
    Target,
    Wall,
    hit_test,
    parse_guidebook,
    serialize_guidebook,
)
from .styling import (
    ColorStats,
    OutlineStyle,
    Palette,
    choose_outline_style,
    default_palette,
    image_color_stats,
    popout_score,
)
from .tracelog import (
    Recorder,
    TraceMetrics,
    TraceRecord,
    compute_metrics,
    parse_trace,
    replay,
    serialize_trace,
)

__version__ = "0.1.0"
