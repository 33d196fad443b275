from __future__ import annotations

import math
import random

import pytest

from taptips.engine import (
    EngineConfig,
    EngineError,
    PlayAudio,
    PointerEvent,
    ShowDescription,
    TargetVisited,
    TipModeChanged,
    TipPolicy,
    TipsInterrupted,
    TipsTriggered,
    WallChanged,
    active_tip_window,
    completed_tap,
    handle_event,
    new_session,
    render_at,
    tip_alpha,
)
from taptips.imagemap import hit_test

from conftest import (
    DEFAULT_CONFIG,
    random_guidebook,
    random_pointer_events,
    single_wall_guidebook,
    square_target,
)


@pytest.fixture
def one_target_book():
    # A single 10x10 target in the wall's top-left corner, centered on (5, 5).
    return single_wall_guidebook([square_target("only", 0, 0, 10)], width=100, height=100)


def run(state, *events):
    effects = []
    for event in events:
        state, step = handle_event(state, event)
        effects.extend(step)
    return state, effects


def tap_events(x, y, t, duration=100):
    return (PointerEvent.down(x, y, t), PointerEvent.up(x, y, t + duration))


class TestNewSession:
    def test_fresh_state(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        assert state.visited == frozenset()
        assert state.tip_trigger_ms is None
        assert state.tip_mode_on is False
        assert state.pointer_down is None

    def test_unknown_wall(self, one_target_book):
        with pytest.raises(EngineError, match="unknown wall id 'attic'"):
            new_session(one_target_book, "attic", TipPolicy.TAP_TIPS)

    def test_modal_starts_with_mode_off(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.MODAL)
        assert state.tip_mode_on is False


class TestTapClassification:
    def test_quick_still_tap(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = handle_event(state, PointerEvent.down(5, 5, 100))
        assert completed_tap(state, PointerEvent.up(5, 5, 200)) is not None

    def test_slow_press_is_not_a_tap(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = handle_event(state, PointerEvent.down(5, 5, 100))
        assert completed_tap(state, PointerEvent.up(5, 5, 501)) is None

    def test_travel_through_moves_breaks_the_tap(self, one_target_book):
        # The finger wanders 20 px away mid-gesture even though it returns.
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = handle_event(state, PointerEvent.down(5, 5, 100))
        state, _ = handle_event(state, PointerEvent.move(25, 5, 150))
        assert completed_tap(state, PointerEvent.up(5, 5, 200)) is None

    def test_up_to_down_distance_counts(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = handle_event(state, PointerEvent.down(5, 5, 100))
        assert completed_tap(state, PointerEvent.up(5 + 9, 5, 150)) is None
        assert completed_tap(state, PointerEvent.up(5 + 8, 5, 150)) is not None


class TestTapTipsPolicy:
    def test_hit_dispatches_description_and_visit(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        _state, effects = run(state, *tap_events(5, 5, 100))
        assert effects == [ShowDescription("only", "About only."), TargetVisited("only")]

    def test_miss_triggers_tips_at_up_time(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, effects = run(state, *tap_events(50, 50, 100))
        assert effects == [TipsTriggered(200)]
        assert state.tip_trigger_ms == 200

    def test_second_miss_restarts_timeline(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = run(state, *tap_events(50, 50, 0))
        state, effects = run(state, *tap_events(50, 50, 500))
        assert effects == [TipsInterrupted(600), TipsTriggered(600)]
        assert state.tip_trigger_ms == 600

    def test_miss_after_expiry_does_not_interrupt(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = run(state, *tap_events(50, 50, 0))
        # First window covers (100, 1900); tap lands well past it.
        state, effects = run(state, *tap_events(50, 50, 5000))
        assert effects == [TipsTriggered(5100)]

    def test_hit_interrupts_active_tips(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = run(state, *tap_events(50, 50, 0))
        state, effects = run(state, *tap_events(5, 5, 500))
        assert effects == [
            TipsInterrupted(600),
            ShowDescription("only", "About only."),
            TargetVisited("only"),
        ]
        assert state.tip_trigger_ms is None

    def test_drag_emits_nothing(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        _state, effects = run(
            state,
            PointerEvent.down(50, 50, 0),
            PointerEvent.move(80, 50, 100),
            PointerEvent.up(80, 50, 200),
        )
        assert effects == []

    def test_reselection_skips_second_visit_effect(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = run(state, *tap_events(5, 5, 0))
        _state, effects = run(state, *tap_events(5, 5, 1000))
        assert effects == [ShowDescription("only", "About only.")]


class TestOtherPolicies:
    def test_none_misses_emit_nothing(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.NONE)
        _state, effects = run(state, *tap_events(50, 50, 100))
        assert effects == []

    def test_none_hits_still_select(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.NONE)
        _state, effects = run(state, *tap_events(5, 5, 100))
        assert effects == [ShowDescription("only", "About only."), TargetVisited("only")]

    def test_always_on_taps_behave_like_none(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.ALWAYS_ON)
        state, effects = run(state, *tap_events(50, 50, 100))
        assert effects == []
        assert render_at(state, 1000).entries[0].alpha == 1.0

    def test_modal_toggle_flips_and_reports(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.MODAL)
        state, effects = run(state, PointerEvent.toggle_tip_mode(100))
        assert effects == [TipModeChanged(True)]
        state, effects = run(state, PointerEvent.toggle_tip_mode(200))
        assert effects == [TipModeChanged(False)]

    def test_modal_taps_select_inside_and_outside_mode(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.MODAL)
        state, effects = run(state, *tap_events(5, 5, 100))
        assert any(isinstance(e, ShowDescription) for e in effects)
        state, _ = run(state, PointerEvent.toggle_tip_mode(500))
        _state, effects = run(state, *tap_events(5, 5, 600))
        assert any(isinstance(e, ShowDescription) for e in effects)

    def test_toggle_ignored_outside_modal(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, effects = run(state, PointerEvent.toggle_tip_mode(100))
        assert effects == []
        assert state.tip_mode_on is False

    def test_slide_lift_selects_on_lift_over_target(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.SLIDE_LIFT)
        _state, effects = run(
            state,
            PointerEvent.down(50, 50, 0),
            PointerEvent.move(20, 20, 400),
            PointerEvent.up(5, 5, 900),
        )
        assert effects == [ShowDescription("only", "About only."), TargetVisited("only")]

    def test_slide_lift_miss_on_lift_selects_nothing(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.SLIDE_LIFT)
        _state, effects = run(
            state, PointerEvent.down(5, 5, 0), PointerEvent.up(50, 50, 900)
        )
        assert effects == []

    def test_slide_lift_never_triggers_tip_windows(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.SLIDE_LIFT)
        state, effects = run(state, *tap_events(50, 50, 100))
        assert effects == []
        assert state.tip_trigger_ms is None


class TestNavigation:
    def test_navigate_changes_wall_and_keeps_visited(self):
        walls = [square_target("a", 0, 0, 10)]
        g = single_wall_guidebook(walls)
        # Build a two-wall book by hand.
        from taptips.imagemap import Guidebook, Room, Wall

        w1 = g.rooms[0].walls[0]
        w2 = Wall(id="w2", image="images/w2.png", width=50, height=50, targets=())
        book = Guidebook(rooms=(Room(id="r1", name="R", walls=(w1, w2)),))
        state = new_session(book, "w1", TipPolicy.TAP_TIPS)
        state, _ = run(state, *tap_events(5, 5, 0))
        assert ("w1", "a") in state.visited
        state, effects = run(state, PointerEvent.navigate("w2", 200))
        assert effects == [WallChanged("w2")]
        assert state.wall_id == "w2"
        assert ("w1", "a") in state.visited

    def test_navigate_interrupts_active_tips(self, one_target_book):
        from taptips.imagemap import Guidebook, Room, Wall

        w1 = one_target_book.rooms[0].walls[0]
        w2 = Wall(id="w2", image="images/w2.png", width=50, height=50, targets=())
        book = Guidebook(rooms=(Room(id="r1", name="R", walls=(w1, w2)),))
        state = new_session(book, "w1", TipPolicy.TAP_TIPS)
        state, _ = run(state, *tap_events(50, 50, 0))
        state, effects = run(state, PointerEvent.navigate("w2", 500))
        assert effects == [TipsInterrupted(500), WallChanged("w2")]
        assert state.tip_trigger_ms is None

    def test_navigate_to_unknown_wall_raises(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        with pytest.raises(EngineError, match="unknown wall id"):
            handle_event(state, PointerEvent.navigate("attic", 100))


class TestEventDiscipline:
    def test_out_of_order_timestamp_raises(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = handle_event(state, PointerEvent.down(5, 5, 100))
        with pytest.raises(EngineError, match="out-of-order"):
            handle_event(state, PointerEvent.up(5, 5, 99))

    def test_equal_timestamps_allowed(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = handle_event(state, PointerEvent.down(5, 5, 100))
        handle_event(state, PointerEvent.up(5, 5, 100))

    def test_position_required_on_contact_events(self):
        with pytest.raises(EngineError, match="needs a position"):
            PointerEvent(kind=PointerEvent.down(0, 0, 0).kind, t=0)

    def test_stray_up_and_move_ignored(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, effects = run(
            state, PointerEvent.up(5, 5, 10), PointerEvent.move(5, 5, 20)
        )
        assert effects == []

    def test_second_down_restarts_gesture(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = run(
            state, PointerEvent.down(90, 90, 0), PointerEvent.down(5, 5, 1000)
        )
        _state, effects = run(state, PointerEvent.up(5, 5, 1100))
        assert any(isinstance(e, ShowDescription) for e in effects)


class TestTipAlpha:
    def test_full_at_zero(self):
        assert tip_alpha(DEFAULT_CONFIG, 0) == 1.0

    def test_half_way_through_fade(self):
        assert tip_alpha(DEFAULT_CONFIG, 1200) == 0.5

    def test_zero_at_fade_end(self):
        assert tip_alpha(DEFAULT_CONFIG, 1800) == 0.0

    def test_negative_elapsed_rejected(self):
        with pytest.raises(EngineError):
            tip_alpha(DEFAULT_CONFIG, -1)

    def test_monotone_non_increasing(self):
        values = [tip_alpha(DEFAULT_CONFIG, t) for t in range(0, 2500, 7)]
        assert all(a >= b for a, b in zip(values, values[1:]))
        assert all(0.0 <= v <= 1.0 for v in values)


class TestRenderAt:
    def test_full_opacity_at_trigger(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = run(state, *tap_events(50, 50, 0))
        frame = render_at(state, 100)
        assert [e.alpha for e in frame.entries] == [1.0]

    def test_gone_two_seconds_later(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = run(state, *tap_events(50, 50, 0))
        frame = render_at(state, 100 + 2000)
        assert [e.alpha for e in frame.entries] == [0.0]

    def test_always_on_is_always_one(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.ALWAYS_ON)
        for t in (0, 500, 100000):
            assert [e.alpha for e in render_at(state, t).entries] == [1.0]

    def test_every_current_wall_target_appears_once(self):
        targets = [square_target(f"t{i}", 12 * i, 10, 10) for i in range(5)]
        g = single_wall_guidebook(targets)
        state = new_session(g, "w1", TipPolicy.NONE)
        frame = render_at(state, 0)
        assert [e.target for e in frame.entries] == [f"t{i}" for i in range(5)]

    def test_visited_flag_appears_after_selection(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        assert render_at(state, 0).entries[0].visited is False
        state, _ = run(state, *tap_events(5, 5, 0))
        assert render_at(state, 100).entries[0].visited is True

    def test_slide_lift_visibility_window(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.SLIDE_LIFT)
        state, _ = handle_event(state, PointerEvent.down(50, 50, 1000))
        assert render_at(state, 1400).entries[0].alpha == 0.0  # before threshold
        assert render_at(state, 1500).entries[0].alpha == 1.0  # threshold reached
        state, _ = handle_event(state, PointerEvent.up(50, 50, 2000))
        assert render_at(state, 2000).entries[0].alpha == 0.0  # lifted


class TestActiveTipWindow:
    def test_window_after_trigger(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = run(state, *tap_events(50, 50, 900))  # up at t=1000
        assert active_tip_window(state) == (1000, 2800)

    def test_auto_expiry_needs_no_event(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = run(state, *tap_events(50, 50, 900))
        assert active_tip_window(state, at_ms=2799) == (1000, 2800)
        assert active_tip_window(state, at_ms=2800) is None
        assert active_tip_window(state, at_ms=100000) is None

    def test_interrupting_hit_clears_window(self, one_target_book):
        state = new_session(one_target_book, "w1", TipPolicy.TAP_TIPS)
        state, _ = run(state, *tap_events(50, 50, 900))
        state, _ = run(state, *tap_events(5, 5, 1400))  # hit at t=1500
        assert active_tip_window(state) is None


class TestSessionProperties:
    """Randomized whole-session invariants."""

    def test_determinism(self):
        rng = random.Random(2026)
        for _ in range(10):
            g = random_guidebook(rng)
            events = random_pointer_events(rng, g, max_events=120)
            start = g.rooms[0].walls[0].id
            for policy in TipPolicy:
                runs = []
                for _twice in range(2):
                    state = new_session(g, start, policy)
                    all_effects = []
                    frames = []
                    for ev in events:
                        state, effs = handle_event(state, ev)
                        all_effects.extend(effs)
                        frames.append(render_at(state, ev.t + 50))
                    runs.append((all_effects, frames))
                assert runs[0] == runs[1]

    def test_visited_monotone_and_trigger_iff_miss(self):
        rng = random.Random(31337)
        for _ in range(30):
            g = random_guidebook(rng)
            events = random_pointer_events(rng, g, max_events=100)
            start = g.rooms[0].walls[0].id
            state = new_session(g, start, TipPolicy.TAP_TIPS)
            visited_sizes = [0]
            for ev in events:
                before = state
                state, effs = handle_event(state, ev)
                visited_sizes.append(len(state.visited))
                triggered = any(isinstance(e, TipsTriggered) for e in effs)
                tap = completed_tap(before, ev)
                if tap is not None:
                    missed = hit_test(before.wall(), tap) is None
                    assert triggered == missed
                else:
                    assert not triggered
            assert visited_sizes == sorted(visited_sizes)

    def test_no_hint_on_hit_under_every_policy(self):
        rng = random.Random(777)
        for _ in range(10):
            g = random_guidebook(rng)
            events = random_pointer_events(rng, g, max_events=100)
            start = g.rooms[0].walls[0].id
            for policy in TipPolicy:
                state = new_session(g, start, policy)
                for ev in events:
                    before = state
                    state, effs = handle_event(state, ev)
                    selected = any(
                        isinstance(e, (ShowDescription, PlayAudio)) for e in effs
                    )
                    if selected:
                        assert not any(isinstance(e, TipsTriggered) for e in effs)
                        assert state.tip_trigger_ms is None or state.tip_trigger_ms < ev.t

    def test_policy_purity_none_and_always_on(self):
        rng = random.Random(555)
        g = random_guidebook(rng)
        events = random_pointer_events(rng, g, max_events=150)
        start = g.rooms[0].walls[0].id
        for policy, expected in ((TipPolicy.NONE, 0.0), (TipPolicy.ALWAYS_ON, 1.0)):
            state = new_session(g, start, policy)
            for ev in events:
                state, _ = handle_event(state, ev)
                frame = render_at(state, ev.t)
                assert all(e.alpha == expected for e in frame.entries)

    def test_modal_duality(self):
        rng = random.Random(888)
        g = random_guidebook(rng)
        events = random_pointer_events(rng, g, max_events=150)
        start = g.rooms[0].walls[0].id
        state = new_session(g, start, TipPolicy.MODAL)
        toggles = 0
        for ev in events:
            state, _ = handle_event(state, ev)
            if ev.kind.value == "toggle_tip_mode":
                toggles += 1
            expected = 1.0 if toggles % 2 == 1 else 0.0
            frame = render_at(state, ev.t)
            assert all(e.alpha == expected for e in frame.entries)

    def test_finite_duration_after_every_trigger(self):
        rng = random.Random(12)
        cfg = DEFAULT_CONFIG
        for _ in range(20):
            g = random_guidebook(rng)
            events = random_pointer_events(rng, g, max_events=80)
            start = g.rooms[0].walls[0].id
            state = new_session(g, start, TipPolicy.TAP_TIPS)
            for ev in events:
                state, effs = handle_event(state, ev)
                for eff in effs:
                    if isinstance(eff, TipsTriggered):
                        frame = render_at(state, eff.t + cfg.tip_hold_ms + cfg.tip_fade_ms + 1)
                        assert all(e.alpha == 0.0 for e in frame.entries)

    def test_slide_lift_contract(self):
        rng = random.Random(64)
        g = random_guidebook(rng)
        events = random_pointer_events(rng, g, max_events=150)
        start = g.rooms[0].walls[0].id
        state = new_session(g, start, TipPolicy.SLIDE_LIFT)
        down_since = None
        for ev in events:
            state, effs = handle_event(state, ev)
            kind = ev.kind.value
            if kind == "down":
                down_since = ev.t
            elif kind in ("up", "navigate"):
                down_since = None
            if any(isinstance(e, (ShowDescription, PlayAudio)) for e in effs):
                assert kind == "up"
            frame = render_at(state, ev.t)
            visible = any(e.alpha > 0 for e in frame.entries) if frame.entries else False
            if down_since is None or ev.t - down_since < DEFAULT_CONFIG.slide_hold_threshold_ms:
                assert not visible


class TestConfig:
    def test_defaults_stay_under_two_seconds(self):
        cfg = EngineConfig()
        assert cfg.tip_hold_ms + cfg.tip_fade_ms < 2000

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"tip_hold_ms": 0},
            {"tip_fade_ms": -5},
            {"slide_hold_threshold_ms": 0},
            {"tap_max_duration_ms": 0},
            {"tap_max_travel_px": -1.0},
        ],
    )
    def test_rejects_non_positive_durations(self, kwargs):
        with pytest.raises(EngineError):
            EngineConfig(**kwargs)

    def test_custom_timeline_shifts_fade(self):
        cfg = EngineConfig(tip_hold_ms=100, tip_fade_ms=200)
        assert tip_alpha(cfg, 99) == 1.0
        assert tip_alpha(cfg, 200) == 0.5
        assert tip_alpha(cfg, 300) == 0.0
        assert math.isclose(tip_alpha(cfg, 150), 0.75)
