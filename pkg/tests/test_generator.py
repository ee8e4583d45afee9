import pytest
from hypothesis import given, settings, strategies as st

from persona_sched.core import ScheduleTemplate, TemplateEntry as E
from persona_sched.generator import (
    ExtremeOffsets,
    GenerationError,
    PartialEntry as P,
    RandomSource,
    apply_adjacency_constraints,
    apply_duration_constraints,
    generate_collection,
    generate_schedule,
    initialize_partial,
)

ZERO = ExtremeOffsets(0)


class FixedOffsets:
    """Returns queued offsets in order."""

    def __init__(self, *values):
        self.values = list(values)

    def offset(self, variance):
        value = self.values.pop(0)
        assert -variance <= value <= variance
        return value


def T(*entries, **kw):
    return ScheduleTemplate("t", entries, **kw)


def spans(schedule):
    return [(e.activity, e.start, e.end) for e in schedule.entries]


# initialization


def test_initialize_zero_variance():
    (p,) = initialize_partial(T(E("a", 420, 0, 60, 0)), RandomSource(1))
    assert (p.start, p.duration, p.end) == (420, 60, None)


def test_initialize_clamps_negative_duration():
    (p,) = initialize_partial(T(E("a", duration=30, duration_variance=45)), FixedOffsets(-40))
    assert p.duration == 0


def test_initialize_unconstrained_entry():
    (p,) = initialize_partial(T(E("a")), RandomSource(1))
    assert (p.start, p.duration, p.end) == (None, None, None)


def test_initialize_offsets_in_range():
    t = T(E("a", 600, 30, 60, 20))
    for seed in range(200):
        (p,) = initialize_partial(t, RandomSource(seed))
        assert 570 <= p.start <= 630 and 40 <= p.duration <= 80


def test_offsets_cover_inclusive_range():
    rng = RandomSource(3)
    seen = {rng.offset(2) for _ in range(500)}
    assert seen == {-2, -1, 0, 1, 2}


# duration rule


def test_duration_forward_look_ahead_skips_undefined():
    t = T(E("A"), E("B"), E("C"))
    entries = [P("A", 420, 180), P("B"), P("C", 540)]
    assert apply_duration_constraints(t, entries, 0)
    assert entries[0].end == 540


def test_duration_backward_cooking():
    t = T(E("cooking"), E("dinner"))
    entries = [P("cooking", None, 60, 1110), P("dinner", 1110, 30)]
    apply_duration_constraints(t, entries, 0)
    assert entries[0].start == 1050


def test_duration_backward_respects_earlier_end():
    t = T(E("a"), E("b"))
    entries = [P("a", 0, None, 1080), P("b", None, 60, 1110)]
    apply_duration_constraints(t, entries, 1)
    assert entries[1].start == 1080


def test_duration_forward_conflict_is_overconstrained():
    t = T(E("A"), E("B"))
    entries = [P("A", 480, 60), P("B", 420)]
    with pytest.raises(GenerationError) as info:
        apply_duration_constraints(t, entries, 0)
    assert info.value.kind == "overconstrained"


def test_duration_nothing_to_do():
    t = T(E("a"))
    entries = [P("a", 0, None)]
    assert not apply_duration_constraints(t, entries, 0)


def test_duration_forward_clamped_to_day_end():
    t = T(E("a"))
    entries = [P("a", 1400, 120)]
    apply_duration_constraints(t, entries, 0)
    assert entries[0].end == 1440


# adjacency rule


def test_adjacency_backfills_previous_end():
    t = T(E("cooking"), E("dinner"))
    entries = [P("cooking", None, 60), P("dinner", 1110, 30, 1140)]
    assert apply_adjacency_constraints(t, entries, 1)
    assert entries[0].end == 1110


def test_adjacency_forward_fills_next_start():
    t = T(E("a"), E("b"))
    entries = [P("a", 0, None, 480), P("b")]
    apply_adjacency_constraints(t, entries, 0)
    assert entries[1].start == 480


def test_adjacency_extends_gap():
    t = T(E("A"), E("B"))
    entries = [P("A", 420, None, 480), P("B", 600)]
    assert apply_adjacency_constraints(t, entries, 0)
    assert entries[0].end == 600


def test_adjacency_overlap_fails():
    t = T(E("A"), E("B"))
    entries = [P("A", 420, None, 540), P("B", 500)]
    with pytest.raises(GenerationError) as info:
        apply_adjacency_constraints(t, entries, 0)
    assert info.value.kind == "overconstrained"
    assert info.value.entry_index == 1


def test_adjacency_no_change_when_consistent():
    t = T(E("A"), E("B"))
    entries = [P("A", 0, None, 500), P("B", 500, None, 600)]
    assert not apply_adjacency_constraints(t, entries, 0)
    assert not apply_adjacency_constraints(t, entries, 1)


# full generation


def test_backward_propagation_cooking_dinner():
    s = generate_schedule(T(E("cooking", duration=60, duration_variance=0),
                            E("dinner", 1110, 0, 30, 0)), ZERO)
    assert spans(s) == [("cooking", 1050, 1110), ("dinner", 1110, 1140)]


def test_free_entry_fills_available_time():
    s = generate_schedule(T(E("A", 420, 0, 60, 0), E("B"), E("C", 600, 0, 30, 0)), ZERO)
    assert spans(s)[1] == ("B", 480, 600)


def test_conflict_squeezes_intermediate_to_zero():
    s = generate_schedule(T(E("A", 420, 0, 180, 0), E("B"), E("C", 540, 0, 60, 0)), ZERO)
    assert spans(s) == [("A", 420, 540), ("B", 540, 540), ("C", 540, 600)]
    assert s.entries[1].duration == 0


def test_underconstrained_without_anchoring():
    with pytest.raises(GenerationError) as info:
        generate_schedule(T(E("A", duration=60), E("B", duration=60), anchor_day_bounds=False), ZERO)
    assert info.value.kind == "underconstrained"


def test_anchoring_resolves_floating_template():
    s = generate_schedule(T(E("A", duration=60), E("B", duration=60)), ZERO)
    assert spans(s) == [("A", 0, 1380), ("B", 1380, 1440)]


def test_anchoring_respects_custom_day_bounds():
    s = generate_schedule(T(E("A"), day_start=540, day_end=1200), ZERO)
    assert spans(s) == [("A", 540, 1200)]


def test_whole_day_single_entry():
    s = generate_schedule(T(E("sleep", 0, 0, 1440, 0)), ZERO)
    assert spans(s) == [("sleep", 0, 1440)]


def test_anchoring_does_not_override_derivable_values():
    # cooking/dinner never stalls, so the day bounds must not be applied
    s = generate_schedule(T(E("cooking", duration=60), E("dinner", 1110, 0, 30, 0)), ZERO)
    assert s.entries[0].start == 1050 and s.entries[-1].end == 1140


def test_forced_end_before_start_is_overconstrained():
    t = T(E("A", 600, 0), E("B", 700, 0), E("C", 650, 0), anchor_day_bounds=True)
    with pytest.raises(GenerationError) as info:
        generate_schedule(t, ZERO)
    assert info.value.kind == "overconstrained"


def test_skipped_activity_when_duration_variance_exceeds_duration():
    t = T(E("sleep", 0, 0, 420, 0), E("med", duration=5, duration_variance=10), E("rest"))
    durations = {generate_schedule(t, RandomSource(s)).entries[1].duration for s in range(60)}
    assert 0 in durations and max(durations) > 0


def test_collection_deterministic():
    t = T(E("sleep", 0, 0, 420, 30), E("breakfast", duration=30, duration_variance=10), E("rest"),
          E("dinner", 1110, 30, 45, 10), E("sleep"))
    assert generate_collection(t, 3, 7) == generate_collection(t, 3, 7)
    assert generate_collection(t, 3, 7) != generate_collection(t, 3, 8)


def test_collection_days_independent_of_count():
    t = T(E("sleep", 0, 0, 420, 30), E("rest"), E("dinner", 1110, 30, 45, 10), E("sleep"))
    assert generate_collection(t, 5, 9).days[:3] == generate_collection(t, 3, 9).days


def test_zero_variance_days_identical():
    t = T(E("sleep", 0, 0, 420, 0), E("rest"), E("dinner", 1110, 0, 45, 0), E("sleep"))
    c = generate_collection(t, 5, 1)
    assert len({d.entries for d in c.days}) == 1


def test_collection_failure_names_day():
    t = T(E("A", 600, 60, 0, 0), E("B", 630, 0))
    with pytest.raises(GenerationError) as info:
        generate_collection(t, 20, 0)
    assert info.value.kind == "overconstrained" and "day" in info.value.detail


def test_collection_requires_days():
    with pytest.raises(ValueError):
        generate_collection(T(E("a")), 0, 0)


@st.composite
def templates(draw):
    """Anchored segments with chained and free entries; always solvable."""
    entries = [E("sleep", 0, 0, draw(st.integers(300, 480)), draw(st.integers(0, 60)))]
    t = 540
    for k in range(draw(st.integers(1, 4))):
        for _ in range(draw(st.integers(0, 3))):
            d = draw(st.integers(0, 120))
            entries.append(E(f"chain{k}", duration=d, duration_variance=draw(st.integers(0, 2 * d + 10))))
        if draw(st.booleans()):
            entries.append(E("free"))
        v = draw(st.integers(0, 30))
        t += v
        entries.append(E(f"anchor{k}", t, v, draw(st.integers(0, 180)), draw(st.integers(0, 60))))
        t += v + draw(st.integers(0, 120))
    entries.append(E("sleep"))
    return ScheduleTemplate("prop", tuple(entries))


@settings(max_examples=150, deadline=None)
@given(templates(), st.integers(0, 2**32))
def test_generated_schedule_invariants(template, seed):
    s = generate_schedule(template, RandomSource(seed))
    s.check_invariants()
    assert [e.activity for e in s.entries] == [e.activity for e in template.entries]
    assert s.entries[0].start == 0 and s.entries[-1].end == 1440
    for st_, e in zip(template.entries, s.entries):
        if st_.start is not None:
            assert abs(e.start - st_.start) <= st_.start_variance


@settings(max_examples=100, deadline=None)
@given(templates(), st.integers(0, 2**32))
def test_same_seed_same_schedule(template, seed):
    assert generate_schedule(template, RandomSource(seed)) == generate_schedule(template, RandomSource(seed))
