"""Schedule generation by iterative bidirectional constraint propagation.

A template is turned into a concrete day in two stages. Start times and
durations that the template specifies are first perturbed by uniform
integer offsets. The missing start/end times are then filled by alternating
sweeps of two rules until every entry is complete:

* duration rule: ``start + duration = end``, clipped against the nearest
  defined start after the entry (forwards) or the latest defined end before
  it (backwards), so that a conflicting later activity shortens this one and
  squeezes anything in between to zero length;
* adjacency rule: neighbouring entries share a boundary; gaps are closed by
  extending the earlier activity, overlaps between fixed times are fatal.

A round that changes nothing means the template is underconstrained. When
``anchor_day_bounds`` is set, the first stall instead pins the first start to
``day_start`` and the last end to ``day_end`` (only where absent), once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Protocol

import numpy as np

from .core import Schedule, ScheduleCollection, ScheduleEntry, ScheduleTemplate

UNDERCONSTRAINED = "underconstrained"
OVERCONSTRAINED = "overconstrained"


class GenerationError(Exception):
    """Schedule generation failed.

    Attributes:
        kind: ``"underconstrained"`` or ``"overconstrained"``.
        entry_index: template index of the entry where the failure surfaced.
        detail: human-readable explanation.
    """

    def __init__(self, kind: str, entry_index: int, detail: str):
        self.kind = kind
        self.entry_index = entry_index
        self.detail = detail
        super().__init__(f"{kind} at entry {entry_index}: {detail}")


class OffsetSource(Protocol):
    def offset(self, variance: int) -> int:
        """Return an integer in ``[-variance, variance]``."""


class RandomSource:
    """Seeded source of uniform integer offsets.

    Equal seeds give equal offset sequences. ``stream`` lets independent
    sub-streams (e.g. one per generated day) be derived from one seed.
    """

    def __init__(self, seed: int, stream: Optional[int] = None):
        if not 0 <= seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = seed
        self.stream = stream
        entropy = [seed] if stream is None else [seed, stream]
        self._rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))

    def offset(self, variance: int) -> int:
        if variance == 0:
            return 0
        return int(self._rng.integers(-variance, variance, endpoint=True))

    def choice(self, n: int) -> int:
        return int(self._rng.integers(0, n))


class ExtremeOffsets:
    """Deterministic offsets pinned at ``sign * variance`` (sign in -1, 0, +1)."""

    def __init__(self, sign: int):
        if sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        self.sign = sign

    def offset(self, variance: int) -> int:
        return self.sign * variance


@dataclass
class PartialEntry:
    """Working state of one entry during propagation.

    ``start_from_template`` records whether the start came from the template
    (as opposed to being derived), which decides whether a zero-width entry
    counts as a constraint in look-ahead.
    """

    activity: str
    start: Optional[int] = None
    duration: Optional[int] = None
    end: Optional[int] = None
    start_from_template: bool = False

    @property
    def complete(self) -> bool:
        return self.start is not None and self.end is not None

    def is_squeezed(self) -> bool:
        return (
            self.start is not None
            and self.start == self.end
            and not self.start_from_template
        )


class _Propagation:
    """Mutable propagation state for one generation run."""

    def __init__(self, template: ScheduleTemplate, entries: List[PartialEntry]):
        self.entries = entries
        self.day_start = template.day_start
        self.day_end = template.day_end
        self.anchored = False

    def _clamp(self, t: int) -> int:
        return min(max(t, self.day_start), self.day_end)

    def next_defined_start(self, i: int) -> Optional[int]:
        best = None
        for e in self.entries[i + 1:]:
            if e.start is not None and not e.is_squeezed():
                if best is None or e.start < best:
                    best = e.start
        return best

    def prev_defined_end(self, i: int) -> Optional[int]:
        best = None
        for e in self.entries[:i]:
            if e.end is not None and not e.is_squeezed():
                if best is None or e.end > best:
                    best = e.end
        return best

    def apply_duration(self, i: int) -> bool:
        e = self.entries[i]
        if e.duration is None:
            return False
        if e.start is not None and e.end is None:
            end = e.start + e.duration
            bound = self.next_defined_start(i)
            if bound is None and self.anchored:
                bound = self.day_end
            if bound is not None:
                if bound < e.start:
                    raise GenerationError(
                        OVERCONSTRAINED, i,
                        f"{e.activity} starts at {e.start} but a later activity starts at {bound}",
                    )
                end = min(end, bound)
            e.end = self._clamp(end)
            return True
        if e.end is not None and e.start is None:
            start = e.end - e.duration
            bound = self.prev_defined_end(i)
            if bound is None and self.anchored:
                bound = self.day_start
            if bound is not None:
                if bound > e.end:
                    raise GenerationError(
                        OVERCONSTRAINED, i,
                        f"{e.activity} ends at {e.end} but an earlier activity ends at {bound}",
                    )
                start = max(start, bound)
            e.start = self._clamp(start)
            return True
        return False

    def apply_adjacency(self, i: int) -> bool:
        entries = self.entries
        e = entries[i]
        changed = False
        if e.end is not None and i + 1 < len(entries):
            nxt = entries[i + 1]
            if nxt.start is None:
                nxt.start = e.end
                changed = True
            elif nxt.start > e.end:
                e.end = nxt.start
                changed = True
            elif nxt.start < e.end:
                raise GenerationError(
                    OVERCONSTRAINED, i + 1,
                    f"{nxt.activity} starts at {nxt.start} before {e.activity} ends at {e.end}",
                )
        if e.start is not None and i > 0:
            prev = entries[i - 1]
            if prev.end is None:
                prev.end = e.start
                changed = True
            elif prev.end < e.start:
                prev.end = e.start
                changed = True
            elif prev.end > e.start:
                raise GenerationError(
                    OVERCONSTRAINED, i,
                    f"{e.activity} starts at {e.start} before {prev.activity} ends at {prev.end}",
                )
        return changed

    def anchor(self) -> bool:
        self.anchored = True
        changed = False
        first, last = self.entries[0], self.entries[-1]
        if first.start is None:
            first.start = self.day_start
            changed = True
        if last.end is None:
            last.end = self.day_end
            changed = True
        return changed


def initialize_partial(template: ScheduleTemplate, rng: OffsetSource) -> List[PartialEntry]:
    """Draw randomized starts and durations for the entries that specify them.

    Negative sampled durations clamp to zero, which is how an activity is
    occasionally skipped. Sampled starts are clamped into the day. A base
    value without a variance is treated as having zero variance.
    """
    out = []
    for st in template.entries:
        e = PartialEntry(st.activity)
        if st.start is not None:
            start = st.start + rng.offset(st.start_variance or 0)
            e.start = min(max(start, template.day_start), template.day_end)
            e.start_from_template = True
        if st.duration is not None:
            e.duration = max(0, st.duration + rng.offset(st.duration_variance or 0))
        out.append(e)
    return out


def apply_duration_constraints(
    template: ScheduleTemplate, entries: List[PartialEntry], i: int, anchored: bool = False
) -> bool:
    """Apply the duration rule to entry ``i`` in place; return whether it changed."""
    prop = _Propagation(template, entries)
    prop.anchored = anchored
    return prop.apply_duration(i)


def apply_adjacency_constraints(
    template: ScheduleTemplate, entries: List[PartialEntry], i: int
) -> bool:
    """Apply the adjacency rule around entry ``i`` in place; return whether it changed."""
    return _Propagation(template, entries).apply_adjacency(i)


def propagate(template: ScheduleTemplate, entries: List[PartialEntry]) -> List[PartialEntry]:
    """Run sweeps over ``entries`` until complete. Mutates and returns them."""
    prop = _Propagation(template, entries)
    n = len(entries)
    while not all(e.complete for e in entries):
        changed = False
        for i in range(n):
            changed |= prop.apply_duration(i)
        for i in range(n):
            changed |= prop.apply_adjacency(i)
        if changed:
            continue
        if template.anchor_day_bounds and not prop.anchored and prop.anchor():
            continue
        stuck = next(i for i, e in enumerate(entries) if not e.complete)
        raise GenerationError(
            UNDERCONSTRAINED, stuck,
            f"no constraint determines the {'start' if entries[stuck].start is None else 'end'}"
            f" of {entries[stuck].activity}",
        )

    # One more adjacency sweep closes any gap opened by the final round.
    for i in range(n):
        prop.apply_adjacency(i)
    for i, e in enumerate(entries):
        if e.end < e.start:
            raise GenerationError(
                OVERCONSTRAINED, i,
                f"{e.activity} was forced to end at {e.end} before its start {e.start}",
            )
    return entries


def generate_schedule(
    template: ScheduleTemplate, rng: OffsetSource, day_index: int = 0
) -> Schedule:
    """Generate one concrete day from ``template``.

    Raises:
        GenerationError: if the template is under- or overconstrained for the
            drawn offsets.
    """
    entries = propagate(template, initialize_partial(template, rng))
    return Schedule(
        template.name,
        day_index,
        tuple(ScheduleEntry(e.activity, e.start, e.end) for e in entries),
    )


def generate_collection(template: ScheduleTemplate, days: int, seed: int) -> ScheduleCollection:
    """Generate ``days`` independent days; day ``k`` draws from stream ``(seed, k)``."""
    if days < 1:
        raise ValueError("days must be >= 1")
    schedules = []
    for k in range(days):
        try:
            schedules.append(generate_schedule(template, RandomSource(seed, k), day_index=k))
        except GenerationError as exc:
            raise GenerationError(exc.kind, exc.entry_index, f"day {k}: {exc.detail}") from None
    return ScheduleCollection(
        label=template.name, days=tuple(schedules), activity_vocabulary=template.activities
    )

