"""Domain types and minute-resolution time arithmetic.

All times are integer minutes since midnight. A day is the half-open
interval ``[day_start, day_end)``; ``1440`` is only valid as an exclusive end.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Tuple

MINUTES_PER_DAY = 1440

_TIME_RE = re.compile(r"^(\d{2}):(\d{2})$")
_ACTIVITY_RE = re.compile(r"^[A-Za-z0-9_-]+$")


class ScheduleFormatError(ValueError):
    """Raised for malformed times, activity names, or documents."""


def parse_time(text: str) -> int:
    """Parse a zero-padded ``HH:MM`` string into minutes since midnight.

    >>> parse_time("18:30")
    1110
    """
    if not isinstance(text, str):
        raise ScheduleFormatError(f"expected an HH:MM string, got {text!r}")
    m = _TIME_RE.match(text)
    if m is None:
        raise ScheduleFormatError(f"malformed time {text!r}, expected HH:MM")
    hours, minutes = int(m.group(1)), int(m.group(2))
    if minutes >= 60:
        raise ScheduleFormatError(f"minute field out of range in {text!r}")
    value = hours * 60 + minutes
    if value > MINUTES_PER_DAY:
        raise ScheduleFormatError(f"time {text!r} is past 24:00")
    return value


def format_time(t: int) -> str:
    """Inverse of :func:`parse_time`."""
    hours, minutes = divmod(int(t), 60)
    return f"{hours:02d}:{minutes:02d}"


def check_activity(name: str) -> str:
    if not isinstance(name, str) or not _ACTIVITY_RE.match(name):
        raise ScheduleFormatError(
            f"invalid activity name {name!r} (letters, digits, '_' and '-' only)"
        )
    return name


@dataclass(frozen=True)
class TemplateEntry:
    """One designer constraint: an activity with optional start and duration.

    Absent fields are ``None``, which is distinct from zero.
    """

    activity: str
    start: Optional[int] = None
    start_variance: Optional[int] = None
    duration: Optional[int] = None
    duration_variance: Optional[int] = None

    def __post_init__(self) -> None:
        check_activity(self.activity)
        if self.start_variance is not None and self.start is None:
            raise ScheduleFormatError(f"{self.activity}: start_variance given without start")
        if self.duration_variance is not None and self.duration is None:
            raise ScheduleFormatError(
                f"{self.activity}: duration_variance given without duration"
            )
        for name in ("start_variance", "duration", "duration_variance"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ScheduleFormatError(f"{self.activity}: {name} must be >= 0")
        if self.start is not None and not 0 <= self.start <= MINUTES_PER_DAY:
            raise ScheduleFormatError(f"{self.activity}: start out of range")


@dataclass(frozen=True)
class ScheduleTemplate:
    name: str
    entries: Tuple[TemplateEntry, ...]
    day_start: int = 0
    day_end: int = MINUTES_PER_DAY
    anchor_day_bounds: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ScheduleFormatError(f"template {self.name!r} has no entries")
        if not 0 <= self.day_start < self.day_end <= MINUTES_PER_DAY:
            raise ScheduleFormatError(
                f"template {self.name!r}: need 0 <= day_start < day_end <= 1440"
            )

    @property
    def activities(self) -> FrozenSet[str]:
        return frozenset(e.activity for e in self.entries)


@dataclass(frozen=True)
class ScheduleEntry:
    activity: str
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.end < self.start:
            raise ValueError(f"{self.activity}: end {self.end} precedes start {self.start}")

    @property
    def duration(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class Schedule:
    """A resolved day. Zero-duration entries are kept as deletion markers."""

    template_name: str
    day_index: int
    entries: Tuple[ScheduleEntry, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))

    def active_entries(self) -> Tuple[ScheduleEntry, ...]:
        return tuple(e for e in self.entries if e.duration > 0)

    @property
    def span(self) -> Tuple[int, int]:
        """``(first start, last end)`` over positive-duration entries."""
        active = self.active_entries()
        if not active:
            raise ValueError(f"day {self.day_index} has no positive-duration entries")
        return active[0].start, active[-1].end

    def check_invariants(self) -> None:
        """Raise ``AssertionError`` if the day has gaps, overlaps or bad ordering."""
        prev_start = None
        for e in self.entries:
            assert e.start + e.duration == e.end
            if prev_start is not None:
                assert e.start >= prev_start, f"starts decrease at {e.activity}"
            prev_start = e.start
        active = self.active_entries()
        for a, b in zip(active, active[1:]):
            assert a.end == b.start, f"gap or overlap between {a.activity} and {b.activity}"


@dataclass(frozen=True)
class ScheduleCollection:
    label: str
    days: Tuple[Schedule, ...] = ()
    activity_vocabulary: FrozenSet[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "days", tuple(self.days))
        used = {e.activity for day in self.days for e in day.entries}
        object.__setattr__(
            self, "activity_vocabulary", frozenset(self.activity_vocabulary) | used
        )

    def __len__(self) -> int:
        return len(self.days)
