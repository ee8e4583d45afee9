"""Minute-sampled state chains and Levenshtein-based similarity between schedules."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Hashable, Iterable, Optional, Sequence, Tuple

from .core import MINUTES_PER_DAY, Schedule, ScheduleCollection, ScheduleEntry
from .generator import RandomSource

Window = Tuple[int, int]

BASELINE_SLOT_MINUTES = 30


class CoverageError(ValueError):
    """A schedule leaves part of the comparison window uncovered."""


class MetricError(ValueError):
    """Inputs violate a metric's preconditions (empty, unequal lengths...)."""


@dataclass(frozen=True)
class StateChain:
    states: Tuple[str, ...]
    window: Window

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))

    def __len__(self) -> int:
        return len(self.states)


def discretize(schedule: Schedule, window: Window) -> StateChain:
    """Sample the activity at every minute of ``window`` (half-open intervals).

    Zero-duration entries are never selected. Raises :class:`CoverageError`
    if any minute of the window falls outside every entry.
    """
    lo, hi = window
    if not lo < hi:
        raise ValueError(f"empty window {window}")
    states = [None] * (hi - lo)
    for e in schedule.active_entries():
        a, b = max(e.start, lo), min(e.end, hi)
        if a < b:
            states[a - lo:b - lo] = [e.activity] * (b - a)
    missing = [k for k, s in enumerate(states) if s is None]
    if missing:
        raise CoverageError(
            f"day {schedule.day_index} does not cover minute {lo + missing[0]} of window {window}"
        )
    return StateChain(tuple(states), window)


def levenshtein(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Unit-cost edit distance between two symbol sequences.

    Bit-parallel evaluation of the standard dynamic program (Myers' algorithm
    in Hyyro's formulation): one column of vertical deltas is packed into an
    arbitrary-precision int, so each symbol of ``b`` costs a handful of word
    operations instead of ``len(a)`` cell updates. The result is exact.
    Accepts :class:`StateChain` or any sequence of hashables.
    """
    if isinstance(a, StateChain):
        a = a.states
    if isinstance(b, StateChain):
        b = b.states
    m = len(a)
    if m == 0:
        return len(b)
    match: Dict[Hashable, int] = {}
    for i, sym in enumerate(a):
        match[sym] = match.get(sym, 0) | (1 << i)
    mask = (1 << m) - 1
    top = 1 << (m - 1)
    pos, neg = mask, 0  # vertical +1 / -1 deltas of the current column
    score = m
    for sym in b:
        eq = match.get(sym, 0)
        xv = eq | neg
        xh = (((eq & pos) + pos) ^ pos) | eq
        hpos = neg | (~(xh | pos) & mask)
        hneg = pos & xh
        if hpos & top:
            score += 1
        elif hneg & top:
            score -= 1
        # carry-in of 1: the first DP row is 0, 1, 2, ...
        hpos = ((hpos << 1) | 1) & mask
        hneg = (hneg << 1) & mask
        pos = hneg | (~(xv | hpos) & mask)
        neg = hpos & xv
    return score


def sim_lev(a: StateChain, b: StateChain) -> float:
    """``1 - L(a, b) / n`` for two chains of equal length ``n``."""
    n = len(a)
    if len(b) != n:
        raise MetricError(f"state chains differ in length ({n} vs {len(b)})")
    if n == 0:
        raise MetricError("empty state chain")
    return 1.0 - levenshtein(a, b) / n


def collection_span(collection: ScheduleCollection) -> Window:
    spans = [day.span for day in collection.days]
    if not spans:
        raise MetricError(f"collection {collection.label!r} has no days")
    return max(s for s, _ in spans), min(e for _, e in spans)


def default_window(*collections: ScheduleCollection) -> Window:
    """Intersection of the day spans of every collection."""
    spans = [collection_span(c) for c in collections]
    window = max(s for s, _ in spans), min(e for _, e in spans)
    if window[0] >= window[1]:
        raise CoverageError(f"collections share no common time window (got {window})")
    return window


def _chains(collection: ScheduleCollection, window: Window):
    return [discretize(day, window) for day in collection.days]


def sim_cross(
    c1: ScheduleCollection, c2: ScheduleCollection, window: Optional[Window] = None
) -> float:
    """Mean ``sim_lev`` over all ``m * n`` pairs drawn across two collections."""
    if not c1.days or not c2.days:
        raise MetricError("sim_cross needs two non-empty collections")
    window = window or default_window(c1, c2)
    chains1, chains2 = _chains(c1, window), _chains(c2, window)
    # fsum makes the mean independent of summation order, hence symmetric
    total = math.fsum(sim_lev(a, b) for a in chains1 for b in chains2)
    return total / (len(chains1) * len(chains2))


def sim_self(c: ScheduleCollection, window: Optional[Window] = None) -> float:
    """Mean ``sim_lev`` over the unordered pairs of days within one collection."""
    if len(c.days) < 2:
        raise MetricError(f"sim_self needs at least two days, {c.label!r} has {len(c.days)}")
    window = window or default_window(c)
    chains = _chains(c, window)
    pairs = list(combinations(chains, 2))
    return math.fsum(sim_lev(a, b) for a, b in pairs) / len(pairs)


def baseline_collection(
    vocabulary: Iterable[str], days: int, seed: int, label: str = "baseline"
) -> ScheduleCollection:
    """Random baseline: a uniformly drawn activity every 30 minutes, all day.

    Activities are drawn independently (repeats allowed) from the sorted
    vocabulary; day ``k`` uses the random stream ``(seed, k)``.
    """
    vocab = sorted(set(vocabulary))
    if not vocab:
        raise MetricError("baseline needs a non-empty vocabulary")
    if days < 1:
        raise ValueError("days must be >= 1")
    out = []
    for k in range(days):
        rng = RandomSource(seed, k)
        entries = tuple(
            ScheduleEntry(vocab[rng.choice(len(vocab))], t, t + BASELINE_SLOT_MINUTES)
            for t in range(0, MINUTES_PER_DAY, BASELINE_SLOT_MINUTES)
        )
        out.append(Schedule(label, k, entries))
    return ScheduleCollection(label=label, days=tuple(out), activity_vocabulary=frozenset(vocab))
