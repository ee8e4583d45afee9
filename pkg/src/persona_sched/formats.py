"""JSON/CSV serialization for templates, schedule collections and reference data."""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Dict, Iterable, List, Optional, Tuple

from .core import (
    MINUTES_PER_DAY,
    Schedule,
    ScheduleCollection,
    ScheduleEntry,
    ScheduleFormatError,
    ScheduleTemplate,
    TemplateEntry,
    check_activity,
    format_time,
    parse_time,
)

DEFAULT_GAP_ACTIVITY = "other"

_TEMPLATE_KEYS = {"name", "day_start", "day_end", "anchor_day_bounds", "entries", "version"}
_ENTRY_KEYS = ("activity", "start", "start_variance", "duration", "duration_variance")
_COLLECTION_KEYS = {"label", "activities", "days", "version"}
_INTERVAL_KEYS = {"activity", "start", "end"}


class OverlapError(ScheduleFormatError):
    """Two reference intervals in the same day overlap."""

    def __init__(self, day_index: int, first: Tuple[str, int, int], second: Tuple[str, int, int]):
        self.day_index = day_index
        self.pair = (first, second)
        super().__init__(
            f"day {day_index}: {first[0]} [{format_time(first[1])}-{format_time(first[2])}) "
            f"overlaps {second[0]} [{format_time(second[1])}-{format_time(second[2])})"
        )


def _decode(document: str) -> Any:
    try:
        return json.loads(document)
    except json.JSONDecodeError as exc:
        raise ScheduleFormatError(f"invalid JSON: {exc}") from None


def _require_object(obj: Any, what: str, allowed: Iterable[str]) -> Dict[str, Any]:
    if not isinstance(obj, dict):
        raise ScheduleFormatError(f"{what} must be a JSON object")
    unknown = set(obj) - set(allowed)
    if unknown:
        raise ScheduleFormatError(f"{what}: unknown field(s) {sorted(unknown)}")
    return obj


def _optional_time(obj: Dict[str, Any], key: str) -> Optional[int]:
    return parse_time(obj[key]) if key in obj else None


def template_from_dict(doc: Dict[str, Any]) -> ScheduleTemplate:
    doc = _require_object(doc, "template", _TEMPLATE_KEYS)
    name = doc.get("name")
    if not isinstance(name, str):
        raise ScheduleFormatError("template: 'name' must be a string")
    raw_entries = doc.get("entries")
    if not isinstance(raw_entries, list) or not raw_entries:
        raise ScheduleFormatError("template: 'entries' must be a non-empty list")
    anchor = doc.get("anchor_day_bounds", True)
    if not isinstance(anchor, bool):
        raise ScheduleFormatError("template: 'anchor_day_bounds' must be a boolean")

    entries = []
    for k, raw in enumerate(raw_entries):
        raw = _require_object(raw, f"entry {k}", _ENTRY_KEYS)
        if "activity" not in raw:
            raise ScheduleFormatError(f"entry {k}: missing 'activity'")
        try:
            entries.append(
                TemplateEntry(
                    activity=check_activity(raw["activity"]),
                    **{key: _optional_time(raw, key) for key in _ENTRY_KEYS[1:]},
                )
            )
        except ScheduleFormatError as exc:
            raise ScheduleFormatError(f"entry {k}: {exc}") from None

    day_start = _optional_time(doc, "day_start")
    day_end = _optional_time(doc, "day_end")
    return ScheduleTemplate(
        name=name,
        entries=tuple(entries),
        day_start=0 if day_start is None else day_start,
        day_end=MINUTES_PER_DAY if day_end is None else day_end,
        anchor_day_bounds=anchor,
    )


def load_template(document: str) -> ScheduleTemplate:
    """Parse a template JSON document.

    Optional time fields that are omitted stay ``None``; they are never
    materialized as zero. Raises :class:`ScheduleFormatError` on unknown keys,
    bad ``HH:MM`` strings, a variance without its base value, or no entries.
    """
    return template_from_dict(_decode(document))


def template_to_dict(template: ScheduleTemplate) -> Dict[str, Any]:
    entries = []
    for e in template.entries:
        out: Dict[str, Any] = {"activity": e.activity}
        for key in _ENTRY_KEYS[1:]:
            value = getattr(e, key)
            if value is not None:
                out[key] = format_time(value)
        entries.append(out)
    return {
        "name": template.name,
        "day_start": format_time(template.day_start),
        "day_end": format_time(template.day_end),
        "anchor_day_bounds": template.anchor_day_bounds,
        "entries": entries,
    }


def save_template(template: ScheduleTemplate) -> str:
    return json.dumps(template_to_dict(template), indent=2) + "\n"


def save_schedules(collection: ScheduleCollection) -> str:
    """Serialize a collection to the generated/reference JSON schema.

    Zero-duration entries are dropped, since reference intervals must have
    positive length. Output is byte-stable for equal inputs.
    """
    days = [
        [
            {"activity": e.activity, "start": format_time(e.start), "end": format_time(e.end)}
            for e in day.active_entries()
        ]
        for day in collection.days
    ]
    doc = {
        "label": collection.label,
        "activities": sorted(collection.activity_vocabulary),
        "days": days,
    }
    return json.dumps(doc, indent=2) + "\n"


def _parse_interval(raw: Any, day_index: int, k: int) -> Tuple[str, int, int]:
    raw = _require_object(raw, f"day {day_index} interval {k}", _INTERVAL_KEYS)
    missing = _INTERVAL_KEYS - set(raw)
    if missing:
        raise ScheduleFormatError(f"day {day_index} interval {k}: missing {sorted(missing)}")
    activity = check_activity(raw["activity"])
    start, end = parse_time(raw["start"]), parse_time(raw["end"])
    if start >= end:
        raise ScheduleFormatError(
            f"day {day_index} interval {k}: start {raw['start']} is not before end {raw['end']}"
        )
    return activity, start, end


def fill_gaps(
    intervals: List[Tuple[str, int, int]],
    gap_activity: str,
    day_start: int = 0,
    day_end: int = MINUTES_PER_DAY,
    day_index: int = 0,
) -> List[Tuple[str, int, int]]:
    """Tile ``[day_start, day_end)`` by inserting ``gap_activity`` into every gap.

    ``intervals`` must be sorted by start. Intervals are clipped to the day.
    """
    filled: List[Tuple[str, int, int]] = []
    cursor = day_start
    prev: Optional[Tuple[str, int, int]] = None
    for iv in intervals:
        if prev is not None and iv[1] < prev[2]:
            raise OverlapError(day_index, prev, iv)
        prev = iv
        activity, start, end = iv[0], max(iv[1], day_start), min(iv[2], day_end)
        if start >= end:
            continue
        if start > cursor:
            filled.append((gap_activity, cursor, start))
        filled.append((activity, start, end))
        cursor = end
    if cursor < day_end:
        filled.append((gap_activity, cursor, day_end))
    return filled


def load_reference_collection(
    document: str,
    gap_activity: str = DEFAULT_GAP_ACTIVITY,
    day_start: int = 0,
    day_end: int = MINUTES_PER_DAY,
) -> ScheduleCollection:
    """Load a reference (or generated) collection, filling gaps with ``gap_activity``.

    The gap activity enters the vocabulary only if some day actually had a gap.
    Overlapping intervals raise :class:`OverlapError`.
    """
    check_activity(gap_activity)
    doc = _require_object(_decode(document), "collection", _COLLECTION_KEYS)
    label = doc.get("label")
    if not isinstance(label, str):
        raise ScheduleFormatError("collection: 'label' must be a string")
    activities = doc.get("activities", [])
    if not isinstance(activities, list):
        raise ScheduleFormatError("collection: 'activities' must be a list")
    vocabulary = {check_activity(a) for a in activities}
    raw_days = doc.get("days")
    if not isinstance(raw_days, list):
        raise ScheduleFormatError("collection: 'days' must be a list")

    days = []
    for d, raw_day in enumerate(raw_days):
        if not isinstance(raw_day, list):
            raise ScheduleFormatError(f"day {d} must be a list of intervals")
        intervals = [_parse_interval(raw, d, k) for k, raw in enumerate(raw_day)]
        intervals.sort(key=lambda iv: iv[1])
        filled = fill_gaps(intervals, gap_activity, day_start, day_end, day_index=d)
        if any(a == gap_activity for a, _, _ in filled) and gap_activity not in {
            a for a, _, _ in intervals
        }:
            vocabulary.add(gap_activity)
        days.append(
            Schedule(label, d, tuple(ScheduleEntry(a, s, e) for a, s, e in filled))
        )
    return ScheduleCollection(label=label, days=tuple(days), activity_vocabulary=frozenset(vocabulary))


def to_csv(collection: ScheduleCollection) -> str:
    """One ``day,activity,start,end`` row per positive-duration entry."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["day", "activity", "start", "end"])
    for d, day in enumerate(collection.days):
        for e in day.active_entries():
            writer.writerow([d, e.activity, format_time(e.start), format_time(e.end)])
    return buf.getvalue()
