"""Render schedule collections as stacked 24-hour SVG timelines."""

from __future__ import annotations

from typing import Dict, List, Sequence
from xml.sax.saxutils import escape

from .core import MINUTES_PER_DAY, ScheduleCollection, format_time

# matplotlib's tab20, hard-coded so output does not depend on matplotlib
PALETTE = (
    "#1f77b4", "#aec7e8", "#ff7f0e", "#ffbb78", "#2ca02c",
    "#98df8a", "#d62728", "#ff9896", "#9467bd", "#c5b0d5",
    "#8c564b", "#c49c94", "#e377c2", "#f7b6d2", "#7f7f7f",
    "#c7c7c7", "#bcbd22", "#dbdb8d", "#17becf", "#9edae5",
)

WIDTH = 960
LEFT = 70
RIGHT = 20
BAND = 18
BAND_GAP = 4
PANEL_TITLE = 22
PANEL_GAP = 16
AXIS = 22
LEGEND_ROW = 18


def activity_colors(vocabulary) -> Dict[str, str]:
    """Sorted-vocabulary index into the palette, cycling past 20 activities."""
    return {a: PALETTE[i % len(PALETTE)] for i, a in enumerate(sorted(vocabulary))}


def render_timeline(collections: Sequence[ScheduleCollection]) -> str:
    """One panel per collection (first on top), one band per day.

    Raises ValueError if there is nothing to draw.
    """
    if not collections:
        raise ValueError("no collections to draw")
    for c in collections:
        if not c.days:
            raise ValueError(f"collection {c.label!r} has no days")
    vocabulary = sorted(set().union(*(c.activity_vocabulary for c in collections)))
    colors = activity_colors(vocabulary)
    plot_w = WIDTH - LEFT - RIGHT
    scale = plot_w / MINUTES_PER_DAY

    parts: List[str] = []
    y = 10
    for c in collections:
        parts.append(f'<text x="{LEFT}" y="{y + 14}" font-size="14" font-weight="bold">'
                     f'{escape(c.label)}</text>')
        y += PANEL_TITLE
        for day in c.days:
            parts.append(f'<text x="{LEFT - 6}" y="{y + BAND - 5}" font-size="11" '
                         f'text-anchor="end">day {day.day_index}</text>')
            parts.append(f'<rect x="{LEFT}" y="{y}" width="{plot_w}" height="{BAND}" '
                         f'fill="#ffffff" stroke="#dddddd"/>')
            for e in day.active_entries():
                parts.append(
                    f'<rect x="{LEFT + e.start * scale:.2f}" y="{y}" '
                    f'width="{e.duration * scale:.2f}" height="{BAND}" '
                    f'fill="{colors[e.activity]}"><title>{escape(e.activity)} '
                    f'{format_time(e.start)}-{format_time(e.end)}</title></rect>'
                )
            y += BAND + BAND_GAP
        y += PANEL_GAP

    for hour in range(0, 25, 3):
        x = LEFT + hour * 60 * scale
        parts.append(f'<line x1="{x:.2f}" y1="10" x2="{x:.2f}" y2="{y - PANEL_GAP}" '
                     f'stroke="#888888" stroke-width="0.5"/>')
        parts.append(f'<text x="{x:.2f}" y="{y + 4}" font-size="10" '
                     f'text-anchor="middle">{hour:02d}:00</text>')
    y += AXIS

    per_row = 4
    col_w = plot_w / per_row
    for i, a in enumerate(vocabulary):
        lx = LEFT + (i % per_row) * col_w
        ly = y + (i // per_row) * LEGEND_ROW
        parts.append(f'<rect x="{lx:.2f}" y="{ly}" width="12" height="12" fill="{colors[a]}"/>')
        parts.append(f'<text x="{lx + 16:.2f}" y="{ly + 10}" font-size="11">{escape(a)}</text>')
    height = y + ((len(vocabulary) + per_row - 1) // per_row) * LEGEND_ROW + 10

    header = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
              f'viewBox="0 0 {WIDTH} {height}" font-family="sans-serif">')
    return "\n".join([header, f'<rect width="{WIDTH}" height="{height}" fill="#ffffff"/>',
                      *parts, "</svg>"]) + "\n"
