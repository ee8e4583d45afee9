"""Grid floorplans, activity locations, A* planning and location traces."""

from __future__ import annotations

import bisect
import csv
import heapq
import io
import json
import math
from dataclasses import dataclass, field
from itertools import count
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from .core import Schedule, ScheduleFormatError, check_activity

Cell = Tuple[int, int]

DEFAULT_CELL_SIZE = 0.25
DEFAULT_SPEED = 1.2
DEFAULT_SAMPLE_HZ = 1.0

# +x, -x, +y, -y; the order fixes tie-breaking between equal-cost paths
_NEIGHBOURS = ((1, 0), (-1, 0), (0, 1), (0, -1))


class NoPathError(ValueError):
    pass


class UnmappedActivityError(KeyError):
    def __init__(self, activity: str):
        self.activity = activity
        super().__init__(f"activity {activity!r} has no location in this environment")

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class OccupancyGrid:
    """Row-major occupancy; ``blocked[y, x]`` is True for walls/furniture."""

    blocked: np.ndarray
    cell_size: float = DEFAULT_CELL_SIZE

    def __post_init__(self) -> None:
        arr = np.array(self.blocked, dtype=bool)
        if arr.ndim != 2 or 0 in arr.shape:
            raise ScheduleFormatError("occupancy grid must be a non-empty 2-D array")
        arr.setflags(write=False)
        object.__setattr__(self, "blocked", arr)
        if not self.cell_size > 0:
            raise ScheduleFormatError("cell_size must be positive")

    @property
    def width(self) -> int:
        return self.blocked.shape[1]

    @property
    def height(self) -> int:
        return self.blocked.shape[0]

    def in_bounds(self, cell: Cell) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height

    def is_free(self, cell: Cell) -> bool:
        return self.in_bounds(cell) and not self.blocked[cell[1], cell[0]]

    def center(self, cell: Cell) -> Tuple[float, float]:
        return (cell[0] + 0.5) * self.cell_size, (cell[1] + 0.5) * self.cell_size


def load_floorplan(text: str, cell_size: float = DEFAULT_CELL_SIZE) -> OccupancyGrid:
    """Parse an ASCII floorplan: ``#`` blocked, ``.`` free, top line is row 0."""
    rows = text.splitlines()
    while rows and rows[-1] == "":
        rows.pop()
    if not rows:
        raise ScheduleFormatError("empty floorplan")
    width = len(rows[0])
    for y, row in enumerate(rows):
        if len(row) != width:
            raise ScheduleFormatError(
                f"ragged floorplan: row {y} has {len(row)} cells, row 0 has {width}"
            )
        bad = set(row) - {"#", "."}
        if bad:
            raise ScheduleFormatError(f"illegal character(s) {sorted(bad)} in row {y}")
    return OccupancyGrid(np.array([[c == "#" for c in row] for row in rows]), cell_size)


@dataclass(frozen=True)
class EnvironmentModel:
    """A floorplan plus the cell where each activity takes place."""

    grid: OccupancyGrid
    locations: Mapping[str, Cell] = field(default_factory=dict)

    def __post_init__(self) -> None:
        locs = {}
        for activity, cell in self.locations.items():
            check_activity(activity)
            cell = (int(cell[0]), int(cell[1]))
            if not self.grid.in_bounds(cell):
                raise ScheduleFormatError(f"location of {activity!r} {cell} is out of bounds")
            if not self.grid.is_free(cell):
                raise ScheduleFormatError(f"location of {activity!r} {cell} is blocked")
            locs[activity] = cell
        object.__setattr__(self, "locations", locs)

    def location(self, activity: str) -> Cell:
        try:
            return self.locations[activity]
        except KeyError:
            raise UnmappedActivityError(activity) from None


def load_environment(floorplan_text: str, sidecar_json: str) -> EnvironmentModel:
    """Build an environment from the ASCII grid and its JSON sidecar.

    The sidecar is ``{"cell_size_m": float, "locations": {"activity": [x, y]}}``.
    """
    try:
        meta = json.loads(sidecar_json)
    except json.JSONDecodeError as exc:
        raise ScheduleFormatError(f"invalid location sidecar: {exc}") from None
    if not isinstance(meta, dict) or not isinstance(meta.get("locations"), dict):
        raise ScheduleFormatError("location sidecar needs a 'locations' object")
    unknown = set(meta) - {"cell_size_m", "locations", "version"}
    if unknown:
        raise ScheduleFormatError(f"location sidecar: unknown field(s) {sorted(unknown)}")
    grid = load_floorplan(floorplan_text, float(meta.get("cell_size_m", DEFAULT_CELL_SIZE)))
    locations = {}
    for activity, xy in meta["locations"].items():
        if not (isinstance(xy, list) and len(xy) == 2 and all(isinstance(v, int) for v in xy)):
            raise ScheduleFormatError(f"location of {activity!r} must be [x, y] integers")
        locations[activity] = (xy[0], xy[1])
    return EnvironmentModel(grid, locations)


def plan_path(grid: OccupancyGrid, start: Cell, goal: Cell) -> List[Cell]:
    """Shortest 4-connected path from ``start`` to ``goal``, endpoints included.

    A* with unit step costs and the Manhattan heuristic. Nodes with equal
    f-score pop in insertion order.
    """
    for cell in (start, goal):
        if not grid.is_free(cell):
            raise ValueError(f"cell {cell} is out of bounds or blocked")
    if start == goal:
        return [start]

    def h(c: Cell) -> int:
        return abs(c[0] - goal[0]) + abs(c[1] - goal[1])

    tie = count()
    frontier = [(h(start), next(tie), start)]
    g = {start: 0}
    parent: Dict[Cell, Cell] = {}
    closed = set()
    while frontier:
        _, _, cur = heapq.heappop(frontier)
        if cur in closed:
            continue
        if cur == goal:
            path = [cur]
            while cur in parent:
                cur = parent[cur]
                path.append(cur)
            return path[::-1]
        closed.add(cur)
        for dx, dy in _NEIGHBOURS:
            nb = (cur[0] + dx, cur[1] + dy)
            if nb in closed or not grid.is_free(nb):
                continue
            cost = g[cur] + 1
            if cost < g.get(nb, math.inf):
                g[nb] = cost
                parent[nb] = cur
                heapq.heappush(frontier, (cost + h(nb), next(tie), nb))
    raise NoPathError(f"no path from {start} to {goal}")


@dataclass(frozen=True)
class TraceSample:
    t: float
    x: float
    y: float
    activity: str


@dataclass
class Trace:
    samples: List[TraceSample]
    warnings: List[str] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t_s", "x_m", "y_m", "activity"])
        for s in self.samples:
            writer.writerow([f"{s.t:.3f}", f"{s.x:.3f}", f"{s.y:.3f}", s.activity])
        return buf.getvalue()


@dataclass
class _Walk:
    depart: float
    points: np.ndarray  # (k, 2) cell centres in metres
    cumdist: np.ndarray
    speed: float

    @property
    def arrive(self) -> float:
        return self.depart + self.cumdist[-1] / self.speed

    def position(self, t: float) -> Tuple[float, float]:
        d = min(max(t - self.depart, 0.0) * self.speed, self.cumdist[-1])
        return (
            float(np.interp(d, self.cumdist, self.points[:, 0])),
            float(np.interp(d, self.cumdist, self.points[:, 1])),
        )


def generate_trace(
    schedule: Schedule,
    env: EnvironmentModel,
    speed: float = DEFAULT_SPEED,
    sample_hz: float = DEFAULT_SAMPLE_HZ,
) -> Trace:
    """Render a schedule into a sampled location trace.

    The agent waits at its activity's cell and, when the next activity starts
    somewhere else, walks the planned path at constant ``speed``. A walk that
    outlasts the new activity spills into the following one (with a warning);
    the next walk then departs on arrival. Times are seconds since midnight.
    """
    if not speed > 0 or not sample_hz > 0:
        raise ValueError("speed and sample_hz must be positive")
    active = schedule.active_entries()
    if not active:
        raise ValueError("schedule has no positive-duration entries")
    cells = [env.location(e.activity) for e in active]
    grid = env.grid

    walks: List[_Walk] = []
    warnings: List[str] = []
    free_at = active[0].start * 60.0
    for prev_cell, cell, entry in zip(cells, cells[1:], active[1:]):
        if cell == prev_cell:
            continue
        path = plan_path(grid, prev_cell, cell)
        points = np.array([grid.center(c) for c in path])
        steps = np.hypot(*np.diff(points, axis=0).T)
        walk = _Walk(max(entry.start * 60.0, free_at), points,
                     np.concatenate([[0.0], np.cumsum(steps)]), speed)
        if walk.arrive > entry.end * 60.0:
            warnings.append(
                f"walk to {entry.activity} at minute {entry.start} takes "
                f"{walk.arrive - entry.start * 60.0:.1f} s, longer than the activity"
            )
        walks.append(walk)
        free_at = walk.arrive

    departs = [w.depart for w in walks]
    starts = [e.start * 60.0 for e in active]
    t0, t1 = starts[0], active[-1].end * 60.0
    n = int(math.ceil((t1 - t0) * sample_hz - 1e-9))
    home = grid.center(cells[0])
    samples = []
    for k in range(n):
        t = t0 + k / sample_hz
        w = bisect.bisect_right(departs, t) - 1
        x, y = home if w < 0 else walks[w].position(t)
        activity = active[bisect.bisect_right(starts, t) - 1].activity
        samples.append(TraceSample(t, x, y, activity))
    return Trace(samples, warnings)
