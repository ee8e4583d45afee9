"""Template-driven generation, validation, rendering and comparison of daily activity schedules."""

from .core import (
    MINUTES_PER_DAY,
    Schedule,
    ScheduleCollection,
    ScheduleEntry,
    ScheduleFormatError,
    ScheduleTemplate,
    TemplateEntry,
    format_time,
    parse_time,
)
from .environment import (
    EnvironmentModel,
    NoPathError,
    OccupancyGrid,
    Trace,
    UnmappedActivityError,
    generate_trace,
    load_environment,
    load_floorplan,
    plan_path,
)
from .formats import (
    OverlapError,
    load_reference_collection,
    load_template,
    save_schedules,
    save_template,
    to_csv,
)
from .generator import (
    GenerationError,
    RandomSource,
    generate_collection,
    generate_schedule,
)
from .similarity import (
    CoverageError,
    MetricError,
    StateChain,
    baseline_collection,
    discretize,
    levenshtein,
    sim_cross,
    sim_lev,
    sim_self,
)
from .timeline import render_timeline
from .validator import ValidationReport, validate_template

__version__ = "0.1.0"
