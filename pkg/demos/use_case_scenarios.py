"""
Schedule patterns a template can express
========================================

Each block below builds a tiny template for one everyday pattern and prints
the day it resolves to with all variances set to zero.
"""

from persona_sched import ScheduleTemplate, TemplateEntry as E, format_time, generate_schedule
from persona_sched.generator import ExtremeOffsets


def show(title, *entries, **kw):
    day = generate_schedule(ScheduleTemplate(title, entries, **kw), ExtremeOffsets(0))
    print(title)
    for e in day.entries:
        print(f"  {e.activity:<12} {format_time(e.start)}-{format_time(e.end)}  ({e.duration} min)")
    print()


# a fixed appointment: the start never moves
show("scheduled", E("sleep", 0, 0, 420, 0), E("free"), E("meeting", 600, 0, 60, 0), E("rest"))

# a sequence: only the first activity has a start time, the rest chain on
show("sequence", E("shower", 420, 0, 20, 0), E("breakfast", duration=30), E("brush_teeth", duration=5),
     E("rest"))

# an end-time constraint: cooking is pushed back so that it ends when dinner starts
show("end time", E("cooking", duration=60), E("dinner", 1110, 0, 30, 0))

# filling the time available: "tv" has no fields and stretches between its neighbours
show("fill", E("lunch", 720, 0, 45, 0), E("tv"), E("cooking", 1050, 0, 60, 0))

# a conflict: the long morning task is cut short and "coffee" is squeezed out
show("conflict", E("chores", 420, 0, 180, 0), E("coffee", duration=15), E("appointment", 540, 0, 60, 0))
