"""
Validating a template and generating a week
===========================================

Loads the bundled household template, checks it at the variance extremes,
generates seven days and writes them as JSON, CSV and an SVG timeline.
"""

from pathlib import Path

from persona_sched import generate_collection, render_timeline, save_schedules, to_csv, validate_template
from persona_sched.data import household_template

template = household_template()

report = validate_template(template)
print(report.to_text())

week = generate_collection(template, days=7, seed=2024)

# how much does breakfast move around from day to day?
for day in week.days:
    breakfast = next(e for e in day.entries if e.activity == "breakfast")
    print(f"day {day.day_index}: breakfast at minute {breakfast.start}, {breakfast.duration} min")

out = Path("demo_output")
out.mkdir(exist_ok=True)
(out / "week.json").write_text(save_schedules(week))
(out / "week.csv").write_text(to_csv(week))
(out / "week.svg").write_text(render_timeline([week]))
print(f"wrote {sorted(p.name for p in out.iterdir())}")
