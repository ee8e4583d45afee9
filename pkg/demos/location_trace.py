"""
From a schedule to a walking trace
==================================

Renders one generated day on the bundled two-room floorplan and plots the
x coordinate over the day. Requires matplotlib.
"""

import matplotlib.pyplot as plt
import numpy as np

from persona_sched import generate_collection, generate_trace, load_environment
from persona_sched.data import FLOORPLAN_FILE, LOCATIONS_FILE, household_template, read_text

env = load_environment(read_text(FLOORPLAN_FILE), read_text(LOCATIONS_FILE))
day = generate_collection(household_template(), days=1, seed=7).days[0]
trace = generate_trace(day, env, speed=1.2, sample_hz=1.0)

t = np.array([s.t for s in trace.samples]) / 3600
x = np.array([s.x for s in trace.samples])
y = np.array([s.y for s in trace.samples])

fig, (ax0, ax1) = plt.subplots(nrows=2, figsize=(9, 6))
ax0.plot(t, x)
ax0.set_xlabel("hour of day")
ax0.set_ylabel("x [m]")
ax1.imshow(env.grid.blocked, cmap="Greys", origin="upper",
           extent=(0, env.grid.width * env.grid.cell_size, env.grid.height * env.grid.cell_size, 0))
ax1.plot(x, y, lw=0.8)
ax1.set_title("path over the day")
fig.tight_layout()
fig.savefig("trace.png")
print(f"{len(trace.samples)} samples, {len(trace.warnings)} warnings, saved trace.png")
