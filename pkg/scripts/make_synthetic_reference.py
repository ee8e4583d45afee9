"""Synthesize the bundled household reference dataset.

The reference mimics a sparse, self-reported activity log: a retiree-like
routine where logged activities have jittered times, some are skipped, a few
swap order, and unlogged stretches are left as gaps (they become "other" on
load). It uses a plain stochastic routine simulator with Gaussian timing,
deliberately unrelated to the template generator it is compared against.

    python scripts/make_synthetic_reference.py > src/persona_sched/data/reference_household.json
"""

import json
import random
import sys

DAYS = 10
SEED = 20240517

ACTIVITIES = [
    "sleep", "bathroom", "breakfast", "medication", "computer", "lunch",
    "nap", "tv", "cooking", "dinner", "reading",
]


def hhmm(t):
    t = int(round(t))
    return f"{t // 60:02d}:{t % 60:02d}"


def simulate_day(rng):
    log = []
    t = 0.0

    def do(activity, duration, gap=0.0):
        nonlocal t
        t += max(0.0, gap)
        start = t
        t += max(1.0, duration)
        log.append((activity, start, t))

    wake = rng.gauss(7 * 60, 25)
    do("sleep", wake)
    do("bathroom", rng.uniform(10, 25))
    do("breakfast", rng.gauss(25, 6), gap=rng.choice([0, 0, rng.uniform(5, 20)]))
    if rng.random() < 0.8:
        do("medication", rng.uniform(3, 8))

    t = max(t, rng.gauss(9 * 60, 20))
    do("computer", rng.gauss(150, 30))
    t = max(t, rng.gauss(12 * 60 + 30, 15))
    do("lunch", rng.gauss(40, 8))

    if rng.random() < 0.5:
        do("nap", rng.gauss(45, 15), gap=rng.uniform(0, 20))
    afternoon = ["tv", "computer"]
    if rng.random() < 0.3:
        afternoon.reverse()
    for activity in afternoon:
        do(activity, rng.gauss(75, 25), gap=rng.uniform(0, 30))

    t = max(t, rng.gauss(17 * 60 + 30, 20))
    do("cooking", rng.gauss(50, 10))
    do("dinner", rng.gauss(35, 8))
    do("tv", rng.gauss(90, 30), gap=rng.uniform(0, 25))
    if rng.random() < 0.6:
        do("reading", rng.gauss(40, 15))
    t = max(t, rng.gauss(22 * 60 + 30, 20))
    do("bathroom", rng.uniform(8, 15))
    do("sleep", 1440 - t, gap=rng.uniform(0, 10))

    out = []
    for activity, start, end in log:
        start, end = round(start), min(round(end), 1440)
        if out and start < out[-1][2]:
            start = out[-1][2]
        if start < end:
            out.append((activity, start, end))
    return [{"activity": a, "start": hhmm(s), "end": hhmm(e)} for a, s, e in out]


def main():
    rng = random.Random(SEED)
    doc = {
        "label": "household_reference",
        "activities": sorted(ACTIVITIES),
        "days": [simulate_day(rng) for _ in range(DAYS)],
    }
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
