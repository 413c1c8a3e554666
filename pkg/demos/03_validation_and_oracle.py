"""Validation and the exact solver: trust, but verify the greedy heuristic.

Run:  python demos/03_validation_and_oracle.py
"""

import random
import statistics

from conflictsched import (
    Assignment,
    ConflictPair,
    CoreProfile,
    Process,
    Schedule,
    Workload,
    exact_optimal,
    generate_workload,
    schedule,
    validate_schedule,
)

# ---------------------------------------------------------------------------
# The validator checks four things: every process assigned exactly once
# (COMPLETENESS), no overlap on a core (C1), no overlap between conflicting
# processes anywhere (C2), and original order for conflicting pairs in
# attestor mode (C3). Here is a deliberately broken schedule: the two
# conflicting processes run at the same time on different cores.

w = Workload(
    processes=(Process(0, 4, 4), Process(1, 4, 4)),
    conflicts=(ConflictPair(0, 1),),
    cores=CoreProfile(2),
)
broken = Schedule(
    assignments=(Assignment(0, 0, 0, 4), Assignment(1, 1, 2, 6)),
    horizon_ms=8, schedule_makespan_ms=6, wall_time_ms=0.0,
)
report = validate_schedule(broken, w)
print("broken schedule ok?", report.ok)
for v in report.violations:
    print(f"   {v.constraint}: {v.detail}")

good = schedule(w)
print("greedy schedule ok?", validate_schedule(good, w).ok)

# ---------------------------------------------------------------------------
# For small instances a branch-and-bound search proves the true optimum, so
# the heuristic's gap can be measured instead of guessed. The witness it
# returns passes the same validator.

gaps = []
rng = random.Random(1)
for i in range(40):
    inst = generate_workload(
        rng.randint(4, 8), rng.random(), seed=i, cores=CoreProfile(rng.choice([2, 3]))
    )
    best = exact_optimal(inst)
    assert best.optimal and validate_schedule(best.schedule, inst).ok
    greedy = schedule(inst)
    gaps.append(greedy.schedule_makespan_ms / best.makespan_ms)

print(f"\ngreedy vs optimal over {len(gaps)} small instances:")
print(f"   mean gap {statistics.mean(gaps):.3f}x, worst {max(gaps):.3f}x, "
      f"exact matches {sum(1 for g in gaps if g == 1.0)}")

# ---------------------------------------------------------------------------
# The search budget caps runaway instances: when it is exhausted the best
# schedule found so far comes back flagged as non-optimal.

big = generate_workload(10, 0.5, seed=9, cores=CoreProfile(3))
capped = exact_optimal(big, node_budget=100)
print(f"\ncapped search: optimal={capped.optimal}, makespan {capped.makespan_ms} ms "
      f"(still a valid schedule: {validate_schedule(capped.schedule, big).ok})")
