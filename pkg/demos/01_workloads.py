"""Workloads: domain types, the synthetic generator, and file round trips.

Run:  python demos/01_workloads.py
"""

import tempfile
from pathlib import Path

from conflictsched import (
    ConflictModel,
    CoreProfile,
    GasTimeModel,
    TimeDistribution,
    estimate_exec_time,
    generate_workload,
    load_workload,
    save_workload,
)

# ---------------------------------------------------------------------------
# A workload bundles everything the scheduler needs: processes in original
# block order, the pairwise conflict set, the core profile, and whether the
# run is order-preserving (attestor) or free to reorder (proposer).

w = generate_workload(
    n=12,
    conflict_rate=0.5,
    model=ConflictModel.PARTICIPATION,
    seed=7,
    cores=CoreProfile(core_count=4, cost_per_op=1e-6, cost_per_idle_ms=0.02),
)
print("processes:", [(p.id, p.exec_time_ms) for p in w.processes])
print("conflicts:", [(c.a, c.b) for c in w.conflicts])
print("meta:     ", w.meta)

# ---------------------------------------------------------------------------
# Two conflict models. PARTICIPATION pins the fraction of processes touched
# by conflicts (here exactly half of them); PAIRWISE flips an independent
# coin per pair, the classic random-graph construction.

participants = {pid for pair in w.conflicts for pid in (pair.a, pair.b)}
print(f"\nparticipation: {len(participants)}/{w.n} processes carry a conflict")

pairwise = generate_workload(12, 0.5, model=ConflictModel.PAIRWISE, seed=7)
print(f"pairwise:      {len(pairwise.conflicts)} of {12 * 11 // 2} possible pairs conflict")

# ---------------------------------------------------------------------------
# Generation is a pure function of its arguments; the same seed always
# produces the same workload, and files round-trip losslessly.

again = generate_workload(
    n=12, conflict_rate=0.5, model=ConflictModel.PARTICIPATION, seed=7,
    cores=CoreProfile(4, 1e-6, 0.02),
)
print("\ndeterministic:", w == again)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "workload.json"
    save_workload(w, path)
    print("round trip:   ", load_workload(path) == w)
    print("file head:    ", path.read_text().splitlines()[1].strip())

# ---------------------------------------------------------------------------
# Execution times come from a pluggable integer distribution; real gas
# readings can be mapped to milliseconds with a fitted linear model.

slow = generate_workload(6, 0.0, seed=1, time_dist=TimeDistribution.uniform(20, 40))
print("\nslow times:   ", [p.exec_time_ms for p in slow.processes])

gas_model = GasTimeModel(slope=4e-4, intercept=0.5)
for gas in (0, 21_000, 100_000):
    print(f"gas {gas:>7,} -> {estimate_exec_time(gas, gas_model):>3} ms")
