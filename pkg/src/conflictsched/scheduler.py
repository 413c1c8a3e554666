"""Greedy iterative conflict-aware scheduler.

Processes are sorted by a pluggable priority key, then placed one at a time
on the least occupied core. Two placement methods exist:

* STRICT always places the process, inserting the minimal idle time needed
  to clear conflicts with already-placed partners.
* LOOSE refuses any placement that would need idle time. Refused processes
  are retried over multiple review rounds (core ends advance between
  rounds, so earlier refusals often become placeable); whatever survives
  all rounds is handed to the strict method.

In attestor mode, conflicting pairs must additionally finish in their
original block order; both placement methods respect that, and the sort
phase puts all conflict participants first in original order so the gate
can always be satisfied.

All tie-breaks are pinned (lowest core id, original process id), so a
schedule is a pure function of the workload and strategy; only the
measured wall time varies between runs.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .conflict import ConflictIndex, build_conflict_index
from .model import Process, Workload

__all__ = [
    "Assignment",
    "AssignType",
    "AttestorOrderError",
    "CoreState",
    "Plan",
    "Schedule",
    "SortType",
    "Strategy",
    "assign_loosely",
    "assign_strictly",
    "load_schedule",
    "save_schedule",
    "schedule",
    "schedule_from_dict",
    "schedule_to_dict",
    "sort_processes",
]


class SortType(str, Enum):
    FIFO = "FIFO"
    MCCF = "MCCF"  # most conflicting count first
    MCDF = "MCDF"  # most conflicting duration first
    LCCF = "LCCF"  # least conflicting count first
    LCDF = "LCDF"  # least conflicting duration first


class AssignType(str, Enum):
    LOOSE = "LOOSE"
    STRICT = "STRICT"


class AttestorOrderError(RuntimeError):
    """A conflicting predecessor was still unassigned; scheduler bug."""


@dataclass(frozen=True, slots=True)
class Strategy:
    """Heuristic knobs: priority order, placement method, review rounds."""

    sort_type: SortType = SortType.MCDF
    assign_type: AssignType = AssignType.LOOSE
    loose_review_round: int = 3

    def __post_init__(self) -> None:
        if self.loose_review_round < 0:
            raise ValueError("looseReviewRound must be >= 0")

    @property
    def label(self) -> str:
        if self.assign_type is AssignType.STRICT:
            return f"{self.sort_type.value}-STRICT"
        return f"{self.sort_type.value}-LOOSE-{self.loose_review_round}"


DEFAULT_STRATEGY = Strategy(SortType.MCDF, AssignType.LOOSE, 3)


@dataclass(frozen=True, slots=True)
class Assignment:
    process_id: int
    core_id: int
    start_ms: int
    finish_ms: int


@dataclass
class CoreState:
    """Occupancy of one core; intervals are half-open [start, finish)."""

    core_id: int
    intervals: list[tuple[int, int, int]] = field(default_factory=list)  # (pid, start, finish)
    occupied_until_ms: int = 0


@dataclass
class Plan:
    """Mutable working state shared by the placement methods."""

    workload: Workload
    cores: list[CoreState]
    assigned: dict[int, Assignment] = field(default_factory=dict)

    @classmethod
    def empty(cls, w: Workload) -> Plan:
        return cls(workload=w, cores=[CoreState(k) for k in range(w.cores.core_count)])


@dataclass(frozen=True)
class Schedule:
    """Scheduler output: one assignment per process plus summary times.

    ``horizon_ms`` is the serial-execution makespan (sum of all execution
    times) and the baseline for speedups. ``wall_time_ms`` is the measured
    duration of the scheduling call itself, not of the schedule.
    """

    assignments: tuple[Assignment, ...]
    horizon_ms: int
    schedule_makespan_ms: int
    wall_time_ms: float


def sort_processes(
    w: Workload, idx: ConflictIndex, sort_type: SortType, is_attestor: bool
) -> list[int]:
    """Order process ids for placement.

    Proposer mode applies the strategy's sort key with ties broken by
    original id (stable). Attestor mode ignores the key: conflict
    participants come first in original order (their relative order is
    fixed anyway), then the conflict-free remainder in original order.
    """
    ids = list(range(w.n))
    if is_attestor:
        participants = [i for i in ids if idx.conflict_count[i] > 0]
        rest = [i for i in ids if idx.conflict_count[i] == 0]
        return participants + rest
    if sort_type is SortType.FIFO:
        return ids
    if sort_type is SortType.MCCF:
        return sorted(ids, key=lambda i: -idx.conflict_count[i])
    if sort_type is SortType.LCCF:
        return sorted(ids, key=lambda i: idx.conflict_count[i])
    if sort_type is SortType.MCDF:
        return sorted(ids, key=lambda i: -idx.conflict_duration_ms[i])
    return sorted(ids, key=lambda i: idx.conflict_duration_ms[i])


def _least_occupied(plan: Plan) -> CoreState:
    return min(plan.cores, key=lambda c: (c.occupied_until_ms, c.core_id))


def _unassigned_predecessor(plan: Plan, idx: ConflictIndex, pid: int) -> int | None:
    for partner in idx.adjacency[pid]:
        if partner < pid and partner not in plan.assigned:
            return partner
    return None


def _commit(plan: Plan, core: CoreState, proc: Process, start: int) -> Assignment:
    finish = start + proc.exec_time_ms
    core.intervals.append((proc.id, start, finish))
    core.occupied_until_ms = finish
    a = Assignment(proc.id, core.core_id, start, finish)
    plan.assigned[proc.id] = a
    return a


def assign_strictly(
    proc: Process, plan: Plan, idx: ConflictIndex, is_attestor: bool
) -> Assignment:
    """Place on the least occupied core, inserting minimal idle time.

    The start is pushed past the latest finish of every already-assigned
    conflicting partner, so the placement never violates conflict freedom;
    in attestor mode every conflicting predecessor must already be placed.
    """
    if is_attestor:
        missing = _unassigned_predecessor(plan, idx, proc.id)
        if missing is not None:
            raise AttestorOrderError(
                f"process {proc.id} assigned before conflicting predecessor {missing}"
            )
    core = _least_occupied(plan)
    start = core.occupied_until_ms
    for partner in idx.adjacency[proc.id]:
        a = plan.assigned.get(partner)
        if a is not None and a.finish_ms > start:
            start = a.finish_ms
    return _commit(plan, core, proc, start)


def assign_loosely(
    proc: Process, plan: Plan, idx: ConflictIndex, is_attestor: bool
) -> Assignment | None:
    """Place at the least occupied core's end only if no idle is needed.

    Returns None (leaving the plan untouched) when the candidate slot
    overlaps an assigned conflicting partner, when an attestor-order
    predecessor is still unassigned, or when starting now would run ahead
    of a predecessor's finish. No alternative core is probed and no idle
    time is inserted; later review rounds or the strict fallback recover
    refused processes.
    """
    if is_attestor and _unassigned_predecessor(plan, idx, proc.id) is not None:
        return None
    core = _least_occupied(plan)
    start = core.occupied_until_ms
    finish = start + proc.exec_time_ms
    for partner in idx.adjacency[proc.id]:
        a = plan.assigned.get(partner)
        if a is None:
            continue
        if a.start_ms < finish and start < a.finish_ms:
            return None
        if is_attestor and a.finish_ms > start:
            # order preservation: cannot start before a predecessor finishes
            return None
    return _commit(plan, core, proc, start)


def schedule(w: Workload, strategy: Strategy = DEFAULT_STRATEGY) -> Schedule:
    """Run the full greedy scheduler on a workload.

    STRICT strategies make a single strict pass in sorted order. LOOSE
    strategies run rounds 0..loose_review_round of loose placement over
    the still-unassigned processes (stopping early once none remain) and
    then place any survivors strictly.
    """
    t0 = time.perf_counter()
    idx = build_conflict_index(w)
    order = sort_processes(w, idx, strategy.sort_type, w.attestor)
    plan = Plan.empty(w)
    horizon = 0

    if strategy.assign_type is AssignType.STRICT:
        for pid in order:
            proc = w.processes[pid]
            horizon += proc.exec_time_ms
            assign_strictly(proc, plan, idx, w.attestor)
    else:
        for round_no in range(strategy.loose_review_round + 1):
            unassigned = 0
            for pid in order:
                proc = w.processes[pid]
                if round_no == 0:
                    horizon += proc.exec_time_ms
                if pid in plan.assigned:
                    continue
                if assign_loosely(proc, plan, idx, w.attestor) is None:
                    unassigned += 1
            if unassigned == 0:
                break
        for pid in order:
            if pid not in plan.assigned:
                assign_strictly(w.processes[pid], plan, idx, w.attestor)

    assignments = tuple(plan.assigned[pid] for pid in range(w.n))
    makespan = max((a.finish_ms for a in assignments), default=0)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    return Schedule(
        assignments=assignments,
        horizon_ms=horizon,
        schedule_makespan_ms=makespan,
        wall_time_ms=wall_ms,
    )


def schedule_to_dict(sch: Schedule) -> dict:
    return {
        "assignments": [
            {
                "processId": a.process_id,
                "coreId": a.core_id,
                "startMs": a.start_ms,
                "finishMs": a.finish_ms,
            }
            for a in sch.assignments
        ],
        "horizonMs": sch.horizon_ms,
        "scheduleMakespanMs": sch.schedule_makespan_ms,
        "wallTimeMs": sch.wall_time_ms,
    }


def schedule_from_dict(raw: dict) -> Schedule:
    assignments = tuple(
        Assignment(
            process_id=entry["processId"],
            core_id=entry["coreId"],
            start_ms=entry["startMs"],
            finish_ms=entry["finishMs"],
        )
        for entry in raw["assignments"]
    )
    return Schedule(
        assignments=assignments,
        horizon_ms=raw["horizonMs"],
        schedule_makespan_ms=raw["scheduleMakespanMs"],
        wall_time_ms=raw["wallTimeMs"],
    )


def save_schedule(sch: Schedule, path: str | Path) -> None:
    Path(path).write_text(json.dumps(schedule_to_dict(sch), indent=2) + "\n", encoding="utf-8")


def load_schedule(path: str | Path) -> Schedule:
    return schedule_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
