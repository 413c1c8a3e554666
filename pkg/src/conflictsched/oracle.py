"""Correctness backstop: full schedule validation and an exact small-instance solver.

The validator checks arbitrary candidate schedules against every constraint
and reports all violations, not just the first. The exact solver is a
branch-and-bound search over (placement order, core choice) used to measure
the greedy scheduler's optimality gap on small instances; it is not meant
for production-sized workloads.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .conflict import build_conflict_index
from .model import Workload
from .scheduler import (
    Assignment,
    AssignType,
    Schedule,
    SortType,
    Strategy,
    schedule as greedy_schedule,
)

__all__ = [
    "OracleResult",
    "ValidationReport",
    "Violation",
    "exact_optimal",
    "validate_schedule",
]


@dataclass(frozen=True, slots=True)
class Violation:
    constraint: str  # C1, C2, C3, or COMPLETENESS
    process_ids: tuple[int, ...]
    detail: str


@dataclass(frozen=True, slots=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]


def validate_schedule(sch: Schedule, w: Workload) -> ValidationReport:
    """Check COMPLETENESS, C1, C2, and (in attestor mode) C3.

    COMPLETENESS: every process assigned exactly once, with a sane
    interval (finish = start + exec time, start >= 0, core id in range).
    C1: intervals on one core are pairwise disjoint. C2: conflicting
    processes never overlap, even across cores. C3: a conflicting pair
    must finish in original order when the workload is attestor-mode.
    Intervals are half-open, so back-to-back placement is legal.
    """
    violations: list[Violation] = []
    m = w.cores.core_count
    by_pid: dict[int, Assignment] = {}

    for a in sch.assignments:
        if a.process_id < 0 or a.process_id >= w.n:
            violations.append(
                Violation("COMPLETENESS", (a.process_id,), f"unknown process id {a.process_id}")
            )
            continue
        if a.process_id in by_pid:
            violations.append(
                Violation("COMPLETENESS", (a.process_id,), f"process {a.process_id} assigned twice")
            )
            continue
        by_pid[a.process_id] = a
        t = w.processes[a.process_id].exec_time_ms
        if a.start_ms < 0:
            violations.append(
                Violation("COMPLETENESS", (a.process_id,), f"process {a.process_id} starts at {a.start_ms} < 0")
            )
        if a.finish_ms != a.start_ms + t:
            violations.append(
                Violation(
                    "COMPLETENESS",
                    (a.process_id,),
                    f"process {a.process_id} finish {a.finish_ms} != start {a.start_ms} + time {t}",
                )
            )
        if a.core_id < 0 or a.core_id >= m:
            violations.append(
                Violation("COMPLETENESS", (a.process_id,), f"core id {a.core_id} out of range 0..{m - 1}")
            )

    for pid in range(w.n):
        if pid not in by_pid:
            violations.append(Violation("COMPLETENESS", (pid,), f"process {pid} is unassigned"))

    per_core: dict[int, list[Assignment]] = {}
    for a in by_pid.values():
        per_core.setdefault(a.core_id, []).append(a)
    for core_id, items in sorted(per_core.items()):
        items.sort(key=lambda a: (a.start_ms, a.process_id))
        for prev, cur in zip(items, items[1:]):
            if cur.start_ms < prev.finish_ms:
                violations.append(
                    Violation(
                        "C1",
                        (prev.process_id, cur.process_id),
                        f"processes {prev.process_id} and {cur.process_id} overlap on core {core_id}",
                    )
                )

    for pair in w.conflicts:
        ai, aj = by_pid.get(pair.a), by_pid.get(pair.b)
        if ai is None or aj is None:
            continue
        if ai.start_ms < aj.finish_ms and aj.start_ms < ai.finish_ms:
            violations.append(
                Violation(
                    "C2",
                    (pair.a, pair.b),
                    f"conflicting processes {pair.a} and {pair.b} overlap in time",
                )
            )
        if w.attestor and ai.finish_ms > aj.start_ms:
            violations.append(
                Violation(
                    "C3",
                    (pair.a, pair.b),
                    f"conflicting process {pair.b} starts at {aj.start_ms} "
                    f"before predecessor {pair.a} finishes at {ai.finish_ms}",
                )
            )

    return ValidationReport(ok=not violations, violations=tuple(violations))


@dataclass(frozen=True)
class OracleResult:
    makespan_ms: int
    schedule: Schedule
    optimal: bool
    nodes: int


class _BudgetExceeded(Exception):
    pass


def _clique_weight_table(times: tuple[int, ...], adj_mask: list[int]) -> list[int]:
    # exact max-weight clique per vertex subset; any clique must serialize,
    # so its summed time lower-bounds the makespan
    n = len(times)
    table = [0] * (1 << n)
    for subset in range(1, 1 << n):
        v = (subset & -subset).bit_length() - 1
        without = table[subset & (subset - 1)]
        with_v = times[v] + table[subset & adj_mask[v]]
        table[subset] = max(without, with_v)
    return table


def _static_lower_bound(w: Workload, clique_w: list[int] | None) -> int:
    times = w.exec_times()
    m = w.cores.core_count
    lb = math.ceil(sum(times) / m)
    idx = build_conflict_index(w)
    if clique_w is not None:
        lb = max(lb, clique_w[-1])
    else:
        for pair in w.conflicts:
            lb = max(lb, times[pair.a] + times[pair.b])
    for i in range(w.n):
        hood = idx.conflict_duration_ms[i]
        if hood:
            lb = max(lb, times[i] + math.ceil(hood / m))
    return lb


def _incumbent(w: Workload) -> tuple[int, dict[int, tuple[int, int, int]]]:
    best_ms = None
    best = None
    strategies = [Strategy(sort, assign, 3) for sort in SortType for assign in AssignType]
    for strat in strategies:
        sch = greedy_schedule(w, strat)
        if best_ms is None or sch.schedule_makespan_ms < best_ms:
            best_ms = sch.schedule_makespan_ms
            best = {a.process_id: (a.core_id, a.start_ms, a.finish_ms) for a in sch.assignments}
    assert best_ms is not None and best is not None
    return best_ms, best


def exact_optimal(
    w: Workload, *, node_budget: int = 2_000_000, prune: bool = True
) -> OracleResult:
    """Find a minimum-makespan schedule by exhaustive search.

    Branches over which process to place next and on which core; each
    placement starts at the earliest time that respects conflict freedom
    (and original order, in attestor mode). With ``prune`` enabled the
    search uses a greedy incumbent, admissible lower bounds, core-symmetry
    breaking, and dominance memoization; disabling it gives pure
    enumeration (only practical for very small n). If the node budget is
    exhausted the best schedule found so far is returned with
    ``optimal=False``.
    """
    t0 = time.perf_counter()
    n = w.n
    m = w.cores.core_count
    times = w.exec_times()
    idx = build_conflict_index(w)
    attestor = w.attestor

    adj_mask = [0] * n
    for pair in w.conflicts:
        adj_mask[pair.a] |= 1 << pair.b
        adj_mask[pair.b] |= 1 << pair.a
    clique_w = _clique_weight_table(times, adj_mask) if (prune and n <= 16) else None

    static_lb = _static_lower_bound(w, clique_w) if prune else 0
    if prune:
        best_ms, best_assign = _incumbent(w)
    else:
        best_ms, best_assign = sum(times) * 2 + 1, None

    # larger processes first: finds tight schedules early, so bounds bite
    branch_order = sorted(range(n), key=lambda i: (-times[i], i))
    ends = [0] * m
    finish_of: dict[int, int] = {}
    core_of: dict[int, tuple[int, int, int]] = {}
    visited: set = set()
    nodes = 0
    exhausted = False

    def recurse(depth: int, remaining_mask: int, remaining_work: int) -> None:
        nonlocal best_ms, best_assign, nodes
        if prune and best_ms <= static_lb:
            return
        if depth == n:
            if max(ends) < best_ms:
                best_ms = max(ends)
                best_assign = dict(core_of)
            return
        if prune:
            key = (tuple(sorted(ends)), tuple(sorted(finish_of.items())))
            if key in visited:
                return
            visited.add(key)
        for pid in branch_order:
            if not remaining_mask & (1 << pid):
                continue
            if attestor and any(
                q < pid and q not in finish_of for q in idx.adjacency[pid]
            ):
                continue
            conflict_floor = 0
            for q in idx.adjacency[pid]:
                f = finish_of.get(q)
                if f is not None and f > conflict_floor:
                    conflict_floor = f
            seen_empty = False
            for k in range(m):
                if ends[k] == 0:
                    if prune and seen_empty:
                        continue  # empty cores are interchangeable
                    seen_empty = True
                nodes += 1
                if nodes > node_budget:
                    raise _BudgetExceeded
                start = max(ends[k], conflict_floor)
                finish = start + times[pid]
                next_mask = remaining_mask & ~(1 << pid)
                next_work = remaining_work - times[pid]
                if prune:
                    # append-only completions: consumed core time plus the
                    # remaining work cannot be packed below this; a clique
                    # among the remaining processes must also serialize
                    # after the current earliest core end
                    consumed = sum(ends) - ends[k] + finish
                    bound = max(finish, max(ends), math.ceil((consumed + next_work) / m))
                    if clique_w is not None and next_mask:
                        prev_end = ends[k]
                        ends[k] = finish
                        bound = max(bound, min(ends) + clique_w[next_mask])
                        ends[k] = prev_end
                    if bound >= best_ms:
                        continue
                prev_end = ends[k]
                ends[k] = finish
                finish_of[pid] = finish
                core_of[pid] = (k, start, finish)
                recurse(depth + 1, next_mask, next_work)
                ends[k] = prev_end
                del finish_of[pid]
                del core_of[pid]

    try:
        recurse(0, (1 << n) - 1, sum(times))
    except _BudgetExceeded:
        exhausted = True

    if best_assign is None:
        # pure enumeration ran out of budget before any leaf
        best_ms, best_assign = _incumbent(w)
        exhausted = True
    assignments = tuple(
        Assignment(pid, best_assign[pid][0], best_assign[pid][1], best_assign[pid][2])
        for pid in range(n)
    )
    wall_ms = (time.perf_counter() - t0) * 1000.0
    witness = Schedule(
        assignments=assignments,
        horizon_ms=sum(times),
        schedule_makespan_ms=best_ms,
        wall_time_ms=wall_ms,
    )
    return OracleResult(
        makespan_ms=best_ms,
        schedule=witness,
        optimal=not exhausted,
        nodes=nodes,
    )
