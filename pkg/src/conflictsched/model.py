"""Domain types, workload file I/O, and the synthetic workload generator.

A workload is the scheduler's complete input: an ordered list of processes
(one per transaction), the set of pairwise conflicts between them, a core
profile, and the attestor flag. Workloads are immutable values; the
generator is a pure function of its arguments, so a fixed seed always
reproduces the same workload byte for byte.

Workload files are JSON (UTF-8) with the top-level keys ``processes``,
``conflicts``, ``cores``, ``attestor``, and ``meta``. Unknown keys are
rejected; see `load_workload` for the exact shape.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

__all__ = [
    "OPS_PER_MS",
    "ConflictModel",
    "ConflictPair",
    "CoreProfile",
    "GasTimeModel",
    "Process",
    "TimeDistribution",
    "Weights",
    "Workload",
    "WorkloadValidationError",
    "estimate_exec_time",
    "generate_workload",
    "load_workload",
    "save_workload",
]

# ops are coupled to execution time so that energy accounting stays
# well-defined without a second synthetic distribution
OPS_PER_MS = 1000

# edge probability among conflict participants, on top of the perfect
# matching; controls how hard the conflicting subset serializes. 0.12 keeps
# participant components sparse enough that free reordering beats
# order-preserving execution on every benchmark row while speedups still
# degrade with the conflict rate
PARTICIPANT_EXTRA_EDGE_RATE = 0.12


class WorkloadValidationError(ValueError):
    """A workload value or file violates an invariant; names the field."""


class ConflictModel(str, Enum):
    """How the generator turns a conflict rate into conflict pairs.

    PAIRWISE: every unordered pair conflicts independently with
    probability ``rate`` (an Erdos-Renyi random graph on the processes).
    PARTICIPATION: ``rate`` is the fraction of processes involved in at
    least one conflict; edges are wired among those participants only.
    """

    PAIRWISE = "PAIRWISE"
    PARTICIPATION = "PARTICIPATION"


@dataclass(frozen=True, slots=True)
class Process:
    """One schedulable unit: a transaction's function call."""

    id: int
    exec_time_ms: int
    op_count: int

    def __post_init__(self) -> None:
        if self.id < 0:
            raise WorkloadValidationError(f"process id must be >= 0, got {self.id}")
        if self.exec_time_ms < 1:
            raise WorkloadValidationError(
                f"processes[{self.id}].execTimeMs must be >= 1, got {self.exec_time_ms}"
            )
        if self.op_count < 1:
            raise WorkloadValidationError(
                f"processes[{self.id}].opCount must be >= 1, got {self.op_count}"
            )


@dataclass(frozen=True, slots=True, order=True)
class ConflictPair:
    """An unordered conflict between two processes, stored as a < b."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a >= self.b:
            raise WorkloadValidationError(
                f"conflict pair ({self.a}, {self.b}) is not canonical (need a < b)"
            )

    @classmethod
    def of(cls, i: int, j: int) -> ConflictPair:
        """Canonicalize an unordered pair."""
        if i == j:
            raise WorkloadValidationError(f"conflict pair ({i}, {j}) is self-referential")
        return cls(min(i, j), max(i, j))


@dataclass(frozen=True, slots=True)
class CoreProfile:
    """Homogeneous core pool: one cost profile applies to every core."""

    core_count: int
    cost_per_op: float = 0.0
    cost_per_idle_ms: float = 0.0

    def __post_init__(self) -> None:
        if self.core_count < 1:
            raise WorkloadValidationError(f"cores.count must be >= 1, got {self.core_count}")
        if self.cost_per_op < 0:
            raise WorkloadValidationError("cores.costPerOp must be >= 0")
        if self.cost_per_idle_ms < 0:
            raise WorkloadValidationError("cores.costPerIdleMs must be >= 0")


@dataclass(frozen=True, slots=True)
class Weights:
    """Objective weights; the cost weight is derived as 1 - time weight."""

    alpha_time: float
    alpha_cost: float = field(init=False)

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha_time <= 1.0:
            raise WorkloadValidationError(
                f"alphaTime must be in [0, 1], got {self.alpha_time}"
            )
        object.__setattr__(self, "alpha_cost", 1.0 - self.alpha_time)


@dataclass(frozen=True, slots=True)
class TimeDistribution:
    """Per-process execution time distribution (integer milliseconds)."""

    kind: str
    low: int = 1
    high: int = 15

    def __post_init__(self) -> None:
        if self.kind not in ("uniform", "constant"):
            raise WorkloadValidationError(f"unknown time distribution {self.kind!r}")
        if self.low < 1:
            raise WorkloadValidationError("time distribution low must be >= 1")
        if self.high < self.low:
            raise WorkloadValidationError("time distribution high must be >= low")

    @classmethod
    def uniform(cls, low: int = 1, high: int = 15) -> TimeDistribution:
        return cls("uniform", low, high)

    @classmethod
    def constant(cls, value: int) -> TimeDistribution:
        return cls("constant", value, value)

    @property
    def mean_ms(self) -> float:
        return (self.low + self.high) / 2

    def describe(self) -> str:
        if self.kind == "constant":
            return f"constant[{self.low}]"
        return f"uniform[{self.low},{self.high}]"

    def draw(self, rng: random.Random) -> int:
        if self.kind == "constant":
            return self.low
        return rng.randint(self.low, self.high)


DEFAULT_TIME_DIST = TimeDistribution.uniform(1, 15)


@dataclass(frozen=True)
class Workload:
    """Scheduler input: processes in original order plus conflicts and cores.

    The process list order is canonical: ``processes[i].id == i``, and that
    index is the original block position used by attestor-mode ordering.
    Conflict pairs are normalized to canonical form (a < b), deduplicated,
    and sorted at construction.
    """

    processes: tuple[Process, ...]
    conflicts: tuple[ConflictPair, ...]
    cores: CoreProfile
    attestor: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for position, proc in enumerate(self.processes):
            if proc.id != position:
                raise WorkloadValidationError(
                    f"processes[{position}].id is {proc.id}; ids must be 0..n-1 in order"
                )
        n = len(self.processes)
        for pair in self.conflicts:
            for pid in (pair.a, pair.b):
                if pid >= n:
                    raise WorkloadValidationError(
                        f"conflict pair ({pair.a}, {pair.b}) references unknown process id {pid}"
                    )
        object.__setattr__(self, "conflicts", tuple(sorted(set(self.conflicts))))

    @property
    def n(self) -> int:
        return len(self.processes)

    def exec_times(self) -> tuple[int, ...]:
        return tuple(p.exec_time_ms for p in self.processes)

    def with_cores(self, cores: CoreProfile) -> Workload:
        return replace(self, cores=cores)

    def with_attestor(self, attestor: bool) -> Workload:
        return replace(self, attestor=attestor)


@dataclass(frozen=True, slots=True)
class GasTimeModel:
    """Linear gas-to-time estimator coefficients."""

    slope: float
    intercept: float = 0.0

    def __post_init__(self) -> None:
        if self.slope <= 0:
            raise WorkloadValidationError(f"slope must be > 0, got {self.slope}")


def _round_half_up(x: float) -> int:
    # small epsilon so products like 50 * 0.15 land on the intended integer
    return math.floor(x + 0.5 + 1e-9)


def estimate_exec_time(gas_estimate: int, model: GasTimeModel) -> int:
    """Map a gas estimate to whole milliseconds, clamped to at least 1."""
    if gas_estimate < 0:
        raise WorkloadValidationError(f"gasEstimate must be >= 0, got {gas_estimate}")
    return max(1, _round_half_up(model.slope * gas_estimate + model.intercept))


def _pairwise_conflicts(n: int, rate: float, rng: random.Random) -> list[ConflictPair]:
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < rate:
                pairs.append(ConflictPair(i, j))
    return pairs


def _participation_conflicts(
    n: int, rate: float, rng: random.Random, extra_edge_rate: float
) -> list[ConflictPair]:
    target = min(n, _round_half_up(n * rate))
    if target < 2:
        # a single participant cannot form a pair; treat as conflict-free
        return []
    participants = rng.sample(range(n), target)
    edges = set()
    # perfect-matching pass guarantees every participant has a conflict
    for k in range(0, target - 1, 2):
        edges.add(ConflictPair.of(participants[k], participants[k + 1]))
    if target % 2 == 1:
        lone = participants[-1]
        edges.add(ConflictPair.of(lone, rng.choice(participants[:-1])))
    # extra edges densify the participant subgraph; non-participants stay clean
    ordered = sorted(participants)
    for i_pos in range(len(ordered)):
        for j_pos in range(i_pos + 1, len(ordered)):
            if rng.random() < extra_edge_rate:
                edges.add(ConflictPair(ordered[i_pos], ordered[j_pos]))
    return sorted(edges)


def generate_workload(
    n: int,
    conflict_rate: float,
    *,
    model: ConflictModel = ConflictModel.PARTICIPATION,
    seed: int = 0,
    cores: CoreProfile | None = None,
    attestor: bool = False,
    time_dist: TimeDistribution = DEFAULT_TIME_DIST,
    ops_per_ms: int = OPS_PER_MS,
    extra_edge_rate: float | None = None,
) -> Workload:
    """Generate a synthetic benchmark workload, deterministic in ``seed``.

    PAIRWISE draws every unordered pair independently at ``conflict_rate``.
    PARTICIPATION makes exactly round(n * conflict_rate) processes conflict
    participants (a random matching plus extra random edges among them);
    everything else is conflict-free.
    """
    if n < 1:
        raise WorkloadValidationError(f"n must be >= 1, got {n}")
    if not 0.0 <= conflict_rate <= 1.0:
        raise WorkloadValidationError(
            f"conflictRate must be in [0, 1], got {conflict_rate}"
        )
    if extra_edge_rate is None:
        extra_edge_rate = PARTICIPANT_EXTRA_EDGE_RATE
    cores = cores if cores is not None else CoreProfile(core_count=2)
    rng = random.Random(seed)
    times = [time_dist.draw(rng) for _ in range(n)]
    processes = tuple(
        Process(id=i, exec_time_ms=t, op_count=t * ops_per_ms)
        for i, t in enumerate(times)
    )
    if model is ConflictModel.PAIRWISE:
        pairs = _pairwise_conflicts(n, conflict_rate, rng)
    else:
        pairs = _participation_conflicts(n, conflict_rate, rng, extra_edge_rate)
    meta = {
        "seed": seed,
        "conflictRate": conflict_rate,
        "conflictModel": model.value,
        "timeDist": time_dist.describe(),
        "opsPerMs": ops_per_ms,
    }
    return Workload(
        processes=processes,
        conflicts=tuple(pairs),
        cores=cores,
        attestor=attestor,
        meta=meta,
    )


def _workload_to_dict(w: Workload) -> dict:
    return {
        "processes": [
            {"id": p.id, "execTimeMs": p.exec_time_ms, "opCount": p.op_count}
            for p in w.processes
        ],
        "conflicts": [[c.a, c.b] for c in w.conflicts],
        "cores": {
            "count": w.cores.core_count,
            "costPerOp": w.cores.cost_per_op,
            "costPerIdleMs": w.cores.cost_per_idle_ms,
        },
        "attestor": w.attestor,
        "meta": w.meta,
    }


def save_workload(w: Workload, path: str | Path) -> None:
    """Write a workload file; byte-stable for a fixed workload value."""
    text = json.dumps(_workload_to_dict(w), indent=2) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def _require_keys(obj: dict, allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise WorkloadValidationError(
            f"{where} has unknown keys: {sorted(unknown)}"
        )
    missing = allowed - set(obj)
    if missing:
        raise WorkloadValidationError(f"{where} is missing keys: {sorted(missing)}")


def _require_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise WorkloadValidationError(f"{where} must be an integer, got {value!r}")
    return value


def _require_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise WorkloadValidationError(f"{where} must be a number, got {value!r}")
    return float(value)


def load_workload(path: str | Path) -> Workload:
    """Read and validate a workload file.

    Raises ``json.JSONDecodeError`` on malformed JSON and
    `WorkloadValidationError` (naming the offending field) on schema or
    invariant violations. Conflict pairs are canonicalized on load, so the
    file may list them in either order.
    """
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise WorkloadValidationError("top-level value must be an object")
    _require_keys(raw, {"processes", "conflicts", "cores", "attestor", "meta"}, "workload")

    if not isinstance(raw["processes"], list):
        raise WorkloadValidationError("processes must be an array")
    processes = []
    for pos, entry in enumerate(raw["processes"]):
        if not isinstance(entry, dict):
            raise WorkloadValidationError(f"processes[{pos}] must be an object")
        _require_keys(entry, {"id", "execTimeMs", "opCount"}, f"processes[{pos}]")
        processes.append(
            Process(
                id=_require_int(entry["id"], f"processes[{pos}].id"),
                exec_time_ms=_require_int(entry["execTimeMs"], f"processes[{pos}].execTimeMs"),
                op_count=_require_int(entry["opCount"], f"processes[{pos}].opCount"),
            )
        )

    if not isinstance(raw["conflicts"], list):
        raise WorkloadValidationError("conflicts must be an array")
    pairs = []
    for pos, entry in enumerate(raw["conflicts"]):
        if not isinstance(entry, list) or len(entry) != 2:
            raise WorkloadValidationError(f"conflicts[{pos}] must be a pair [a, b]")
        a = _require_int(entry[0], f"conflicts[{pos}][0]")
        b = _require_int(entry[1], f"conflicts[{pos}][1]")
        if a == b:
            raise WorkloadValidationError(f"conflicts[{pos}] pairs process {a} with itself")
        if a < 0 or b < 0:
            raise WorkloadValidationError(f"conflicts[{pos}] has a negative process id")
        pairs.append(ConflictPair.of(a, b))

    if not isinstance(raw["cores"], dict):
        raise WorkloadValidationError("cores must be an object")
    _require_keys(raw["cores"], {"count", "costPerOp", "costPerIdleMs"}, "cores")
    cores = CoreProfile(
        core_count=_require_int(raw["cores"]["count"], "cores.count"),
        cost_per_op=_require_number(raw["cores"]["costPerOp"], "cores.costPerOp"),
        cost_per_idle_ms=_require_number(raw["cores"]["costPerIdleMs"], "cores.costPerIdleMs"),
    )

    if not isinstance(raw["attestor"], bool):
        raise WorkloadValidationError("attestor must be a boolean")
    if not isinstance(raw["meta"], dict):
        raise WorkloadValidationError("meta must be an object")

    return Workload(
        processes=tuple(processes),
        conflicts=tuple(pairs),
        cores=cores,
        attestor=raw["attestor"],
        meta=raw["meta"],
    )
