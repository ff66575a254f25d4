"""Problem-input types: depot, fleet, activities, batching, and instance IO.

All times are integer seconds from the mission epoch (t=0), distances are
meters, energies joules. Values are immutable after construction; invariant
checking is collected by :func:`validate_instance` rather than raised from
constructors, so malformed files can be fully diagnosed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

INSTANCE_FORMAT = "msp-instance/1"

Point = tuple[float, float, float]


def _point(p: Sequence[float]) -> Point:
    x, y, z = p
    return (float(x), float(y), float(z))


@dataclass(frozen=True)
class DepotConfig:
    """Depot location and mission-wide limits."""

    location: Point = (0.0, 0.0, 0.0)
    mission_horizon: int = 14400
    max_trips: int = 1

    def __post_init__(self):
        object.__setattr__(self, "location", _point(self.location))


@dataclass(frozen=True)
class DroneSpec:
    """One homogeneous fleet: count plus per-drone performance numbers.

    speed m/s, powers J/s, battery J, proc_speed FLOP/s.
    """

    count: int
    speed: float
    fly_power: float
    hover_power: float
    compute_power: float
    battery: float
    proc_speed: float


@dataclass(frozen=True)
class Activity:
    """A capture-and-process task at one waypoint.

    Field names follow the msp-instance/1 wire format: capture window
    [t_start, t_end], total compute load kappa (FLOP), soft deadline for
    on-time processing, and the three utility values.
    """

    id: str
    waypoint: Point
    t_start: int
    t_end: int
    kappa: float
    deadline: int
    gamma_capture: float
    gamma_onboard: float
    gamma_ontime: float

    def __post_init__(self):
        object.__setattr__(self, "waypoint", _point(self.waypoint))


@dataclass(frozen=True)
class BatchSet:
    """Derived batching of one activity's capture window.

    cost_per_batch is kept as an exact rational (kappa/count) so that
    summing per-batch costs never accumulates rounding; only the per-batch
    runtime is ceiling-rounded to integer seconds.
    """

    activity_id: str
    duration: int
    count: int
    cost_per_batch: Fraction
    runtime_per_batch: int
    available_at: tuple[int, ...]


@dataclass(frozen=True)
class ProblemInstance:
    """The full scheduling input: depot, fleet, activities, batch duration."""

    depot: DepotConfig
    fleet: DroneSpec
    activities: tuple[Activity, ...]
    beta: int

    def __post_init__(self):
        object.__setattr__(self, "activities", tuple(self.activities))

    def activity(self, activity_id: str) -> Activity:
        for a in self.activities:
            if a.id == activity_id:
                return a
        raise KeyError(activity_id)


def flight_time(p: Sequence[float], q: Sequence[float], spec: DroneSpec) -> int:
    """Seconds to fly between two points at the spec's constant speed.

    Euclidean distance, ceiling-rounded to the integer-second grid.
    Symmetric, and zero only for coincident points.
    """
    if spec.speed <= 0:
        raise ValueError("drone speed must be positive")
    dist = math.dist(_point(p), _point(q))
    return math.ceil(dist / spec.speed)


def derive_batches(activity: Activity, beta: int, proc_speed: float) -> BatchSet:
    """Split an activity's capture window into beta-second batches.

    Batch k (1-indexed) finishes capturing at t_start + k*beta, except the
    last batch which finishes at t_end. Per-batch cost is the exact
    rational kappa/count; per-batch runtime is ceil(cost/proc_speed),
    at least 1 s for any nonzero load.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    if proc_speed <= 0:
        raise ValueError("proc_speed must be positive")
    window = activity.t_end - activity.t_start
    if window <= 0:
        raise ValueError(f"activity {activity.id}: empty capture window")
    count = -(-window // beta)
    cost = Fraction(activity.kappa) / count
    runtime = math.ceil(cost / Fraction(proc_speed))
    available = tuple(
        min(activity.t_start + k * beta, activity.t_end)
        for k in range(1, count + 1)
    )
    return BatchSet(
        activity_id=activity.id,
        duration=beta,
        count=count,
        cost_per_batch=cost,
        runtime_per_batch=runtime,
        available_at=available,
    )


def _check_int(value, what: str, out: list[str]):
    if not (isinstance(value, int) or (isinstance(value, float) and value.is_integer())):
        out.append(f"{what} must be an integer number of seconds, got {value!r}")


def validate_instance(inst: ProblemInstance) -> list[str]:
    """Check every type invariant; returns all violations (empty = ok)."""
    v: list[str] = []
    d = inst.depot
    if d.mission_horizon <= 0:
        v.append(f"mission_horizon must be positive, got {d.mission_horizon}")
    if d.max_trips < 1:
        v.append(f"max_trips must be at least 1, got {d.max_trips}")
    _check_int(d.mission_horizon, "mission_horizon", v)

    f = inst.fleet
    for name in ("count", "speed", "fly_power", "hover_power",
                 "compute_power", "battery", "proc_speed"):
        if getattr(f, name) <= 0:
            v.append(f"fleet.{name} must be positive, got {getattr(f, name)}")

    if inst.beta <= 0:
        v.append(f"beta must be positive, got {inst.beta}")

    seen: set[str] = set()
    for a in inst.activities:
        if a.id in seen:
            v.append(f"duplicate activity id {a.id!r}")
        seen.add(a.id)
        if a.t_start >= a.t_end:
            v.append(f"activity {a.id}: empty capture window "
                     f"(t_start={a.t_start} >= t_end={a.t_end})")
        if a.deadline < a.t_end:
            v.append(f"activity {a.id}: deadline precedes capture end "
                     f"({a.deadline} < {a.t_end})")
        if a.kappa < 0:
            v.append(f"activity {a.id}: negative compute load {a.kappa}")
        for name in ("gamma_capture", "gamma_onboard", "gamma_ontime"):
            if getattr(a, name) < 0:
                v.append(f"activity {a.id}: {name} must be >= 0")
        for name in ("t_start", "t_end", "deadline"):
            _check_int(getattr(a, name), f"activity {a.id}: {name}", v)
    return v


class InstanceTables:
    """Integer lookup tables for the route kernels.

    Row/column 0 is the depot; activity i (0-based position in
    inst.activities) maps to row i+1. Built once per instance and shared
    by every scheduler.
    """

    def __init__(self, inst: ProblemInstance):
        acts = inst.activities
        n = len(acts)
        pts = [inst.depot.location] + [a.waypoint for a in acts]
        flight = np.zeros((n + 1, n + 1), dtype=np.int64)
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                ft = flight_time(pts[i], pts[j], inst.fleet)
                flight[i, j] = ft
                flight[j, i] = ft
        t_start = np.zeros(n + 1, dtype=np.int64)
        t_end = np.zeros(n + 1, dtype=np.int64)
        for i, a in enumerate(acts, start=1):
            t_start[i] = a.t_start
            t_end[i] = a.t_end
        self.instance = inst
        self.flight = flight
        self.t_start = t_start
        self.t_end = t_end
        self.horizon = inst.depot.mission_horizon
        self.row_of = {a.id: i for i, a in enumerate(acts, start=1)}
        self.activity_of = {i: a for i, a in enumerate(acts, start=1)}
        self.batches = {
            a.id: derive_batches(a, inst.beta, inst.fleet.proc_speed)
            for a in acts if a.t_start < a.t_end
        }


def instance_to_dict(inst: ProblemInstance) -> dict:
    return {
        "format": INSTANCE_FORMAT,
        "depot": {
            "location": list(inst.depot.location),
            "mission_horizon": inst.depot.mission_horizon,
            "max_trips": inst.depot.max_trips,
        },
        "fleet": {
            "count": inst.fleet.count,
            "speed": inst.fleet.speed,
            "fly_power": inst.fleet.fly_power,
            "hover_power": inst.fleet.hover_power,
            "compute_power": inst.fleet.compute_power,
            "battery": inst.fleet.battery,
            "proc_speed": inst.fleet.proc_speed,
        },
        "beta": inst.beta,
        "activities": [
            {
                "id": a.id,
                "waypoint": list(a.waypoint),
                "t_start": a.t_start,
                "t_end": a.t_end,
                "kappa": a.kappa,
                "deadline": a.deadline,
                "gamma_capture": a.gamma_capture,
                "gamma_onboard": a.gamma_onboard,
                "gamma_ontime": a.gamma_ontime,
            }
            for a in inst.activities
        ],
    }


def instance_from_dict(doc: dict) -> ProblemInstance:
    fmt = doc.get("format")
    if fmt != INSTANCE_FORMAT:
        raise ValueError(f"unsupported instance format {fmt!r}, "
                         f"expected {INSTANCE_FORMAT!r}")
    dep = doc["depot"]
    fl = doc["fleet"]
    return ProblemInstance(
        depot=DepotConfig(
            location=tuple(dep["location"]),
            mission_horizon=int(dep["mission_horizon"]),
            max_trips=int(dep["max_trips"]),
        ),
        fleet=DroneSpec(
            count=int(fl["count"]),
            speed=fl["speed"],
            fly_power=fl["fly_power"],
            hover_power=fl["hover_power"],
            compute_power=fl["compute_power"],
            battery=fl["battery"],
            proc_speed=fl["proc_speed"],
        ),
        activities=tuple(
            Activity(
                id=str(a["id"]),
                waypoint=tuple(a["waypoint"]),
                t_start=int(a["t_start"]),
                t_end=int(a["t_end"]),
                kappa=a["kappa"],
                deadline=int(a["deadline"]),
                gamma_capture=a["gamma_capture"],
                gamma_onboard=a["gamma_onboard"],
                gamma_ontime=a["gamma_ontime"],
            )
            for a in doc["activities"]
        ),
        beta=int(doc["beta"]),
    )


def save_instance(inst: ProblemInstance, path) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_dict(inst), fh, indent=1)
        fh.write("\n")


def load_instance(path) -> ProblemInstance:
    with open(path) as fh:
        return instance_from_dict(json.load(fh))
