"""Schedule output types, utility accounting, and the legality validator.

validate_schedule is the single source of truth for whether a schedule is
legal: every solver in this package must emit schedules that pass it with
zero violations. All checks are exact integer comparisons.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction

from .model import (
    ProblemInstance,
    derive_batches,
    flight_time,
)

SCHEDULE_FORMAT = "msp-schedule/1"


@dataclass(frozen=True)
class Trip:
    """One depot-to-depot flight: ordered activities with explicit timings."""

    drone: int
    index: int  # r, 1-based within the drone's mission
    activity_ids: tuple[str, ...]
    arrivals: tuple[int, ...]
    departures: tuple[int, ...]
    takeoff: int
    landing: int


@dataclass(frozen=True)
class ComputeSlot:
    """Execution slot [start, end) for one batch on one drone."""

    drone: int
    activity_id: str
    batch: int  # 1-based batch index
    start: int
    end: int


@dataclass(frozen=True)
class MissionSchedule:
    drone_count: int
    trips: tuple[Trip, ...]
    slots: tuple[ComputeSlot, ...]
    dropped: tuple[str, ...]

    def trips_of(self, drone: int) -> list[Trip]:
        return sorted((t for t in self.trips if t.drone == drone),
                      key=lambda t: t.index)

    def slots_of(self, drone: int) -> list[ComputeSlot]:
        return sorted((s for s in self.slots if s.drone == drone),
                      key=lambda s: (s.start, s.activity_id, s.batch))


@dataclass(frozen=True)
class ActivityUtility:
    activity_id: str
    drone: int | None
    captured: int           # u, 0 or 1
    onboard: Fraction       # fraction of batches finished before landing
    ontime: Fraction        # fraction of batches finished by the deadline
    utility: Fraction


@dataclass(frozen=True)
class UtilityReport:
    per_activity: tuple[ActivityUtility, ...]
    total: Fraction
    per_drone: tuple[Fraction, ...]


@dataclass(frozen=True)
class EnergyBreakdown:
    """Per-trip energy split into its three components."""

    drone: int
    trip_index: int
    fly_seconds: int
    hover_seconds: int
    compute_seconds: int
    energy: Fraction
    capacity: float

    @property
    def feasible(self) -> bool:
        return self.energy <= self.capacity


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


def trip_times(trip: Trip, inst: ProblemInstance) -> tuple[int, int]:
    """Total flying and hovering seconds of a trip.

    Flying sums the leg flight times including both depot legs; hovering
    sums early arrival plus the capture window at each waypoint, i.e.
    t_end - arrival. Raises ValueError naming the activity if the stored
    arrival misses the capture start.
    """
    if not trip.activity_ids:
        return 0, 0
    acts = [inst.activity(aid) for aid in trip.activity_ids]
    pts = ([inst.depot.location] + [a.waypoint for a in acts]
           + [inst.depot.location])
    fly = sum(flight_time(pts[i], pts[i + 1], inst.fleet)
              for i in range(len(pts) - 1))
    hover = 0
    for a, arr in zip(acts, trip.arrivals):
        if arr > a.t_start:
            raise ValueError(f"activity {a.id}: arrival {arr} is after "
                             f"capture start {a.t_start}")
        hover += a.t_end - arr
    return fly, hover


def _slot_trip(slot: ComputeSlot, trips: list[Trip]) -> Trip | None:
    for t in trips:
        if slot.activity_id in t.activity_ids:
            return t
    return None


def compute_utility(sched: MissionSchedule, inst: ProblemInstance) -> UtilityReport:
    """Score a schedule: capture, on-board, and on-time completion.

    A batch counts on-board when its slot ends by the capturing trip's
    landing, and on-time when it is on-board and also ends by the
    activity's deadline.
    """
    trips_by_drone = {d: sched.trips_of(d) for d in range(sched.drone_count)}
    assigned: dict[str, Trip] = {}
    for t in sched.trips:
        for aid in t.activity_ids:
            assigned[aid] = t
    slots_by_act: dict[str, list[ComputeSlot]] = {}
    for s in sched.slots:
        slots_by_act.setdefault(s.activity_id, []).append(s)

    entries = []
    total = Fraction(0)
    per_drone = [Fraction(0)] * sched.drone_count
    for a in inst.activities:
        trip = assigned.get(a.id)
        if trip is None:
            entries.append(ActivityUtility(a.id, None, 0, Fraction(0),
                                           Fraction(0), Fraction(0)))
            continue
        bs = derive_batches(a, inst.beta, inst.fleet.proc_speed)
        onboard = 0
        ontime = 0
        for s in slots_by_act.get(a.id, []):
            if s.end <= trip.landing:
                onboard += 1
                if s.end <= a.deadline:
                    ontime += 1
        u_bar = Fraction(onboard, bs.count)
        u_bbar = Fraction(ontime, bs.count)
        util = (Fraction(a.gamma_capture)
                + u_bar * Fraction(a.gamma_onboard)
                + u_bbar * Fraction(a.gamma_ontime))
        entries.append(ActivityUtility(a.id, trip.drone, 1, u_bar, u_bbar, util))
        total += util
        per_drone[trip.drone] += util
    return UtilityReport(tuple(entries), total, tuple(per_drone))


def trip_energy_breakdown(trip: Trip, slots: list[ComputeSlot],
                          inst: ProblemInstance) -> EnergyBreakdown:
    """Energy of one trip given the compute slots charged to it."""
    fly, hover = trip_times(trip, inst)
    comp = sum(s.end - s.start for s in slots)
    energy = (Fraction(fly) * Fraction(inst.fleet.fly_power)
              + Fraction(hover) * Fraction(inst.fleet.hover_power)
              + Fraction(comp) * Fraction(inst.fleet.compute_power))
    return EnergyBreakdown(trip.drone, trip.index, fly, hover, comp,
                           energy, inst.fleet.battery)


def validate_schedule(sched: MissionSchedule,
                      inst: ProblemInstance) -> list[Violation]:
    """Check every scheduling constraint; returns all violations (empty = ok)."""
    v: list[Violation] = []
    add = lambda code, msg: v.append(Violation(code, msg))

    known = {a.id: a for a in inst.activities}
    fleet = inst.fleet

    if sched.drone_count != fleet.count:
        add("drone-count", f"schedule says {sched.drone_count} drones, "
                           f"instance has {fleet.count}")

    # Assignment structure: each activity in at most one trip of one drone.
    assigned: dict[str, Trip] = {}
    assigned_count = 0
    for t in sched.trips:
        if not 0 <= t.drone < fleet.count:
            add("drone-range", f"trip {t.index} uses unknown drone {t.drone}")
        for aid in t.activity_ids:
            if aid not in known:
                add("unknown-activity", f"trip references {aid!r}")
                continue
            if aid in assigned:
                add("duplicate-assignment",
                    f"activity {aid} appears in more than one trip")
            assigned[aid] = t
            assigned_count += 1
    dropped = set(sched.dropped)
    for aid in dropped:
        if aid not in known:
            add("unknown-activity", f"dropped list references {aid!r}")
        if aid in assigned:
            add("dropped-mismatch", f"activity {aid} both assigned and dropped")
    if assigned_count + len(dropped) != len(inst.activities):
        add("activity-count",
            f"{assigned_count} assigned + {len(dropped)} dropped != "
            f"{len(inst.activities)} activities")

    # Per-trip timing consistency.
    for t in sched.trips:
        if any(aid not in known for aid in t.activity_ids):
            continue
        acts = [known[aid] for aid in t.activity_ids]
        if not (len(t.arrivals) == len(t.departures) == len(acts)):
            add("timing-shape", f"drone {t.drone} trip {t.index}: "
                                f"timing arrays do not match activities")
            continue
        if t.takeoff < 0:
            add("takeoff-negative",
                f"drone {t.drone} trip {t.index} takes off at {t.takeoff}")
        prev_pt = inst.depot.location
        prev_dep = t.takeoff
        for a, arr, dep in zip(acts, t.arrivals, t.departures):
            leg = flight_time(prev_pt, a.waypoint, fleet)
            if arr != prev_dep + leg:
                add("arrival-mismatch",
                    f"activity {a.id}: arrival {arr} != departure {prev_dep}"
                    f" + flight {leg}")
            if arr > a.t_start:
                add("late-arrival",
                    f"activity {a.id}: arrival {arr} after capture start "
                    f"{a.t_start}")
            if dep != a.t_end:
                add("departure-mismatch",
                    f"activity {a.id}: departure {dep} != capture end "
                    f"{a.t_end}")
            prev_pt = a.waypoint
            prev_dep = dep
        leg = flight_time(prev_pt, inst.depot.location, fleet)
        if t.activity_ids and t.landing != prev_dep + leg:
            add("landing-mismatch",
                f"drone {t.drone} trip {t.index}: landing {t.landing} != "
                f"last departure {prev_dep} + flight {leg}")
        if t.landing > inst.depot.mission_horizon:
            add("past-horizon",
                f"drone {t.drone} trip {t.index} lands at {t.landing}, "
                f"horizon {inst.depot.mission_horizon}")

    # Per-drone trip sequencing and trip-count limit.
    for d in range(sched.drone_count):
        trips = sched.trips_of(d)
        if len(trips) > inst.depot.max_trips:
            add("too-many-trips",
                f"drone {d} flies {len(trips)} trips, max "
                f"{inst.depot.max_trips}")
        for t1, t2 in zip(trips, trips[1:]):
            if t1.index == t2.index:
                add("trip-index", f"drone {d} has two trips with index "
                                  f"{t1.index}")
            if t1.landing > t2.takeoff:
                add("trip-overlap",
                    f"drone {d}: trip {t1.index} lands {t1.landing} after "
                    f"trip {t2.index} takeoff {t2.takeoff}")

    # Compute slots.
    seen_slots: set[tuple[str, int]] = set()
    for s in sched.slots:
        a = known.get(s.activity_id)
        if a is None:
            add("slot-unknown-activity", f"slot references {s.activity_id!r}")
            continue
        trip = assigned.get(s.activity_id)
        if trip is None or trip.drone != s.drone:
            add("slot-not-captured",
                f"slot for {s.activity_id} batch {s.batch} on drone "
                f"{s.drone}, but the activity is not captured there")
            continue
        bs = derive_batches(a, inst.beta, fleet.proc_speed)
        if not 1 <= s.batch <= bs.count:
            add("slot-bad-batch",
                f"activity {s.activity_id} has {bs.count} batches, slot "
                f"names batch {s.batch}")
            continue
        if (s.activity_id, s.batch) in seen_slots:
            add("duplicate-slot",
                f"batch {s.batch} of {s.activity_id} has two slots")
        seen_slots.add((s.activity_id, s.batch))
        if s.end - s.start != bs.runtime_per_batch:
            add("slot-length",
                f"slot for {s.activity_id} batch {s.batch} is "
                f"{s.end - s.start} s, runtime is {bs.runtime_per_batch} s")
        if s.start < bs.available_at[s.batch - 1]:
            add("capture-incomplete",
                f"batch {s.batch} of {s.activity_id} starts at {s.start} "
                f"before capture completes at {bs.available_at[s.batch - 1]}")
        if s.end > trip.landing:
            add("slot-after-landing",
                f"batch {s.batch} of {s.activity_id} ends {s.end} after "
                f"trip landing {trip.landing}")

    # Per-activity batch ordering among scheduled batches.
    by_act: dict[str, list[ComputeSlot]] = {}
    for s in sched.slots:
        by_act.setdefault(s.activity_id, []).append(s)
    for aid, slots in by_act.items():
        slots = sorted(slots, key=lambda s: s.batch)
        for s1, s2 in zip(slots, slots[1:]):
            if s1.batch != s2.batch and s1.end > s2.start:
                add("batch-order",
                    f"{aid}: batch {s1.batch} ends {s1.end} after batch "
                    f"{s2.batch} starts {s2.start}")

    # Per-drone slot disjointness, across all trips of the drone.
    for d in range(sched.drone_count):
        slots = sched.slots_of(d)
        for s1, s2 in zip(slots, slots[1:]):
            if s1.end > s2.start and s1.start < s2.end and s1 != s2:
                add("slot-overlap",
                    f"drone {d}: slot {s1.activity_id}/{s1.batch} "
                    f"[{s1.start},{s1.end}) overlaps "
                    f"{s2.activity_id}/{s2.batch} [{s2.start},{s2.end})")

    # Per-trip energy within battery capacity.
    if not any(x.code in ("arrival-mismatch", "late-arrival",
                          "departure-mismatch", "unknown-activity",
                          "timing-shape") for x in v):
        for t in sched.trips:
            charged = [s for s in sched.slots
                       if s.activity_id in t.activity_ids
                       and assigned.get(s.activity_id) is t]
            eb = trip_energy_breakdown(t, charged, inst)
            if not eb.feasible:
                add("energy-exceeded",
                    f"drone {t.drone} trip {t.index} needs {float(eb.energy):.0f} J, "
                    f"capacity {float(eb.capacity):.0f} J")
    return v


# ---------------------------------------------------------------------------
# File formats


def schedule_to_dict(sched: MissionSchedule) -> dict:
    drones = []
    for d in range(sched.drone_count):
        drones.append({
            "drone": d,
            "trips": [
                {
                    "index": t.index,
                    "takeoff": t.takeoff,
                    "landing": t.landing,
                    "activities": list(t.activity_ids),
                    "arrivals": list(t.arrivals),
                    "departures": list(t.departures),
                }
                for t in sched.trips_of(d)
            ],
            "slots": [
                {
                    "activity": s.activity_id,
                    "batch": s.batch,
                    "start": s.start,
                    "end": s.end,
                }
                for s in sched.slots_of(d)
            ],
        })
    return {
        "format": SCHEDULE_FORMAT,
        "drone_count": sched.drone_count,
        "drones": drones,
        "dropped": sorted(sched.dropped),
    }


def schedule_from_dict(doc: dict) -> MissionSchedule:
    fmt = doc.get("format")
    if fmt != SCHEDULE_FORMAT:
        raise ValueError(f"unsupported schedule format {fmt!r}, "
                         f"expected {SCHEDULE_FORMAT!r}")
    trips = []
    slots = []
    for dr in doc["drones"]:
        d = int(dr["drone"])
        for t in dr["trips"]:
            trips.append(Trip(
                drone=d,
                index=int(t["index"]),
                activity_ids=tuple(str(x) for x in t["activities"]),
                arrivals=tuple(int(x) for x in t["arrivals"]),
                departures=tuple(int(x) for x in t["departures"]),
                takeoff=int(t["takeoff"]),
                landing=int(t["landing"]),
            ))
        for s in dr["slots"]:
            slots.append(ComputeSlot(
                drone=d,
                activity_id=str(s["activity"]),
                batch=int(s["batch"]),
                start=int(s["start"]),
                end=int(s["end"]),
            ))
    return MissionSchedule(
        drone_count=int(doc["drone_count"]),
        trips=tuple(trips),
        slots=tuple(slots),
        dropped=tuple(str(x) for x in doc["dropped"]),
    )


def save_schedule(sched: MissionSchedule, path) -> None:
    with open(path, "w") as fh:
        json.dump(schedule_to_dict(sched), fh, indent=1)
        fh.write("\n")


def load_schedule(path) -> MissionSchedule:
    with open(path) as fh:
        return schedule_from_dict(json.load(fh))


def report_to_csv(report: UtilityReport, path) -> None:
    """Write the per-activity completion report (activity_id,u,u_bar,u_bbar,U)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["activity_id", "u", "u_bar", "u_bbar", "U"])
        for e in report.per_activity:
            w.writerow([e.activity_id, e.captured, float(e.onboard),
                        float(e.ontime), float(e.utility)])
