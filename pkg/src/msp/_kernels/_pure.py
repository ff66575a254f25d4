"""Pure-Python twin of the compiled route-evaluation kernels.

Timing model: a trip takes off as late as possible (the drone arrives at
its first waypoint exactly at the capture start), flies directly between
consecutive waypoints, hovers through any early arrival plus the capture
window, and departs each waypoint the moment capture ends. This is the
energy-minimal timing for a fixed visit sequence, so every caller
(heuristics, exact solver, feasibility tests) evaluates sequences this way.
"""

OK = 0
LATE_ARRIVAL = 1  # some waypoint cannot be reached by its capture start
PAST_HORIZON = 2  # the trip would land after the mission horizon


def eval_route(order, t_start, t_end, flight, horizon):
    """Evaluate one visit sequence.

    order: activity row indices (row 0 of `flight` is the depot).
    Returns (status, fly_seconds, hover_seconds); fly/hover are only
    meaningful when status == OK. An empty sequence is a zero-cost trip.
    """
    n = len(order)
    if n == 0:
        return OK, 0, 0
    first = order[0]
    leg = int(flight[0, first])
    if leg > int(t_start[first]):  # takeoff would predate the mission epoch
        return LATE_ARRIVAL, 0, 0
    fly = leg
    hover = int(t_end[first]) - int(t_start[first])
    depart = int(t_end[first])
    prev = first
    for i in range(1, n):
        cur = order[i]
        leg = int(flight[prev, cur])
        arrive = depart + leg
        if arrive > int(t_start[cur]):
            return LATE_ARRIVAL, 0, 0
        fly += leg
        hover += int(t_end[cur]) - arrive
        depart = int(t_end[cur])
        prev = cur
    leg = int(flight[prev, 0])
    fly += leg
    if depart + leg > horizon:
        return PAST_HORIZON, 0, 0
    return OK, fly, hover


def _eval_two_segments(seg1, lo1, hi1, seg2, lo2, hi2, t_start, t_end, flight,
                       horizon):
    """Evaluate the concatenation seg1[lo1:hi1] + seg2[lo2:hi2] as one route."""
    prev = 0
    depart = 0
    fly = 0
    hover = 0
    started = False
    for seg, lo, hi in ((seg1, lo1, hi1), (seg2, lo2, hi2)):
        for i in range(lo, hi):
            cur = int(seg[i])
            leg = int(flight[prev, cur])
            if not started:
                if leg > int(t_start[cur]):
                    return LATE_ARRIVAL, 0, 0
                arrive = int(t_start[cur])
                started = True
            else:
                arrive = depart + leg
                if arrive > int(t_start[cur]):
                    return LATE_ARRIVAL, 0, 0
            fly += leg
            hover += int(t_end[cur]) - arrive
            depart = int(t_end[cur])
            prev = cur
    if not started:
        return OK, 0, 0
    leg = int(flight[prev, 0])
    fly += leg
    if depart + leg > horizon:
        return PAST_HORIZON, 0, 0
    return OK, fly, hover


def eval_tail_swap(route_a, route_b, cut_a, cut_b, t_start, t_end, flight,
                   horizon):
    """Evaluate the 2-opt* tail exchange of two routes.

    New route A = route_a[:cut_a] + route_b[cut_b:], new route B the
    complement. Returns (status, fly_a, hover_a, fly_b, hover_b) where
    status is OK, or LATE_ARRIVAL/PAST_HORIZON of the first failing
    new route (A checked first).
    """
    st, fa, ha = _eval_two_segments(route_a, 0, cut_a, route_b, cut_b,
                                    len(route_b), t_start, t_end, flight,
                                    horizon)
    if st != OK:
        return st, 0, 0, 0, 0
    st, fb, hb = _eval_two_segments(route_b, 0, cut_b, route_a, cut_a,
                                    len(route_a), t_start, t_end, flight,
                                    horizon)
    if st != OK:
        return st, 0, 0, 0, 0
    return OK, fa, ha, fb, hb
