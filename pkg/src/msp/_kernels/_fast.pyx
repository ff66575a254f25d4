# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of msp._kernels._pure; see that module for the timing model.

Results must be bit-identical to the pure backend (enforced by tests).
"""

OK = 0
LATE_ARRIVAL = 1
PAST_HORIZON = 2


def eval_route(order, const long long[:] t_start, const long long[:] t_end,
               const long long[:, ::1] flight, long long horizon):
    cdef Py_ssize_t n = len(order)
    if n == 0:
        return 0, 0, 0
    cdef Py_ssize_t first = order[0]
    cdef long long leg = flight[0, first]
    if leg > t_start[first]:
        return 1, 0, 0
    cdef long long fly = leg
    cdef long long hover = t_end[first] - t_start[first]
    cdef long long depart = t_end[first]
    cdef long long arrive
    cdef Py_ssize_t prev = first
    cdef Py_ssize_t cur, i
    for i in range(1, n):
        cur = order[i]
        leg = flight[prev, cur]
        arrive = depart + leg
        if arrive > t_start[cur]:
            return 1, 0, 0
        fly += leg
        hover += t_end[cur] - arrive
        depart = t_end[cur]
        prev = cur
    leg = flight[prev, 0]
    fly += leg
    if depart + leg > horizon:
        return 2, 0, 0
    return 0, fly, hover


cdef int _walk_segment(const long long[:] seg, Py_ssize_t lo, Py_ssize_t hi,
                       const long long[:] t_start, const long long[:] t_end,
                       const long long[:, ::1] flight,
                       Py_ssize_t* prev, long long* depart,
                       long long* fly, long long* hover,
                       bint* started) noexcept:
    cdef Py_ssize_t cur, i
    cdef long long leg, arrive
    for i in range(lo, hi):
        cur = seg[i]
        leg = flight[prev[0], cur]
        if not started[0]:
            if leg > t_start[cur]:
                return 1
            arrive = t_start[cur]
            started[0] = True
        else:
            arrive = depart[0] + leg
            if arrive > t_start[cur]:
                return 1
        fly[0] += leg
        hover[0] += t_end[cur] - arrive
        depart[0] = t_end[cur]
        prev[0] = cur
    return 0


cdef int _eval_two_segments(const long long[:] seg1, Py_ssize_t lo1, Py_ssize_t hi1,
                            const long long[:] seg2, Py_ssize_t lo2, Py_ssize_t hi2,
                            const long long[:] t_start, const long long[:] t_end,
                            const long long[:, ::1] flight, long long horizon,
                            long long* fly_out, long long* hover_out) noexcept:
    cdef Py_ssize_t prev = 0
    cdef long long depart = 0
    cdef long long fly = 0
    cdef long long hover = 0
    cdef long long leg
    cdef bint started = False
    if _walk_segment(seg1, lo1, hi1, t_start, t_end, flight,
                     &prev, &depart, &fly, &hover, &started) != 0:
        return 1
    if _walk_segment(seg2, lo2, hi2, t_start, t_end, flight,
                     &prev, &depart, &fly, &hover, &started) != 0:
        return 1
    if not started:
        fly_out[0] = 0
        hover_out[0] = 0
        return 0
    leg = flight[prev, 0]
    fly += leg
    if depart + leg > horizon:
        return 2
    fly_out[0] = fly
    hover_out[0] = hover
    return 0


def eval_tail_swap(const long long[:] route_a, const long long[:] route_b,
                   Py_ssize_t cut_a, Py_ssize_t cut_b,
                   const long long[:] t_start, const long long[:] t_end,
                   const long long[:, ::1] flight, long long horizon):
    cdef long long fa = 0, ha = 0, fb = 0, hb = 0
    cdef int st
    st = _eval_two_segments(route_a, 0, cut_a, route_b, cut_b, len(route_b),
                            t_start, t_end, flight, horizon, &fa, &ha)
    if st != 0:
        return st, 0, 0, 0, 0
    st = _eval_two_segments(route_b, 0, cut_b, route_a, cut_a, len(route_a),
                            t_start, t_end, flight, horizon, &fb, &hb)
    if st != 0:
        return st, 0, 0, 0, 0
    return 0, fa, ha, fb, hb
