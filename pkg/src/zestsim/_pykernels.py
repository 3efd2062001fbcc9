"""Pure-Python implementations of the numerical hot loops.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same floating-point operation order, so both backends produce the
same numbers on IEEE-754 hardware.
"""
from math import cos, floor, sin, sqrt

import numpy as np


def _deriv(psi, u, r, tl, tr, mass, inertia, half_sep, dsl, dsq, dyl, dyq):
    dx = u * cos(psi)
    dy = u * sin(psi)
    du = (tl + tr - dsl * u - dsq * u * abs(u)) / mass
    dr = ((tl - tr) * half_sep - dyl * r - dyq * r * abs(r)) / inertia
    return dx, dy, r, du, dr


def rk4_step(x, y, psi, u, r, tl, tr, mass, inertia, half_sep,
             dsl, dsq, dyl, dyq, dt):
    """One classical RK4 step of the surge/yaw/pose model. Heading is not wrapped."""
    h2 = 0.5 * dt
    k1 = _deriv(psi, u, r, tl, tr, mass, inertia, half_sep, dsl, dsq, dyl, dyq)
    k2 = _deriv(psi + h2 * k1[2], u + h2 * k1[3], r + h2 * k1[4],
                tl, tr, mass, inertia, half_sep, dsl, dsq, dyl, dyq)
    k3 = _deriv(psi + h2 * k2[2], u + h2 * k2[3], r + h2 * k2[4],
                tl, tr, mass, inertia, half_sep, dsl, dsq, dyl, dyq)
    k4 = _deriv(psi + dt * k3[2], u + dt * k3[3], r + dt * k3[4],
                tl, tr, mass, inertia, half_sep, dsl, dsq, dyl, dyq)
    w = dt / 6.0
    return (
        x + w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y + w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        psi + w * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
        u + w * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3]),
        r + w * (k1[4] + 2.0 * k2[4] + 2.0 * k3[4] + k4[4]),
    )


def scan_min_separation(ox, oy, ovx, ovy, tx, ty, tvx, tvy, horizon, dt):
    """Minimum separation of two constant-velocity tracks sampled at ``k * dt``.

    Returns ``(min_sep, t_min)``; ties keep the earliest sample.
    """
    n = int(floor(horizon / dt + 1e-9))
    rx = tx - ox
    ry = ty - oy
    vx = tvx - ovx
    vy = tvy - ovy
    best = sqrt(rx * rx + ry * ry)
    best_t = 0.0
    for k in range(1, n + 1):
        t = k * dt
        ax = rx + vx * t
        ay = ry + vy * t
        d = sqrt(ax * ax + ay * ay)
        if d < best:
            best = d
            best_t = t
    return best, best_t


def polyline_nearest(px, py, xs, ys):
    """Distance from a point to a polyline.

    Returns ``(distance, segment_index, fraction)`` where ``fraction`` in
    [0, 1] locates the foot point on the winning segment. The earliest
    segment wins ties.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    ax, ay = xs[:-1], ys[:-1]
    ex = xs[1:] - ax
    ey = ys[1:] - ay
    ll = ex * ex + ey * ey
    with np.errstate(invalid="ignore", divide="ignore"):
        f = ((px - ax) * ex + (py - ay) * ey) / ll
    f = np.where(ll > 0.0, np.clip(f, 0.0, 1.0), 0.0)
    dx = ax + f * ex - px
    dy = ay + f * ey - py
    d2 = dx * dx + dy * dy
    i = int(np.argmin(d2))
    return float(np.sqrt(d2[i])), i, float(f[i])
