# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Mirrors ``_pykernels`` operation for operation."""
from libc.math cimport cos, sin, floor, sqrt, fabs


cdef inline void _deriv(double psi, double u, double r, double tl, double tr,
                        double mass, double inertia, double half_sep,
                        double dsl, double dsq, double dyl, double dyq,
                        double* out) noexcept nogil:
    out[0] = u * cos(psi)
    out[1] = u * sin(psi)
    out[2] = r
    out[3] = (tl + tr - dsl * u - dsq * u * fabs(u)) / mass
    out[4] = ((tl - tr) * half_sep - dyl * r - dyq * r * fabs(r)) / inertia


def rk4_step(double x, double y, double psi, double u, double r,
             double tl, double tr, double mass, double inertia, double half_sep,
             double dsl, double dsq, double dyl, double dyq, double dt):
    cdef double k1[5]
    cdef double k2[5]
    cdef double k3[5]
    cdef double k4[5]
    cdef double h2 = 0.5 * dt
    cdef double w
    _deriv(psi, u, r, tl, tr, mass, inertia, half_sep, dsl, dsq, dyl, dyq, k1)
    _deriv(psi + h2 * k1[2], u + h2 * k1[3], r + h2 * k1[4],
           tl, tr, mass, inertia, half_sep, dsl, dsq, dyl, dyq, k2)
    _deriv(psi + h2 * k2[2], u + h2 * k2[3], r + h2 * k2[4],
           tl, tr, mass, inertia, half_sep, dsl, dsq, dyl, dyq, k3)
    _deriv(psi + dt * k3[2], u + dt * k3[3], r + dt * k3[4],
           tl, tr, mass, inertia, half_sep, dsl, dsq, dyl, dyq, k4)
    w = dt / 6.0
    return (
        x + w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y + w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        psi + w * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
        u + w * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3]),
        r + w * (k1[4] + 2.0 * k2[4] + 2.0 * k3[4] + k4[4]),
    )


def scan_min_separation(double ox, double oy, double ovx, double ovy,
                        double tx, double ty, double tvx, double tvy,
                        double horizon, double dt):
    cdef Py_ssize_t n = <Py_ssize_t>floor(horizon / dt + 1e-9)
    cdef Py_ssize_t k
    cdef double rx = tx - ox
    cdef double ry = ty - oy
    cdef double vx = tvx - ovx
    cdef double vy = tvy - ovy
    cdef double best = sqrt(rx * rx + ry * ry)
    cdef double best_t = 0.0
    cdef double t, d, ax, ay
    with nogil:
        for k in range(1, n + 1):
            t = k * dt
            ax = rx + vx * t
            ay = ry + vy * t
            d = sqrt(ax * ax + ay * ay)
            if d < best:
                best = d
                best_t = t
    return best, best_t


def polyline_nearest(double px, double py, const double[::1] xs, const double[::1] ys):
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i
    cdef Py_ssize_t best_i = 0
    cdef double ax, ay, ex, ey, ll, f, dx, dy, d2
    cdef double best = -1.0
    cdef double best_f = 0.0
    if n < 2 or ys.shape[0] != n:
        raise ValueError("polyline needs at least two points of matching length")
    with nogil:
        for i in range(n - 1):
            ax = xs[i]
            ay = ys[i]
            ex = xs[i + 1] - ax
            ey = ys[i + 1] - ay
            ll = ex * ex + ey * ey
            if ll > 0.0:
                f = ((px - ax) * ex + (py - ay) * ey) / ll
                if f < 0.0:
                    f = 0.0
                elif f > 1.0:
                    f = 1.0
            else:
                f = 0.0
            dx = ax + f * ex - px
            dy = ay + f * ey - py
            d2 = dx * dx + dy * dy
            if best < 0.0 or d2 < best:
                best = d2
                best_i = i
                best_f = f
    return sqrt(best), best_i, best_f
