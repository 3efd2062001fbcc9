"""Virtual-target path following and the PID differential-thrust autopilot."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .dynamics import ThrustCommand, VesselParams, VesselState, wrap_angle


def wrap_pi(a: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    return -wrap_angle(-a)


@dataclass(frozen=True, eq=False)
class PlanarPath:
    """Piecewise-linear reference path parameterised by arc length."""

    xs: np.ndarray
    ys: np.ndarray
    s: np.ndarray
    closed: bool = False

    @classmethod
    def from_points(cls, points, closed: bool = False) -> "PlanarPath":
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("points must be an (n, 2) array")
        if closed:
            if math.hypot(*(pts[0] - pts[-1])) > 1e-9:
                raise ValueError("closed path must start and end at the same point")
            pts = pts.copy()
            pts[-1] = pts[0]
        # drop repeated samples so arc length is strictly increasing
        keep = [0]
        for i in range(1, len(pts)):
            if math.hypot(*(pts[i] - pts[keep[-1]])) > 0.0:
                keep.append(i)
        if closed and keep[-1] != len(pts) - 1:
            keep[-1] = len(pts) - 1
        pts = pts[keep]
        if len(pts) < 2:
            raise ValueError("path needs at least two distinct samples")
        seg = np.hypot(np.diff(pts[:, 0]), np.diff(pts[:, 1]))
        s = np.concatenate(([0.0], np.cumsum(seg)))
        xs = np.ascontiguousarray(pts[:, 0])
        ys = np.ascontiguousarray(pts[:, 1])
        for a in (xs, ys, s):
            a.setflags(write=False)
        return cls(xs, ys, s, closed)

    @property
    def length(self) -> float:
        return float(self.s[-1])

    @property
    def start(self) -> tuple[float, float]:
        return (float(self.xs[0]), float(self.ys[0]))

    @property
    def end(self) -> tuple[float, float]:
        return (float(self.xs[-1]), float(self.ys[-1]))

    def normalize(self, s: float) -> float:
        if self.closed:
            return s % self.length
        return min(max(s, 0.0), self.length)

    def point_at(self, s: float) -> tuple[float, float]:
        s = self.normalize(s)
        i = int(np.searchsorted(self.s, s, side="right")) - 1
        i = min(max(i, 0), len(self.s) - 2)
        s0, s1 = self.s[i], self.s[i + 1]
        f = (s - s0) / (s1 - s0)
        return (float(self.xs[i] + f * (self.xs[i + 1] - self.xs[i])),
                float(self.ys[i] + f * (self.ys[i + 1] - self.ys[i])))

    def tangent_at(self, s: float) -> float:
        """Path heading (clockwise from North) at arc length ``s``."""
        s = self.normalize(s)
        i = int(np.searchsorted(self.s, s, side="right")) - 1
        i = min(max(i, 0), len(self.s) - 2)
        return wrap_angle(math.atan2(self.ys[i + 1] - self.ys[i], self.xs[i + 1] - self.xs[i]))

    def nearest(self, x: float, y: float) -> tuple[float, float]:
        """Distance from (x, y) to the path and the arc length of the foot point."""
        d, i, f = kernels.polyline_nearest(x, y, self.xs, self.ys)
        return d, float(self.s[i] + f * (self.s[i + 1] - self.s[i]))


@dataclass(frozen=True)
class VirtualTarget:
    s: float
    pos: tuple[float, float]
    # unwrapped arc length travelled, so laps on closed paths can be counted
    progress: float = 0.0


@dataclass(frozen=True)
class GuidanceCommand:
    desired_speed: float
    desired_heading: float


@dataclass(frozen=True)
class PidState:
    kp: float
    ki: float
    kd: float
    output_limit: float
    integral: float = 0.0
    prev_error: float = 0.0

    def reset(self) -> "PidState":
        return replace(self, integral=0.0, prev_error=0.0)


@dataclass(frozen=True)
class GuidanceParams:
    """Autopilot gains and virtual-target settings."""

    speed_kp: float = 800.0
    speed_ki: float = 80.0
    speed_kd: float = 0.0
    heading_kp: float = 3000.0
    heading_ki: float = 0.0
    heading_kd: float = 9000.0
    lag_limit: float = 15.0
    arrival_radius: float = 5.0
    arrival_tolerance: float = 2.0
    # virtual-target speed; None means the vessel's cruise speed
    nominal_speed: float | None = None

    def __post_init__(self):
        if self.lag_limit <= 0 or self.arrival_radius <= 0 or self.arrival_tolerance <= 0:
            raise ValueError("lag_limit, arrival_radius and arrival_tolerance must be positive")
        if self.nominal_speed is not None and self.nominal_speed < 0:
            raise ValueError("nominal_speed must be non-negative")

    def speed_pid(self, params: VesselParams) -> PidState:
        return PidState(self.speed_kp, self.speed_ki, self.speed_kd, params.max_thrust_per_motor)

    def heading_pid(self, params: VesselParams) -> PidState:
        return PidState(self.heading_kp, self.heading_ki, self.heading_kd, params.max_thrust_per_motor)


def make_lemniscate_path(amplitude: float, n_samples: int) -> PlanarPath:
    """Closed figure-eight (lemniscate of Gerono) sampled uniformly in its parameter.

    x = A sin(theta), y = A sin(theta) cos(theta), theta in [0, 2 pi].
    """
    if n_samples < 16:
        raise ValueError("path too coarse")
    if not amplitude > 0:
        raise ValueError("amplitude must be positive")
    theta = np.linspace(0.0, 2.0 * math.pi, n_samples)
    sx = np.sin(theta)
    pts = np.column_stack((amplitude * sx, amplitude * sx * np.cos(theta)))
    pts[-1] = pts[0]
    return PlanarPath.from_points(pts, closed=True)


def make_straight_path(start, goal) -> PlanarPath:
    return PlanarPath.from_points([start, goal], closed=False)


def start_target(path: PlanarPath) -> VirtualTarget:
    return VirtualTarget(0.0, path.point_at(0.0), 0.0)


def advance_virtual_target(path: PlanarPath, vt: VirtualTarget, vessel: VesselState,
                           nominal_speed: float, lag_limit: float, dt: float,
                           max_progress: float | None = None) -> VirtualTarget:
    """Move the target along the path, slowing it as the vessel falls behind.

    The step is ``nominal_speed * dt`` scaled by ``max(0, 1 - d / lag_limit)``
    with ``d`` the vessel-to-target distance. On a closed path the target
    stops once its accumulated progress reaches ``max_progress``.
    """
    if not dt > 0:
        raise ValueError("invalid timestep")
    d = math.hypot(vessel.x - vt.pos[0], vessel.y - vt.pos[1])
    ds = nominal_speed * dt * max(0.0, 1.0 - d / lag_limit)
    if path.closed:
        if max_progress is not None:
            ds = min(ds, max(0.0, max_progress - vt.progress))
        s = math.fmod(vt.s + ds, path.length)
        progress = vt.progress + ds
    else:
        s = min(vt.s + ds, path.length)
        progress = vt.progress + (s - vt.s)
    return VirtualTarget(s, path.point_at(s), progress)


def reanchor_virtual_target(path: PlanarPath, vt: VirtualTarget, vessel: VesselState) -> VirtualTarget:
    """Pull a stalled target forward to the vessel's projection on an open path."""
    if path.closed:
        return vt
    _, s_proj = path.nearest(vessel.x, vessel.y)
    if s_proj <= vt.s:
        return vt
    return VirtualTarget(s_proj, path.point_at(s_proj), vt.progress + (s_proj - vt.s))


def vtg_command(vessel: VesselState, vt: VirtualTarget, cruise_speed: float,
                arrival_radius: float) -> GuidanceCommand:
    if not arrival_radius > 0:
        raise ValueError("arrival_radius must be positive")
    dx = vt.pos[0] - vessel.x
    dy = vt.pos[1] - vessel.y
    d = math.hypot(dx, dy)
    if d < 1e-6:
        return GuidanceCommand(0.0, wrap_angle(vessel.psi))
    return GuidanceCommand(cruise_speed * min(1.0, d / arrival_radius), wrap_angle(math.atan2(dy, dx)))


def pid_step(pid: PidState, error: float, dt: float) -> tuple[float, PidState]:
    """One PID update with integral clamping so ``|ki * integral|`` never exceeds the limit."""
    if not dt > 0:
        raise ValueError("invalid timestep")
    lim = pid.output_limit
    integral = pid.integral + error * dt
    if pid.ki != 0.0:
        bound = lim / abs(pid.ki)
        integral = min(max(integral, -bound), bound)
    raw = pid.kp * error + pid.ki * integral + pid.kd * (error - pid.prev_error) / dt
    out = min(max(raw, -lim), lim)
    return out, replace(pid, integral=integral, prev_error=error)


def heading_error(desired: float, psi: float) -> float:
    """Wrapped heading error in (-pi, pi]; positive means turn to starboard."""
    return wrap_pi(desired - psi)


def guidance_to_thrust(cmd: GuidanceCommand, vessel: VesselState, speed_pid: PidState,
                       heading_pid: PidState, params: VesselParams, dt: float,
                       ) -> tuple[ThrustCommand, PidState, PidState]:
    """Turn a speed/heading request into per-motor thrust.

    Returns the thrust together with the updated speed and heading PID states.
    """
    common, speed_pid = pid_step(speed_pid, cmd.desired_speed - vessel.u, dt)
    e = heading_error(cmd.desired_heading, vessel.psi)
    # keep the derivative term continuous across the +-pi seam
    seamless = replace(heading_pid, prev_error=e - wrap_pi(e - heading_pid.prev_error))
    diff, heading_pid = pid_step(seamless, e, dt)
    lim = params.max_thrust_per_motor
    thrust = ThrustCommand(min(max(common + diff, -lim), lim), min(max(common - diff, -lim), lim))
    return thrust, speed_pid, heading_pid


__all__ = [
    "PlanarPath", "VirtualTarget", "GuidanceCommand", "PidState", "GuidanceParams",
    "make_lemniscate_path", "make_straight_path", "start_target", "advance_virtual_target",
    "reanchor_virtual_target", "vtg_command", "pid_step", "heading_error", "guidance_to_thrust",
    "wrap_pi",
]
