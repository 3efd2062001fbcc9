"""Planar surge/yaw model of a differential-thrust catamaran.

Frame: x points North, y points East, heading ``psi`` is measured clockwise
from North and positive yaw rate turns the bow to starboard. Sway is not
modelled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import kernels

TWO_PI = 2.0 * math.pi


def wrap_angle(a: float) -> float:
    """Wrap an angle to [-pi, pi)."""
    if -math.pi <= a < math.pi:
        return a
    w = math.fmod(a + math.pi, TWO_PI)
    if w < 0.0:
        w += TWO_PI
    w -= math.pi
    # fmod can round up to exactly pi for tiny negative inputs
    if w >= math.pi:
        w -= TWO_PI
    return w


@dataclass(frozen=True)
class VesselState:
    x: float = 0.0
    y: float = 0.0
    psi: float = 0.0
    u: float = 0.0
    r: float = 0.0
    t: float = 0.0

    @property
    def pos(self) -> tuple[float, float]:
        return (self.x, self.y)

    @property
    def velocity(self) -> tuple[float, float]:
        """Earth-frame velocity (north, east)."""
        return (self.u * math.cos(self.psi), self.u * math.sin(self.psi))

    def is_finite(self) -> bool:
        return all(math.isfinite(v) for v in (self.x, self.y, self.psi, self.u, self.r, self.t))


@dataclass(frozen=True)
class VesselParams:
    """Physical and speed-envelope parameters.

    Only ``length`` and the speed envelope come from the vessel's published
    figures; the rest are calibration values chosen so a 2.5 m/s cruise
    is comfortably inside the thrust budget.
    """

    length: float = 10.0
    beam: float = 4.0
    mass: float = 6000.0
    yaw_inertia: float = 40000.0
    thruster_separation: float = 4.0
    linear_drag_surge: float = 900.0
    quad_drag_surge: float = 250.0
    linear_drag_yaw: float = 25000.0
    quad_drag_yaw: float = 20000.0
    max_thrust_per_motor: float = 2500.0
    cruise_speed: float = 2.5
    min_speed: float = 0.0
    max_speed: float = 5.66

    def __post_init__(self):
        for name in ("length", "beam", "mass", "yaw_inertia",
                     "thruster_separation", "max_thrust_per_motor"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("linear_drag_surge", "quad_drag_surge", "linear_drag_yaw", "quad_drag_yaw"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if not self.min_speed <= self.cruise_speed <= self.max_speed:
            raise ValueError("speed envelope must satisfy min_speed <= cruise_speed <= max_speed")

    def thrust_for_speed(self, speed: float) -> float:
        """Per-motor thrust that holds ``speed`` in steady straight motion."""
        drag = self.linear_drag_surge * speed + self.quad_drag_surge * speed * abs(speed)
        return 0.5 * drag


@dataclass(frozen=True)
class ThrustCommand:
    t_left: float = 0.0
    t_right: float = 0.0


@dataclass(frozen=True)
class StateDerivative:
    dx: float
    dy: float
    dpsi: float
    du: float
    dr: float


def saturate(thrust: ThrustCommand, params: VesselParams) -> ThrustCommand:
    lim = params.max_thrust_per_motor
    return ThrustCommand(min(max(thrust.t_left, -lim), lim), min(max(thrust.t_right, -lim), lim))


def state_derivative(state: VesselState, params: VesselParams, thrust: ThrustCommand) -> StateDerivative:
    values = (state.x, state.y, state.psi, state.u, state.r, thrust.t_left, thrust.t_right)
    if not all(math.isfinite(v) for v in values):
        raise ValueError("invalid state")
    u, r = state.u, state.r
    tl, tr = thrust.t_left, thrust.t_right
    du = (tl + tr - params.linear_drag_surge * u - params.quad_drag_surge * u * abs(u)) / params.mass
    dr = ((tl - tr) * (params.thruster_separation / 2.0)
          - params.linear_drag_yaw * r - params.quad_drag_yaw * r * abs(r)) / params.yaw_inertia
    return StateDerivative(u * math.cos(state.psi), u * math.sin(state.psi), r, du, dr)


def step_dynamics(state: VesselState, params: VesselParams, thrust: ThrustCommand, dt: float) -> VesselState:
    """Advance the vessel by one fixed RK4 step of length ``dt``.

    Thrust is clamped per motor before integrating; the result has its
    heading wrapped and its clock advanced by ``dt``.
    """
    if not (dt > 0.0 and dt <= 1.0):
        raise ValueError("invalid timestep")
    if not state.is_finite():
        raise ValueError("invalid state")
    cmd = saturate(thrust, params)
    if not (math.isfinite(cmd.t_left) and math.isfinite(cmd.t_right)):
        raise ValueError("invalid state")
    x, y, psi, u, r = kernels.rk4_step(
        state.x, state.y, state.psi, state.u, state.r,
        cmd.t_left, cmd.t_right,
        params.mass, params.yaw_inertia, params.thruster_separation / 2.0,
        params.linear_drag_surge, params.quad_drag_surge,
        params.linear_drag_yaw, params.quad_drag_yaw, dt,
    )
    out = VesselState(x, y, wrap_angle(psi), u, r, state.t + dt)
    if not out.is_finite():
        raise ValueError("invalid state")
    return out


def with_time(state: VesselState, t: float) -> VesselState:
    return replace(state, t=t)
