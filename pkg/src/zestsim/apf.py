"""Artificial potential field planner with a predictive, rule-shaped lateral term.

Forces live in the North-East plane as :class:`ForceVector` values. The
attractive field is quadratic, the static repulsive field is Khatib's
inverse-distance form, and the predictive term pushes sideways, off the
own vessel's track, when the constant-velocity forecast brings the other
vessel inside the influence radius.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .colregs import EncounterType
from .dynamics import VesselParams, VesselState, wrap_angle
from .guidance import GuidanceCommand, wrap_pi


@dataclass(frozen=True)
class ForceVector:
    fx: float = 0.0
    fy: float = 0.0

    def __add__(self, other: "ForceVector") -> "ForceVector":
        return ForceVector(self.fx + other.fx, self.fy + other.fy)

    def scaled(self, k: float) -> "ForceVector":
        return ForceVector(k * self.fx, k * self.fy)

    @property
    def magnitude(self) -> float:
        return math.hypot(self.fx, self.fy)


ZERO = ForceVector(0.0, 0.0)


@dataclass(frozen=True)
class FieldParams:
    """Gains and radii of the field.

    ``safety_radius`` is twice the own beam; build instances with
    :meth:`for_vessel` so the two stay tied together.
    """

    safety_radius: float = 8.0
    k_att: float = 1.0
    k_rep: float = 4e5
    influence_radius: float = 40.0
    predict_horizon: float = 60.0
    k_pred: float = 200.0
    lateral_bias_gain: float = 0.5
    max_force: float = 1e4
    min_distance: float = 0.5
    # time resolution of the separation forecast
    predict_dt: float = 0.1
    # speed factor applied while overtaking or meeting head-on
    slowdown: float = 0.5

    def __post_init__(self):
        if not self.influence_radius > self.safety_radius > self.min_distance > 0:
            raise ValueError("need influence_radius > safety_radius > min_distance > 0")
        if self.predict_horizon <= 0 or self.predict_dt <= 0:
            raise ValueError("predict_horizon and predict_dt must be positive")
        if self.max_force <= 0:
            raise ValueError("max_force must be positive")
        if not 0 < self.slowdown <= 1:
            raise ValueError("slowdown must be in (0, 1]")

    @classmethod
    def for_vessel(cls, params: VesselParams, **overrides) -> "FieldParams":
        if "safety_radius" in overrides:
            raise ValueError("safety_radius is derived from the beam")
        return cls(safety_radius=2.0 * params.beam, **overrides)


def clamp(f: ForceVector, max_force: float) -> ForceVector:
    m = f.magnitude
    if m > max_force:
        return f.scaled(max_force / m)
    return f


def attractive_potential(pos, goal, k_att: float) -> float:
    dx = goal[0] - pos[0]
    dy = goal[1] - pos[1]
    return 0.5 * k_att * (dx * dx + dy * dy)


def attractive_force(pos, goal, k_att: float) -> ForceVector:
    return ForceVector(k_att * (goal[0] - pos[0]), k_att * (goal[1] - pos[1]))


def repulsive_potential(pos, obstacle_pos, fp: FieldParams) -> float:
    d = max(math.hypot(pos[0] - obstacle_pos[0], pos[1] - obstacle_pos[1]), fp.min_distance)
    if d > fp.influence_radius:
        return 0.0
    g = 1.0 / d - 1.0 / fp.influence_radius
    return 0.5 * fp.k_rep * g * g


def repulsive_force(pos, obstacle_pos, fp: FieldParams) -> ForceVector:
    dx = pos[0] - obstacle_pos[0]
    dy = pos[1] - obstacle_pos[1]
    raw = math.hypot(dx, dy)
    d = max(raw, fp.min_distance)
    if d > fp.influence_radius:
        return ZERO
    mag = fp.k_rep * (1.0 / d - 1.0 / fp.influence_radius) / (d * d)
    if raw > 0.0:
        ux, uy = dx / raw, dy / raw
    else:
        # coincident: no direction information, push straight north
        ux, uy = 1.0, 0.0
    return clamp(ForceVector(mag * ux, mag * uy), fp.max_force)


def starboard_unit(state: VesselState) -> tuple[float, float]:
    """Unit vector perpendicular to the vessel's velocity, pointing to starboard."""
    psi = state.psi if state.u >= 0 else state.psi + math.pi
    return (-math.sin(psi), math.cos(psi))


def predicted_min_separation(own: VesselState, other: VesselState, horizon: float, dt: float):
    ovx, ovy = own.velocity
    tvx, tvy = other.velocity
    return kernels.scan_min_separation(own.x, own.y, ovx, ovy, other.x, other.y, tvx, tvy, horizon, dt)


def predictive_force(own: VesselState, other: VesselState, fp: FieldParams,
                     side: int | None = None) -> ForceVector:
    """Lateral deflection from the forecast closest approach.

    ``side`` forces the push to starboard (+1) or port (-1). When it is
    None the push points away from where the other vessel will be at the
    closest approach, with starboard chosen when it is dead ahead.
    """
    d_min, t_min = predicted_min_separation(own, other, fp.predict_horizon, fp.predict_dt)
    if d_min > fp.influence_radius:
        return ZERO
    d = max(d_min, fp.min_distance)
    mag = fp.k_pred * (1.0 / d - 1.0 / fp.influence_radius)
    sx, sy = starboard_unit(own)
    if side is None:
        ovx, ovy = own.velocity
        tvx, tvy = other.velocity
        rx = (other.x + tvx * t_min) - (own.x + ovx * t_min)
        ry = (other.y + tvy * t_min) - (own.y + ovy * t_min)
        lateral = rx * sx + ry * sy
        side = -1 if lateral > 1e-9 else 1
    return clamp(ForceVector(side * mag * sx, side * mag * sy), fp.max_force)


def _unit(dx: float, dy: float) -> tuple[float, float]:
    n = math.hypot(dx, dy)
    if n == 0.0:
        return (0.0, 0.0)
    return (dx / n, dy / n)


def colregs_field(own: VesselState, other: VesselState, encounter: EncounterType,
                  goal, fp: FieldParams, clear_starboard: float = math.radians(15.0)) -> ForceVector:
    """Total steering force for an active encounter.

    Overtaking and head-on push to starboard unless an overtaken vessel sits
    clearly to starboard (bearing beyond ``clear_starboard``), in which case
    the pass is made to port. Give-way crossing adds a pull toward a point
    one influence radius astern of the other vessel. Stand-on keeps only the
    attractive and safety terms.
    """
    if encounter is EncounterType.CLEAR:
        raise ValueError("no field needed")
    att = attractive_force(own.pos, goal, fp.k_att)
    rep = repulsive_force(own.pos, other.pos, fp)
    att_mag = att.magnitude
    sx, sy = starboard_unit(own)

    if encounter in (EncounterType.OVERTAKING, EncounterType.HEAD_ON):
        side = 1
        if encounter is EncounterType.OVERTAKING:
            bearing = wrap_pi(math.atan2(other.y - own.y, other.x - own.x) - own.psi)
            if bearing > clear_starboard:
                side = -1
        pred = predictive_force(own, other, fp, side=side)
        k = side * fp.lateral_bias_gain * att_mag
        bias = ForceVector(k * sx, k * sy)
    elif encounter is EncounterType.CROSSING_GIVE_WAY:
        pred = predictive_force(own, other, fp, side=1)
        hx, hy = math.cos(other.psi), math.sin(other.psi)
        ax, ay = _unit(other.x - fp.influence_radius * hx - own.x,
                       other.y - fp.influence_radius * hy - own.y)
        k = fp.lateral_bias_gain * att_mag
        bias = ForceVector(k * (sx + ax), k * (sy + ay))
    else:
        pred = predictive_force(own, other, fp)
        bias = ZERO
    return clamp(att + rep + pred + bias, fp.max_force)


def force_to_guidance(force: ForceVector, encounter: EncounterType, cruise_speed: float,
                      slowdown: float = 0.5) -> GuidanceCommand:
    if force.magnitude == 0.0:
        raise ValueError("undefined direction")
    factor = slowdown if encounter in (EncounterType.OVERTAKING, EncounterType.HEAD_ON) else 1.0
    return GuidanceCommand(cruise_speed * factor, wrap_angle(math.atan2(force.fy, force.fx)))
