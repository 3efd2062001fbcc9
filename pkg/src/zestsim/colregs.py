"""Two-vessel COLREGs encounter classification (Rules 13, 14, 15, 17)."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .dynamics import VesselState
from .guidance import wrap_pi


class EncounterType(enum.Enum):
    CLEAR = "Clear"
    STATIC_OBSTACLE = "StaticObstacle"
    OVERTAKING = "Overtaking"  # Rule 13
    HEAD_ON = "HeadOn"  # Rule 14
    CROSSING_GIVE_WAY = "CrossingGiveWay"  # Rule 15
    STAND_ON = "StandOn"  # Rule 17

    @property
    def rule(self) -> int | None:
        return _RULES.get(self)


_RULES = {
    EncounterType.OVERTAKING: 13,
    EncounterType.HEAD_ON: 14,
    EncounterType.CROSSING_GIVE_WAY: 15,
    EncounterType.STAND_ON: 17,
}


@dataclass(frozen=True)
class EncounterGeometry:
    range: float
    bearing_own_to_other: float
    bearing_other_to_own: float
    heading_delta: float
    range_rate: float
    other_speed: float


@dataclass(frozen=True)
class ColregsThresholds:
    head_on_half_angle: float = math.radians(15.0)
    reciprocal_tolerance: float = math.radians(15.0)
    # 22.5 degrees abaft the other vessel's beam
    overtake_boundary: float = math.radians(112.5)
    static_speed_threshold: float = 0.2
    clear_range: float = 150.0
    release_range: float = 60.0

    def __post_init__(self):
        if not 0 < self.head_on_half_angle < self.overtake_boundary < math.pi:
            raise ValueError("need 0 < head_on_half_angle < overtake_boundary < pi")
        if self.reciprocal_tolerance < 0 or self.static_speed_threshold < 0:
            raise ValueError("tolerances must be non-negative")
        if not 0 < self.release_range <= self.clear_range:
            raise ValueError("need 0 < release_range <= clear_range")


def encounter_geometry(own: VesselState, other: VesselState) -> EncounterGeometry:
    dx = other.x - own.x
    dy = other.y - own.y
    rng = math.hypot(dx, dy)
    if rng <= 1e-9:
        raise ValueError("degenerate geometry")
    ovx, ovy = own.velocity
    tvx, tvy = other.velocity
    return EncounterGeometry(
        range=rng,
        bearing_own_to_other=wrap_pi(math.atan2(dy, dx) - own.psi),
        bearing_other_to_own=wrap_pi(math.atan2(-dy, -dx) - other.psi),
        heading_delta=wrap_pi(other.psi - own.psi),
        range_rate=(dx * (tvx - ovx) + dy * (tvy - ovy)) / rng,
        other_speed=abs(other.u),
    )


def classify_encounter(geom: EncounterGeometry, th: ColregsThresholds) -> EncounterType:
    """Priority-ordered rule selection; boundaries resolve toward the give-way class."""
    if geom.other_speed < th.static_speed_threshold:
        return EncounterType.STATIC_OBSTACLE
    if geom.range > th.clear_range or (geom.range_rate > 0 and geom.range > th.release_range):
        return EncounterType.CLEAR
    if abs(geom.bearing_other_to_own) >= th.overtake_boundary and geom.range_rate < 0:
        return EncounterType.OVERTAKING
    b = geom.bearing_own_to_other
    if abs(b) <= th.head_on_half_angle and abs(wrap_pi(geom.heading_delta - math.pi)) <= th.reciprocal_tolerance:
        return EncounterType.HEAD_ON
    if th.head_on_half_angle < b <= th.overtake_boundary:
        return EncounterType.CROSSING_GIVE_WAY
    if -th.overtake_boundary <= b < -th.head_on_half_angle:
        return EncounterType.STAND_ON
    return EncounterType.CLEAR


def encounter_cleared(geom: EncounterGeometry, th: ColregsThresholds) -> bool:
    """True once the contact is opening, beyond release range and abaft own beam."""
    return (geom.range_rate > 0
            and geom.range > th.release_range
            and abs(geom.bearing_own_to_other) > math.pi / 2)
