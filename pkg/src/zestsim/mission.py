"""The vessel's collision-avoidance tree and the blackboard its nodes share.

Tree layout::

    Root
    └── recursive Fallback
        ├── Sequence: IsWayFree -> MoveToTarget
        ├── Sequence: IsStaticObstacle -> AvoidStatic
        └── Fallback
            ├── Sequence: IsRule13 -> ApplyRule13
            ├── Sequence: IsRule14 -> ApplyRule14
            ├── Sequence: IsRule15 -> ApplyRule15
            └── Sequence: IsRule17 -> ApplyRule17

Once a rule leaf runs it latches the encounter on the blackboard. While
latched, the conditions answer for the latched encounter instead of
re-classifying, which stops the classification from flipping as the own
vessel turns away (a head-on contact drifting to port would otherwise read
as a stand-on case halfway through the manoeuvre).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from dataclasses import field as dc_field

from . import apf
from .apf import FieldParams
from .bt import Condition, Fallback, Leaf, NodeStatus, Root, Sequence
from .colregs import (ColregsThresholds, EncounterType, classify_encounter,
                      encounter_cleared, encounter_geometry)
from .dynamics import VesselParams, VesselState
from .guidance import (GuidanceCommand, GuidanceParams, PlanarPath, VirtualTarget,
                       reanchor_virtual_target, vtg_command)


@dataclass
class Blackboard:
    own: VesselState
    path: PlanarPath
    vt: VirtualTarget
    params: VesselParams
    guidance: GuidanceParams = dc_field(default_factory=GuidanceParams)
    field: FieldParams = dc_field(default_factory=FieldParams)
    thresholds: ColregsThresholds = dc_field(default_factory=ColregsThresholds)
    others: list[VesselState] = dc_field(default_factory=list)
    command: GuidanceCommand | None = None
    active_leaf: str | None = None
    # latched encounter and the index of the contact it concerns
    encounter: EncounterType | None = None
    contact: int | None = None
    goal_reached: bool = False
    # per-tick (node, status) pairs when tracing is on
    trace: list | None = None

    @property
    def goal(self) -> tuple[float, float]:
        if self.path.closed:
            return self.vt.pos
        return self.path.end

    @property
    def cruise_speed(self) -> float:
        return self.params.cruise_speed


def conflicts(bb: Blackboard, own: VesselState | None = None) -> list[tuple[float, int]]:
    """Contacts still closing toward a forecast approach inside the influence radius.

    A contact that is already opening (closest approach now) is not a
    conflict, even when it is inside the radius.
    """
    fp = bb.field
    own = bb.own if own is None else own
    out = []
    for i, other in enumerate(bb.others):
        rng = math.hypot(other.x - own.x, other.y - own.y)
        if rng > bb.thresholds.clear_range:
            continue
        d_min, t_min = apf.predicted_min_separation(own, other, fp.predict_horizon, fp.predict_dt)
        if d_min <= fp.influence_radius and t_min > 0:
            out.append((rng, i))
    out.sort()
    return out


def route_state(bb: Blackboard) -> VesselState:
    """Own vessel as it would be if it resumed the route right now."""
    cmd = vtg_command(bb.own, bb.vt, bb.cruise_speed, bb.guidance.arrival_radius)
    return replace(bb.own, psi=cmd.desired_heading, u=bb.cruise_speed)


def passed(bb: Blackboard, i: int) -> bool:
    """The latched contact is resolved.

    Either the rule's own release test holds, or the contact is opening,
    abaft the beam, and resuming the route would not close on it again.
    """
    geom = encounter_geometry(bb.own, bb.others[i])
    if geom.range > bb.thresholds.clear_range or encounter_cleared(geom, bb.thresholds):
        return True
    if not (geom.range_rate > 0 and abs(geom.bearing_own_to_other) > math.pi / 2):
        return False
    return all(j != i for _, j in conflicts(bb, route_state(bb)))


def current_encounter(bb: Blackboard) -> tuple[EncounterType, int | None]:
    if bb.encounter is not None and bb.contact is not None:
        return bb.encounter, bb.contact
    found = conflicts(bb)
    if not found:
        return EncounterType.CLEAR, None
    i = found[0][1]
    return classify_encounter(encounter_geometry(bb.own, bb.others[i]), bb.thresholds), i


# conditions: read-only

def is_way_free(bb: Blackboard) -> bool:
    if bb.encounter is not None and bb.contact is not None:
        return passed(bb, bb.contact)
    return not conflicts(bb)


def _is(kind: EncounterType):
    def check(bb: Blackboard) -> bool:
        return current_encounter(bb)[0] is kind
    check.__name__ = f"is_{kind.value}"
    return check


# leaves

def _latch(bb: Blackboard, kind: EncounterType) -> int:
    enc, i = current_encounter(bb)
    if bb.encounter is None:
        bb.encounter, bb.contact = kind, i
    return bb.contact


def _release(bb: Blackboard) -> None:
    bb.encounter = None
    bb.contact = None


def _mission_complete(bb: Blackboard) -> bool:
    if bb.path.closed:
        at_end = bb.vt.progress >= bb.path.length - 1e-9
    else:
        at_end = bb.vt.s >= bb.path.length
    gx, gy = bb.vt.pos
    return at_end and math.hypot(gx - bb.own.x, gy - bb.own.y) < bb.guidance.arrival_tolerance


def _keep_target(bb: Blackboard) -> None:
    # a target left behind during a manoeuvre jumps forward to the vessel
    vt = bb.vt
    if math.hypot(vt.pos[0] - bb.own.x, vt.pos[1] - bb.own.y) >= bb.guidance.lag_limit:
        bb.vt = reanchor_virtual_target(bb.path, vt, bb.own)


def _route_command(bb: Blackboard) -> GuidanceCommand:
    _keep_target(bb)
    return vtg_command(bb.own, bb.vt, bb.cruise_speed, bb.guidance.arrival_radius)


def move_to_target(bb: Blackboard) -> NodeStatus:
    _release(bb)
    bb.command = _route_command(bb)
    if _mission_complete(bb):
        bb.goal_reached = True
        return NodeStatus.SUCCESS
    return NodeStatus.RUNNING


def _field_command(bb: Blackboard, force: apf.ForceVector, kind: EncounterType) -> GuidanceCommand:
    if force.magnitude == 0.0:
        return GuidanceCommand(bb.cruise_speed, bb.own.psi)
    return apf.force_to_guidance(force, kind, bb.cruise_speed, bb.field.slowdown)


def avoid_static(bb: Blackboard) -> NodeStatus:
    i = _latch(bb, EncounterType.STATIC_OBSTACLE)
    other = bb.others[i]
    force = apf.clamp(apf.attractive_force(bb.own.pos, bb.goal, bb.field.k_att)
                      + apf.repulsive_force(bb.own.pos, other.pos, bb.field), bb.field.max_force)
    bb.command = _field_command(bb, force, EncounterType.STATIC_OBSTACLE)
    if passed(bb, i):
        _release(bb)
        return NodeStatus.SUCCESS
    return NodeStatus.RUNNING


def _apply_rule(kind: EncounterType):
    def action(bb: Blackboard) -> NodeStatus:
        i = _latch(bb, kind)
        other = bb.others[i]
        _keep_target(bb)
        if kind is EncounterType.STAND_ON:
            bb.command = _route_command(bb)
        else:
            force = apf.colregs_field(bb.own, other, kind, bb.goal, bb.field,
                                      bb.thresholds.head_on_half_angle)
            bb.command = _field_command(bb, force, kind)
        if _mission_complete(bb):
            _release(bb)
            bb.goal_reached = True
            return NodeStatus.SUCCESS
        if encounter_cleared(encounter_geometry(bb.own, other), bb.thresholds):
            _release(bb)
            return NodeStatus.SUCCESS
        return NodeStatus.RUNNING
    action.__name__ = f"apply_rule{kind.rule}"
    return action


CONDITIONS = {
    "IsWayFree": is_way_free,
    "IsStaticObstacle": _is(EncounterType.STATIC_OBSTACLE),
    "IsRule13": _is(EncounterType.OVERTAKING),
    "IsRule14": _is(EncounterType.HEAD_ON),
    "IsRule15": _is(EncounterType.CROSSING_GIVE_WAY),
    "IsRule17": _is(EncounterType.STAND_ON),
}

ACTIONS = {
    "MoveToTarget": move_to_target,
    "AvoidStatic": avoid_static,
    "ApplyRule13": _apply_rule(EncounterType.OVERTAKING),
    "ApplyRule14": _apply_rule(EncounterType.HEAD_ON),
    "ApplyRule15": _apply_rule(EncounterType.CROSSING_GIVE_WAY),
    "ApplyRule17": _apply_rule(EncounterType.STAND_ON),
}


def condition(name: str) -> Condition:
    try:
        return Condition(name, CONDITIONS[name])
    except KeyError:
        raise KeyError(f"unknown condition {name!r}") from None


def leaf(name: str) -> Leaf:
    try:
        action = ACTIONS[name]
    except KeyError:
        raise KeyError(f"unknown leaf {name!r}") from None

    def run(bb: Blackboard) -> NodeStatus:
        status = action(bb)
        bb.active_leaf = name
        return status
    return Leaf(name, run)


def guarded(cond: str, action: str) -> Sequence:
    # recursive so the guard is re-checked on every tick, not only on entry
    return Sequence([condition(cond), leaf(action)], recursive=True, name=f"R{cond}->{action}")


def build_zest_tree() -> Root:
    rules = Fallback([guarded(f"IsRule{n}", f"ApplyRule{n}") for n in (13, 14, 15, 17)],
                     recursive=True, name="RuleDispatch")
    top = Fallback([
        guarded("IsWayFree", "MoveToTarget"),
        guarded("IsStaticObstacle", "AvoidStatic"),
        rules,
    ], recursive=True, name="R?")
    root = Root(top)
    root.validate()
    return root
