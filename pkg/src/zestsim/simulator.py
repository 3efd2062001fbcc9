"""Two-vessel world: a controlled vessel running the full stack and a
scripted intruder that holds course and speed."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from dataclasses import field as dc_field

import numpy as np

from . import apf
from .apf import FieldParams
from .bt import NodeStatus, tick
from .colregs import ColregsThresholds, EncounterType
from .dynamics import ThrustCommand, VesselParams, VesselState, step_dynamics, wrap_angle
from .guidance import (GuidanceParams, PlanarPath, advance_virtual_target, guidance_to_thrust,
                       make_lemniscate_path, make_straight_path, start_target, vtg_command)
from .mission import Blackboard, build_zest_tree

log = logging.getLogger(__name__)

COLLISION_DISTANCE = 0.5


class SimulationError(RuntimeError):
    def __init__(self, index: int, message: str):
        super().__init__(f"record {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class NoiseConfig:
    gps_std: float = 0.0
    compass_std: float = 0.0
    gyro_std: float = 0.0
    accel_std: float = 0.0
    # speed over ground reported by the GPS receiver
    speed_std: float = 0.0

    def __post_init__(self):
        for k, v in self.__dict__.items():
            if not v >= 0:
                raise ValueError(f"{k} must be non-negative")


@dataclass(frozen=True)
class PathSpec:
    """Reference route: either a straight leg to ``goal`` or a named shape."""

    kind: str = "goal"  # goal | lemniscate | polyline
    goal: tuple[float, float] | None = None
    amplitude: float = 40.0
    n_samples: int = 4096
    points: tuple[tuple[float, float], ...] = ()
    closed: bool = False
    # laps of a closed path before the mission ends
    laps: int = 1

    def __post_init__(self):
        if not isinstance(self.laps, int) or isinstance(self.laps, bool) or self.laps < 1:
            raise ValueError("laps must be a positive integer")

    def build(self, start: VesselState) -> PlanarPath:
        if self.kind == "goal":
            if self.goal is None:
                raise ValueError("goal path needs a goal")
            return make_straight_path(start.pos, self.goal)
        if self.kind == "lemniscate":
            return make_lemniscate_path(self.amplitude, self.n_samples)
        if self.kind == "polyline":
            return PlanarPath.from_points(self.points, closed=self.closed)
        raise ValueError(f"unknown path kind {self.kind!r}")


@dataclass(frozen=True)
class RedScript:
    """Intruder: constant equal thrust, either given directly or solved from a speed."""

    params: VesselParams = dc_field(default_factory=VesselParams)
    state: VesselState = dc_field(default_factory=VesselState)
    speed: float | None = None
    thrust: float | None = None

    def motor_thrust(self) -> float:
        if self.thrust is not None:
            return self.thrust
        speed = self.state.u if self.speed is None else self.speed
        return self.params.thrust_for_speed(speed)

    def initial_state(self) -> VesselState:
        if self.speed is not None:
            return replace(self.state, u=self.speed, r=0.0, t=0.0)
        return replace(self.state, t=0.0)


@dataclass(frozen=True)
class ScenarioConfig:
    name: str = "scenario"
    white_params: VesselParams = dc_field(default_factory=VesselParams)
    white_state: VesselState = dc_field(default_factory=VesselState)
    route: PathSpec = dc_field(default_factory=lambda: PathSpec(goal=(100.0, 0.0)))
    red: RedScript | None = None
    guidance: GuidanceParams = dc_field(default_factory=GuidanceParams)
    thresholds: ColregsThresholds = dc_field(default_factory=ColregsThresholds)
    field: FieldParams | None = None
    dt: float = 0.1
    max_time: float = 300.0
    noise: NoiseConfig = dc_field(default_factory=NoiseConfig)
    seed: int = 0

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not self.max_time >= self.dt:
            raise ValueError("max_time must be at least dt")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValueError("seed must be an integer")
        if self.field is None:
            object.__setattr__(self, "field", FieldParams.for_vessel(self.white_params))

    def without_red(self) -> "ScenarioConfig":
        return replace(self, red=None)


@dataclass(frozen=True)
class SensorReading:
    gps: tuple[float, float]
    compass: float
    imu: tuple[float, float]  # yaw rate, surge acceleration
    speed: float

    def as_state(self, t: float) -> VesselState:
        return VesselState(self.gps[0], self.gps[1], self.compass, self.speed, self.imu[0], t)


def sense(truth: VesselState, noise: NoiseConfig, rng: np.random.Generator,
          surge_accel: float = 0.0) -> SensorReading:
    """Idealised GPS, compass, IMU and speed log with additive Gaussian noise.

    A channel with zero standard deviation returns the true value untouched
    and draws nothing from ``rng``.
    """
    def noisy(value, std):
        return value + float(rng.normal(0.0, std)) if std > 0 else value

    x = noisy(truth.x, noise.gps_std)
    y = noisy(truth.y, noise.gps_std)
    psi = truth.psi if noise.compass_std == 0 else wrap_angle(noisy(truth.psi, noise.compass_std))
    r = noisy(truth.r, noise.gyro_std)
    a = noisy(surge_accel, noise.accel_std)
    u = noisy(truth.u, noise.speed_std)
    return SensorReading((x, y), psi, (r, a), u)


def predict_min_separation(own: VesselState, other: VesselState, horizon: float,
                           dt: float) -> tuple[float, float]:
    """Closest approach of two constant-velocity tracks sampled every ``dt`` up to ``horizon``."""
    if not horizon > 0:
        raise ValueError("horizon must be positive")
    return apf.predicted_min_separation(own, other, horizon, dt)


@dataclass
class LogRecord:
    t: float
    white: VesselState
    red: VesselState | None
    leaf: str
    encounter: str
    t_left: float
    t_right: float
    sep: float | None
    xte: float
    command_speed: float
    command_heading: float


@dataclass
class SimLog:
    records: list[LogRecord] = dc_field(default_factory=list)
    status: str = "running"
    bt_trace: list | None = None

    def __len__(self) -> int:
        return len(self.records)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records], dtype=float)

    def white_xy(self) -> np.ndarray:
        return np.array([(r.white.x, r.white.y) for r in self.records])

    def red_xy(self) -> np.ndarray | None:
        if not self.records or self.records[0].red is None:
            return None
        return np.array([(r.red.x, r.red.y) for r in self.records])


@dataclass(frozen=True)
class Metrics:
    min_separation: float | None
    cpa_time: float | None
    time_to_goal: float | None  # None: not reached
    cross_track_rms: float
    max_cross_track: float
    max_heading_deviation: float
    colregs_violation: bool


def compute_metrics(log: SimLog, config: ScenarioConfig,
                    baseline: SimLog | None = None) -> Metrics:
    """Summary figures of a run.

    Heading deviation is measured against ``baseline`` (the same scenario
    without the intruder) record by record; past the end of the baseline its
    last heading is used. Without a baseline it is measured against the
    path tangent at the nearest path point.
    """
    if not log.records:
        raise ValueError("empty log")
    recs = log.records
    seps = [(r.sep, r.t) for r in recs if r.sep is not None]
    if seps:
        # first occurrence of the minimum
        min_sep, cpa_t = min(seps, key=lambda p: p[0])
    else:
        min_sep = cpa_t = None
    xte = np.array([r.xte for r in recs])
    rms = float(np.sqrt(np.mean(xte * xte)))
    if baseline is not None and baseline.records:
        base = baseline.records
        devs = [abs(wrap_angle(r.white.psi - base[min(k, len(base) - 1)].white.psi))
                for k, r in enumerate(recs)]
    else:
        path = config.route.build(config.white_state)
        devs = []
        for r in recs:
            _, s = path.nearest(r.white.x, r.white.y)
            devs.append(abs(wrap_angle(r.white.psi - path.tangent_at(s))))
    violation = min_sep is not None and min_sep < config.field.safety_radius
    return Metrics(
        min_separation=min_sep,
        cpa_time=cpa_t,
        time_to_goal=recs[-1].t if log.status == "goal" else None,
        cross_track_rms=rms,
        max_cross_track=float(np.max(xte)),
        max_heading_deviation=float(max(devs)),
        colregs_violation=bool(violation),
    )


def simulate(config: ScenarioConfig, trace_bt: bool = False) -> SimLog:
    """Run the closed loop and return the log only."""
    rng = np.random.default_rng(config.seed)
    wp = config.white_params
    white = replace(config.white_state, t=0.0)
    path = config.route.build(white)
    vt = start_target(path)
    g = config.guidance
    nominal = wp.cruise_speed if g.nominal_speed is None else g.nominal_speed
    stop_at = config.route.laps * path.length if path.closed else None
    speed_pid = g.speed_pid(wp)
    heading_pid = g.heading_pid(wp)

    red = red_thrust = None
    if config.red is not None:
        red = config.red.initial_state()
        m = config.red.motor_thrust()
        red_thrust = ThrustCommand(m, m)

    bb = Blackboard(own=white, path=path, vt=vt, params=wp, guidance=g,
                    field=config.field, thresholds=config.thresholds,
                    others=[red] if red is not None else [])
    tree = build_zest_tree()
    out = SimLog(bt_trace=[] if trace_bt else None)

    dt = config.dt
    n_max = int(math.floor(config.max_time / dt + 1e-9))
    prev_u = white.u
    first = True
    for k in range(n_max + 1):
        t = k * dt
        accel = 0.0 if first else (white.u - prev_u) / dt
        reading = sense(white, config.noise, rng, accel)
        own = reading.as_state(t)
        if first:
            # start the heading derivative from the initial error to avoid a kick
            cmd0 = vtg_command(own, bb.vt, wp.cruise_speed, g.arrival_radius)
            heading_pid = replace(heading_pid, prev_error=_wrapped(cmd0.desired_heading - own.psi))
            first = False
        else:
            bb.vt = advance_virtual_target(path, bb.vt, own, nominal, g.lag_limit, dt, stop_at)
        bb.own = own
        bb.others = [red] if red is not None else []
        bb.active_leaf = None
        if trace_bt:
            bb.trace = []
        status = tick(tree, bb)
        if bb.command is None or status is NodeStatus.FAILURE:
            # nothing in the tree claimed the tick: keep following the route
            bb.command = vtg_command(own, bb.vt, wp.cruise_speed, g.arrival_radius)
        cmd = bb.command
        thrust, speed_pid, heading_pid = guidance_to_thrust(cmd, own, speed_pid, heading_pid, wp, dt)

        sep = None
        if red is not None:
            sep = math.hypot(red.x - white.x, red.y - white.y)
        xte, _ = path.nearest(white.x, white.y)
        enc = bb.encounter.value if bb.encounter is not None else EncounterType.CLEAR.value
        if status is NodeStatus.FAILURE:
            leaf = "None"
        else:
            leaf = bb.active_leaf or "None"
        out.records.append(LogRecord(t, white, red, leaf, enc, thrust.t_left, thrust.t_right,
                                     sep, xte, cmd.desired_speed, cmd.desired_heading))
        if trace_bt:
            out.bt_trace.append((t, list(bb.trace)))
            log.debug("t=%.2f %s", t, " ".join(f"{n}:{s.value}" for n, s in bb.trace))

        if status is NodeStatus.SUCCESS and bb.goal_reached:
            out.status = "goal"
            break
        if sep is not None and sep < COLLISION_DISTANCE:
            out.status = "collision"
            break
        if k == n_max:
            out.status = "timeout"
            break

        prev_u = white.u
        try:
            white = replace(step_dynamics(white, wp, thrust, dt), t=(k + 1) * dt)
            if red is not None:
                red = replace(step_dynamics(red, config.red.params, red_thrust, dt), t=(k + 1) * dt)
        except ValueError as exc:
            raise SimulationError(k + 1, str(exc)) from exc
    return out


def _wrapped(a: float) -> float:
    return -wrap_angle(-a)


def run_scenario(config: ScenarioConfig, trace_bt: bool = False) -> tuple[SimLog, Metrics]:
    log_ = simulate(config, trace_bt=trace_bt)
    baseline = simulate(config.without_red()) if config.red is not None else None
    return log_, compute_metrics(log_, config, baseline)
