"""The five golden scenarios and their acceptance bounds.

Each scenario pairs a pinned :class:`ScenarioConfig` with a check function
that turns a finished run into named pass/fail entries of a
:class:`RunReport`.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from dataclasses import field as dc_field
from typing import Callable

from .dynamics import VesselState
from .simulator import (Metrics, PathSpec, RedScript, ScenarioConfig, SimLog, run_scenario)

FIG8_RUNTIME_LIMIT = 5.0
FIG8_RMS_LIMIT = 1.0
FIG8_MAX_XTE_LIMIT = 3.0
STAND_ON_HEADING_LIMIT = math.radians(5.0)
STAND_ON_XTE_LIMIT = 1.5


@dataclass
class RunReport:
    name: str
    metrics: Metrics
    checks: dict[str, bool] = dc_field(default_factory=dict)
    artifacts: list[str] = dc_field(default_factory=list)
    status: str = ""
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())


def _red(x, y, psi, speed) -> RedScript:
    return RedScript(state=VesselState(x, y, psi, speed, 0.0), speed=speed)


def _rule_config(name, red, goal) -> ScenarioConfig:
    return ScenarioConfig(name=name, white_state=VesselState(0.0, 0.0, 0.0, 2.5, 0.0),
                          route=PathSpec(goal=goal), red=red, max_time=400.0)


def figure_eight() -> ScenarioConfig:
    return ScenarioConfig(
        name="figure8",
        white_state=VesselState(0.0, 0.0, math.pi / 4, 2.5, 0.0),
        route=PathSpec(kind="lemniscate", amplitude=40.0, n_samples=4096),
        max_time=400.0,
    )


def rule13() -> ScenarioConfig:
    return _rule_config("rule13", _red(40.0, 0.0, 0.0, 0.5), (160.0, 0.0))


def rule14() -> ScenarioConfig:
    return _rule_config("rule14", _red(120.0, 0.0, math.pi, 1.5), (200.0, 0.0))


def rule15() -> ScenarioConfig:
    return _rule_config("rule15", _red(60.0, 60.0, -math.pi / 2, 1.5), (160.0, 0.0))


def rule17() -> ScenarioConfig:
    return _rule_config("rule17", _red(20.0, -40.0, math.pi / 2, 1.0), (160.0, 0.0))


def signed_offset(config: ScenarioConfig, x: float, y: float) -> float:
    """Offset from a straight route, positive to starboard of the direction of travel."""
    path = config.route.build(config.white_state)
    (x0, y0), (x1, y1) = path.start, path.end
    dx, dy = x1 - x0, y1 - y0
    n = math.hypot(dx, dy)
    # starboard of heading atan2(dy, dx) is (-dy, dx)
    return ((x - x0) * -dy + (y - y0) * dx) / n


def track_crossing(log: SimLog) -> tuple[float, float] | None:
    """Where the white vessel first crosses the red vessel's track line.

    Returns (white_along, red_along): along-track positions of the crossing
    point and of the red vessel at that moment, both measured along red's
    heading from red's initial position.
    """
    recs = log.records
    if not recs or recs[0].red is None:
        return None
    r0 = recs[0].red
    hx, hy = math.cos(r0.psi), math.sin(r0.psi)

    def side(rec):
        # signed distance of white from red's track line
        return (rec.white.x - r0.x) * -hy + (rec.white.y - r0.y) * hx

    for a, b in zip(recs, recs[1:]):
        sa, sb = side(a), side(b)
        if sa == 0.0 or sa * sb < 0.0:
            w = 0.0 if sa == 0.0 else sa / (sa - sb)
            px = a.white.x + w * (b.white.x - a.white.x)
            py = a.white.y + w * (b.white.y - a.white.y)
            rx = a.red.x + w * (b.red.x - a.red.x)
            ry = a.red.y + w * (b.red.y - a.red.y)
            along_p = (px - r0.x) * hx + (py - r0.y) * hy
            along_r = (rx - r0.x) * hx + (ry - r0.y) * hy
            return along_p, along_r
    return None


def _sep_ok(m: Metrics, config: ScenarioConfig) -> bool:
    return m.min_separation is not None and m.min_separation >= config.field.safety_radius


def check_figure_eight(log, m, config, runtime):
    return {
        "completes circuit": log.status == "goal",
        f"cross-track rms < {FIG8_RMS_LIMIT} m": m.cross_track_rms < FIG8_RMS_LIMIT,
        f"max cross-track < {FIG8_MAX_XTE_LIMIT} m": m.max_cross_track < FIG8_MAX_XTE_LIMIT,
        f"runtime < {FIG8_RUNTIME_LIMIT} s": runtime < FIG8_RUNTIME_LIMIT,
    }


def check_rule13(log, m, config, runtime):
    cruise = config.white_params.cruise_speed
    active = [r.command_speed for r in log.records if r.leaf == "ApplyRule13"]
    return {
        "reaches goal": log.status == "goal",
        "min separation >= safety radius": _sep_ok(m, config),
        "slows while overtaking": bool(active) and max(active) < cruise,
    }


def check_rule14(log, m, config, runtime):
    east = False
    if m.cpa_time is not None:
        rec = next(r for r in log.records if r.t == m.cpa_time)
        east = signed_offset(config, rec.white.x, rec.white.y) > 0.0
    return {
        "min separation >= safety radius": _sep_ok(m, config),
        "starboard of track at CPA": east,
    }


def check_rule15(log, m, config, runtime):
    cross = track_crossing(log)
    return {
        "min separation >= safety radius": _sep_ok(m, config),
        "passes astern of red": cross is not None and cross[1] > cross[0],
    }


def check_rule17(log, m, config, runtime):
    return {
        "min separation >= safety radius": _sep_ok(m, config),
        "heading deviation < 5 deg": m.max_heading_deviation < STAND_ON_HEADING_LIMIT,
        f"cross-track < {STAND_ON_XTE_LIMIT} m": m.max_cross_track < STAND_ON_XTE_LIMIT,
    }


Check = Callable[[SimLog, Metrics, ScenarioConfig, float], dict]

GOLDEN: dict[str, tuple[Callable[[], ScenarioConfig], Check]] = {
    "figure8": (figure_eight, check_figure_eight),
    "rule13": (rule13, check_rule13),
    "rule14": (rule14, check_rule14),
    "rule15": (rule15, check_rule15),
    "rule17": (rule17, check_rule17),
}


def golden_config(name: str) -> ScenarioConfig:
    try:
        return GOLDEN[name][0]()
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}") from None


def with_overrides(config: ScenarioConfig, seed: int | None = None, dt: float | None = None,
                   safety_scale: float = 1.0) -> ScenarioConfig:
    """Apply command-line overrides to a scenario."""
    if seed is not None:
        config = replace(config, seed=seed)
    if dt is not None:
        config = replace(config, dt=dt)
    if safety_scale != 1.0:
        if not safety_scale > 0:
            raise ValueError("safety scale must be positive")
        config = replace(config, field=replace(config.field,
                                               safety_radius=config.field.safety_radius * safety_scale))
    return config


def run_golden(name: str, config: ScenarioConfig | None = None,
               trace_bt: bool = False) -> tuple[SimLog, RunReport]:
    """Run one golden scenario (optionally with a modified config) and check its bounds."""
    if config is None:
        config = golden_config(name)
    check = GOLDEN[name][1]
    t0 = time.perf_counter()
    log, metrics = run_scenario(config, trace_bt=trace_bt)
    runtime = time.perf_counter() - t0
    report = RunReport(name, metrics, check(log, metrics, config, runtime),
                       status=log.status, runtime=runtime)
    return log, report
