"""Acceptance criteria, one check per criterion at its stated tolerance.

Each ``criterion_*`` function returns ``(ok, detail)``. Under pytest every
criterion is a test and the summary prints one PASS/FAIL line each; run the
file directly to get the same lines without pytest.
"""
import itertools
import json
import math
import pathlib
import sys
import time

import numpy as np
import pytest

HERE = pathlib.Path(__file__).resolve().parent
if str(HERE) not in sys.path:
    sys.path.insert(0, str(HERE))

from bt_stubs import replay  # noqa: E402
from helpers import mirrored_pair  # noqa: E402
from zestsim import apf  # noqa: E402
from zestsim.apf import FieldParams  # noqa: E402
from zestsim.colregs import ColregsThresholds, EncounterType, classify_encounter, encounter_geometry  # noqa: E402
from zestsim.dynamics import ThrustCommand, VesselParams, VesselState, step_dynamics  # noqa: E402
from zestsim.outputs import log_to_csv, trajectory_svg  # noqa: E402
from zestsim.scenarios import GOLDEN, golden_config, run_golden, signed_offset, track_crossing  # noqa: E402
from zestsim.simulator import simulate  # noqa: E402

RESULTS: dict[str, tuple[bool, str]] = {}


def _record(key, ok, detail):
    RESULTS[key] = (bool(ok), detail)
    return bool(ok), detail


def criterion_1_figure_eight():
    t0 = time.perf_counter()
    log, rep = run_golden("figure8")
    wall = time.perf_counter() - t0
    m = rep.metrics
    ok = (log.status == "goal" and m.cross_track_rms < 1.0 and m.max_cross_track < 3.0 and wall < 5.0)
    return ok, (f"circuit={log.status == 'goal'} rms={m.cross_track_rms:.3f} m (<1.0) "
                f"max={m.max_cross_track:.3f} m (<3.0) runtime={wall:.2f} s (<5)")


def criterion_2_rule13():
    cfg = golden_config("rule13")
    log, rep = run_golden("rule13", cfg)
    m = rep.metrics
    cruise = cfg.white_params.cruise_speed
    active = [r.command_speed for r in log.records if r.leaf == "ApplyRule13"]
    slows = bool(active) and max(active) < cruise
    ok = log.status == "goal" and m.min_separation >= 8.0 and slows
    return ok, (f"goal={log.status == 'goal'} min_sep={m.min_separation:.2f} m (>=8) "
                f"rule-active speed cmd max={max(active) if active else float('nan'):.2f} (<{cruise})")


def criterion_3_rule14():
    cfg = golden_config("rule14")
    log, rep = run_golden("rule14", cfg)
    m = rep.metrics
    rec = next(r for r in log.records if r.t == m.cpa_time)
    east = signed_offset(cfg, rec.white.x, rec.white.y)
    ok = m.min_separation >= 8.0 and rec.white.y > 0.0 and east > 0.0
    return ok, f"min_sep={m.min_separation:.2f} m (>=8) white east offset at CPA={rec.white.y:.2f} m (>0)"


def criterion_4_rule15():
    cfg = golden_config("rule15")
    log, rep = run_golden("rule15", cfg)
    m = rep.metrics
    cross = track_crossing(log)
    ok = m.min_separation >= 8.0 and cross is not None and cross[1] > cross[0]
    lead = float("nan") if cross is None else cross[1] - cross[0]
    return ok, f"min_sep={m.min_separation:.2f} m (>=8) red ahead of crossing point by {lead:.2f} m (>0)"


def criterion_5_rule17():
    log, rep = run_golden("rule17")
    m = rep.metrics
    ok = (math.degrees(m.max_heading_deviation) < 5.0 and m.max_cross_track < 1.5
          and m.min_separation >= 8.0)
    return ok, (f"heading dev={math.degrees(m.max_heading_deviation):.3f} deg (<5) "
                f"xte={m.max_cross_track:.3g} m (<1.5) min_sep={m.min_separation:.2f} m (>=8)")


def criterion_6_bt_oracle():
    cases = json.loads((HERE / "data" / "bt_oracle.json").read_text())
    combos = {(c["kind"], c["recursive"], tuple(c["children"])) for c in cases}
    full = len(cases) == 108 and len(combos) == 108
    bad = [c for c in cases if replay(c) != c["ticks"]]
    return full and not bad, f"{len(cases) - len(bad)}/{len(cases)} cases match (distinct={len(combos)})"


def _rel(f, g):
    return math.hypot(f.fx + g[0], f.fy + g[1]) / max(f.magnitude, 1e-300)


def criterion_7_apf_gradients():
    h = 1e-4
    fp = FieldParams()
    rng = np.random.default_rng(12345)
    worst = 0.0
    n = 0
    while n < 100:
        pos = tuple(rng.uniform(-60, 60, 2))
        goal = tuple(rng.uniform(-60, 60, 2))
        obs = tuple(rng.uniform(-60, 60, 2))
        d = math.hypot(pos[0] - obs[0], pos[1] - obs[1])
        raw = fp.k_rep * (1 / d - 1 / fp.influence_radius) / d ** 2 if d <= fp.influence_radius else 0.0
        # skip clamp regions, the exact-zero outside and the kink at the influence edge
        if d <= fp.min_distance + h or raw >= fp.max_force or d >= fp.influence_radius - h:
            continue

        def grad(u):
            x, y = pos
            return ((u((x + h, y)) - u((x - h, y))) / (2 * h), (u((x, y + h)) - u((x, y - h))) / (2 * h))

        fa = apf.attractive_force(pos, goal, fp.k_att)
        fr = apf.repulsive_force(pos, obs, fp)
        ea = _rel(fa, grad(lambda p: apf.attractive_potential(p, goal, fp.k_att)))
        er = _rel(fr, grad(lambda p: apf.repulsive_potential(p, obs, fp)))
        worst = max(worst, ea, er)
        n += 1
    return worst <= 1e-6, f"100 points, worst relative error {worst:.2e} (<=1e-6)"


def criterion_8_dynamics():
    p = VesselParams(quad_drag_surge=0.0)
    s = VesselState(u=2.0)
    for _ in range(100):
        s = step_dynamics(s, p, ThrustCommand(), 0.1)
    exact = 2.0 * math.exp(-(p.linear_drag_surge / p.mass) * 10.0)
    decay = abs(s.u - exact) / exact

    p = VesselParams()
    s = VesselState(psi=0.3, u=1.0)
    drift = 0.0
    for _ in range(600):
        s = step_dynamics(s, p, ThrustCommand(1000.0, 1000.0), 0.1)
        drift = max(drift, abs(s.psi - 0.3))

    def end(dt):
        s = VesselState(u=2.0)
        for _ in range(int(round(60.0 / dt))):
            s = step_dynamics(s, p, ThrustCommand(1500.0, 600.0), dt)
        return np.array([s.x, s.y])

    ref = end(0.004)
    ratio = np.linalg.norm(end(0.4) - ref) / np.linalg.norm(end(0.2) - ref)
    ok = decay <= 1e-6 and drift < 1e-9 and ratio >= 8.0
    return ok, f"decay rel err={decay:.1e} (<=1e-6) heading drift={drift:.1e} rad (<1e-9) RK4 ratio={ratio:.1f} (>=8)"


def criterion_9_determinism():
    same = 0
    for name in GOLDEN:
        cfg = golden_config(name)
        a, b = simulate(cfg), simulate(cfg)
        if log_to_csv(a) == log_to_csv(b) and trajectory_svg(a, cfg) == trajectory_svg(b, cfg):
            same += 1
    return same == len(GOLDEN), f"{same}/{len(GOLDEN)} scenarios byte-identical (CSV and SVG)"


def criterion_10_mirror():
    th = ColregsThresholds()
    swap = {EncounterType.CROSSING_GIVE_WAY: EncounterType.STAND_ON,
            EncounterType.STAND_ON: EncounterType.CROSSING_GIVE_WAY}
    rng = np.random.default_rng(99)
    bad = 0
    counts = {}
    for _ in range(1000):
        (o1, t1), (o2, t2) = mirrored_pair(rng)
        c1 = classify_encounter(encounter_geometry(o1, t1), th)
        c2 = classify_encounter(encounter_geometry(o2, t2), th)
        counts[c1.value] = counts.get(c1.value, 0) + 1
        if c2 is not swap.get(c1, c1):
            bad += 1
    mix = " ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    return bad == 0, f"{1000 - bad}/1000 mirrored scenes consistent ({mix})"


CRITERIA = [
    ("1 figure-8 tracking", criterion_1_figure_eight),
    ("2 rule 13 overtaking", criterion_2_rule13),
    ("3 rule 14 head-on", criterion_3_rule14),
    ("4 rule 15 give-way crossing", criterion_4_rule15),
    ("5 rule 17 stand-on", criterion_5_rule17),
    ("6 behavior-tree oracle", criterion_6_bt_oracle),
    ("7 APF gradients", criterion_7_apf_gradients),
    ("8 dynamics oracles", criterion_8_dynamics),
    ("9 determinism", criterion_9_determinism),
    ("10 classifier mirror", criterion_10_mirror),
]


@pytest.mark.parametrize("key, fn", CRITERIA, ids=[k for k, _ in CRITERIA])
def test_criterion(key, fn):
    ok, detail = _record(key, *fn())
    print(f"ACCEPTANCE {key}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for key, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(f"ACCEPTANCE {key}: {'PASS' if ok else 'FAIL'} - {detail}")
    sys.exit(1 if failed else 0)
