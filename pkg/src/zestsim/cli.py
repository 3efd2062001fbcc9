"""Command-line front end.

    zestsim list
    zestsim suite [--list] [--out DIR] [--seed N] [--dt S] [--dump-bt] [--safety-scale K]
    zestsim run FILE [same flags]
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict

from . import __version__
from .config import ConfigError, load_scenario
from .outputs import render_trajectory_svg, write_log_csv
from .scenarios import GOLDEN, RunReport, golden_config, run_golden, with_overrides
from .simulator import ScenarioConfig, SimulationError, run_scenario

log = logging.getLogger("zestsim")


def _write_artifacts(out_dir, name, sim_log, config, dump_bt) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{name}.csv")
    svg_path = os.path.join(out_dir, f"{name}.svg")
    write_log_csv(sim_log, csv_path)
    render_trajectory_svg(sim_log, config, svg_path)
    paths = [csv_path, svg_path]
    if dump_bt and sim_log.bt_trace is not None:
        bt_path = os.path.join(out_dir, f"{name}.bt.txt")
        with open(bt_path, "w", encoding="utf-8") as fh:
            for t, trace in sim_log.bt_trace:
                fh.write(f"{t!r} " + " ".join(f"{n}:{s.value}" for n, s in trace) + "\n")
        paths.append(bt_path)
    return paths


def _write_report(out_dir, report: RunReport) -> str:
    path = os.path.join(out_dir, f"{report.name}.report.json")
    # runtime is wall clock and left out so reports stay deterministic
    data = {"name": report.name, "version": __version__, "status": report.status,
            "metrics": asdict(report.metrics), "checks": report.checks,
            "passed": report.passed, "artifacts": report.artifacts}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _print_report(report: RunReport) -> None:
    mark = "PASS" if report.passed else "FAIL"
    m = report.metrics
    sep = "-" if m.min_separation is None else f"{m.min_separation:.2f}"
    print(f"{report.name:10s} {mark}  status={report.status} min_sep={sep} "
          f"xte_rms={m.cross_track_rms:.3f} runtime={report.runtime:.2f}s")
    for label, ok in report.checks.items():
        print(f"    [{'x' if ok else ' '}] {label}")


def cmd_list(args) -> int:
    for name in GOLDEN:
        print(name)
    return 0


def cmd_suite(args) -> int:
    if args.list:
        return cmd_list(args)
    ok = True
    for name in GOLDEN:
        config = with_overrides(golden_config(name), args.seed, args.dt, args.safety_scale)
        sim_log, report = run_golden(name, config, trace_bt=args.dump_bt)
        report.artifacts = _write_artifacts(args.out, name, sim_log, config, args.dump_bt)
        report.artifacts.append(_write_report(args.out, report))
        _print_report(report)
        ok = ok and report.passed
    print("all scenarios passed" if ok else "some scenarios FAILED")
    return 0 if ok else 1


def cmd_run(args) -> int:
    config: ScenarioConfig = with_overrides(load_scenario(args.file), args.seed, args.dt,
                                            args.safety_scale)
    if config.name in GOLDEN:
        sim_log, report = run_golden(config.name, config, trace_bt=args.dump_bt)
    else:
        sim_log, metrics = run_scenario(config, trace_bt=args.dump_bt)
        # an ad-hoc scenario has one bound: keep the safety distance
        report = RunReport(config.name, metrics,
                           {"min separation >= safety radius": not metrics.colregs_violation},
                           status=sim_log.status)
    report.artifacts = _write_artifacts(args.out, config.name, sim_log, config, args.dump_bt)
    report.artifacts.append(_write_report(args.out, report))
    _print_report(report)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="out", help="output directory (default: out)")
    common.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    common.add_argument("--dt", type=float, default=None, help="override the time step [s]")
    common.add_argument("--dump-bt", action="store_true", help="write the per-tick node status log")
    common.add_argument("--safety-scale", type=float, default=1.0,
                        help="multiply the safety radius (and the separation bound) by K")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="zestsim", description="Planar COLREGs surface vessel simulator")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="print the golden scenario names").set_defaults(func=cmd_list)
    suite = sub.add_parser("suite", parents=[common], help="run the golden scenarios")
    suite.add_argument("--list", action="store_true", help="print the scenario names and exit")
    suite.set_defaults(func=cmd_suite)
    run = sub.add_parser("run", parents=[common], help="run a scenario file")
    run.add_argument("file")
    run.set_defaults(func=cmd_run)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, SimulationError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
