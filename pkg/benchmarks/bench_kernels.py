"""Compare the compiled kernels with their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times each kernel on the same inputs with both backends, checks the results
agree bit for bit, then times a full golden scenario under each backend (the
pure-Python run is a subprocess with ZESTSIM_PURE_PYTHON=1) and compares
the two CSV logs.
"""
import argparse
import os
import subprocess
import sys
import timeit

from zestsim import _pykernels
from zestsim.guidance import make_lemniscate_path

try:
    from zestsim import _ckernels
except ImportError:
    _ckernels = None

RK4_ARGS = (1.0, 2.0, 0.3, 2.4, 0.05, 1200.0, 900.0, 6000.0, 40000.0, 2.0,
            900.0, 250.0, 25000.0, 20000.0, 0.1)
SCAN_ARGS = (0.0, 0.0, 2.5, 0.0, 120.0, 3.0, -1.5, 0.0, 60.0, 0.1)

SCENARIO_SNIPPET = (
    "import hashlib, time; from zestsim.scenarios import run_golden; from zestsim import BACKEND;"
    "from zestsim.outputs import log_to_csv;"
    "t=time.perf_counter(); log, _ = run_golden('{name}'); dt=time.perf_counter()-t;"
    "print(BACKEND, dt, hashlib.sha256(log_to_csv(log).encode()).hexdigest())"
)


def _cases():
    path = make_lemniscate_path(40.0, 4096)
    return {
        "rk4_step": (lambda m: m.rk4_step(*RK4_ARGS), 20000),
        "scan_min_separation": (lambda m: m.scan_min_separation(*SCAN_ARGS), 2000),
        "polyline_nearest": (lambda m: m.polyline_nearest(13.0, 7.0, path.xs, path.ys), 2000),
    }


def bench_kernels(repeat: int):
    rows = []
    for name, (call, number) in _cases().items():
        py = min(timeit.repeat(lambda: call(_pykernels), number=number, repeat=repeat)) / number
        if _ckernels is None:
            rows.append((name, py, None, None))
            continue
        cy = min(timeit.repeat(lambda: call(_ckernels), number=number, repeat=repeat)) / number
        rows.append((name, py, cy, call(_pykernels) == call(_ckernels)))
    return rows


def bench_scenario(name: str):
    out, digests = {}, set()
    for pure in ("0", "1"):
        env = dict(os.environ, ZESTSIM_PURE_PYTHON=pure)
        res = subprocess.run([sys.executable, "-c", SCENARIO_SNIPPET.format(name=name)],
                             env=env, capture_output=True, text=True, check=True)
        backend, secs, digest = res.stdout.split()
        out[backend] = float(secs)
        digests.add(digest)
    return out, len(digests) == 1


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--scenario", default="rule14")
    args = ap.parse_args(argv)

    print(f"{'kernel':22s} {'python [us]':>12s} {'cython [us]':>12s} {'speedup':>8s}  identical")
    for name, py, cy, same in bench_kernels(args.repeat):
        if cy is None:
            print(f"{name:22s} {py * 1e6:12.2f} {'n/a':>12s}")
        else:
            print(f"{name:22s} {py * 1e6:12.2f} {cy * 1e6:12.2f} {py / cy:8.1f}  {same}")
    times, same = bench_scenario(args.scenario)
    print(f"\nscenario {args.scenario}: " + ", ".join(f"{k} {v:.3f} s" for k, v in sorted(times.items()))
          + f", identical logs: {same}")


if __name__ == "__main__":
    main()
