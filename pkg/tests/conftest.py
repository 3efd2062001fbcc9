import math

import pytest

from zestsim.dynamics import VesselParams, VesselState


@pytest.fixture
def params():
    return VesselParams()


def north(x=0.0, y=0.0, u=0.0, psi=0.0, r=0.0):
    return VesselState(x, y, psi, u, r)


def heading_deg(deg):
    return math.radians(deg)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, _ in CRITERIA:
        if key in RESULTS:
            ok, detail = RESULTS[key]
            terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
