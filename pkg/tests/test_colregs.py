import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import mirrored_pair
from zestsim.colregs import (ColregsThresholds, EncounterType, classify_encounter,
                             encounter_cleared, encounter_geometry)
from zestsim.dynamics import VesselState

TH = ColregsThresholds()
E = EncounterType


def classify(own, other, th=TH):
    return classify_encounter(encounter_geometry(own, other), th)


def at(x, y, psi_deg, u):
    return VesselState(x, y, math.radians(psi_deg), u, 0.0)


OWN = at(0, 0, 0, 2.5)


class TestGeometry:
    def test_dead_ahead(self):
        g = encounter_geometry(OWN, at(50, 0, 0, 1))
        assert g.bearing_own_to_other == 0.0 and g.range == 50.0

    def test_due_east(self):
        assert encounter_geometry(OWN, at(0, 50, 0, 1)).bearing_own_to_other == pytest.approx(math.pi / 2)

    def test_equal_velocity_zero_range_rate(self):
        assert encounter_geometry(at(0, 0, 0, 2), at(50, 0, 0, 2)).range_rate == 0.0

    def test_opening_is_positive(self):
        assert encounter_geometry(OWN, at(-50, 0, 180, 1)).range_rate > 0

    def test_degenerate(self):
        with pytest.raises(ValueError, match="degenerate geometry"):
            encounter_geometry(OWN, at(0, 0, 90, 1))

    @given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(-10, 10))
    def test_bearing_range(self, x, y, psi):
        if math.hypot(x, y) < 1e-6:
            return
        g = encounter_geometry(OWN, VesselState(x, y, psi, 1.0))
        assert -math.pi < g.bearing_own_to_other <= math.pi
        assert -math.pi < g.bearing_other_to_own <= math.pi


class TestClassify:
    def test_overtaking(self):
        assert classify(OWN, at(50, 0, 0, 0.5)) is E.OVERTAKING

    def test_head_on(self):
        assert classify(OWN, at(100, 0, 180, 1.5)) is E.HEAD_ON

    def test_crossing_from_starboard(self):
        assert classify(OWN, at(60, 60, -90, 1.5)) is E.CROSSING_GIVE_WAY

    def test_crossing_from_port(self):
        assert classify(OWN, at(20, -40, 90, 1.0)) is E.STAND_ON

    def test_static(self):
        assert classify(OWN, at(30, 0, 0, 0.1)) is E.STATIC_OBSTACLE

    def test_far_is_clear(self):
        assert classify(OWN, at(200, 0, 180, 1.0)) is E.CLEAR

    def test_opening_beyond_release_is_clear(self):
        assert classify(OWN, at(-80, 0, 180, 1.0)) is E.CLEAR

    def test_astern_inside_release_not_overtaken_is_clear(self):
        # other astern, heading away slower: own is not in its stern sector
        assert classify(OWN, at(-30, 0, 180, 1.0)) is E.CLEAR

    def test_rule_numbers(self):
        assert [E.OVERTAKING.rule, E.HEAD_ON.rule, E.CROSSING_GIVE_WAY.rule, E.STAND_ON.rule] == [13, 14, 15, 17]
        assert E.CLEAR.rule is None

    def test_head_on_boundary_goes_to_head_on(self):
        b = TH.head_on_half_angle
        other = VesselState(80 * math.cos(b), 80 * math.sin(b), math.pi, 1.5)
        g = encounter_geometry(OWN, other)
        g = type(g)(g.range, b, g.bearing_other_to_own, math.pi, -1.0, 1.5)
        assert classify_encounter(g, TH) is E.HEAD_ON

    def test_overtake_boundary_exact_and_inside(self):
        def geom(bo):
            return type(encounter_geometry(OWN, at(50, 0, 0, 1)))(
                50.0, 0.3, bo, 0.0, -1.0, 1.0)
        assert classify_encounter(geom(TH.overtake_boundary), TH) is E.OVERTAKING
        assert classify_encounter(geom(TH.overtake_boundary + 1e-9), TH) is E.OVERTAKING
        assert classify_encounter(geom(TH.overtake_boundary - 1e-9), TH) is E.CROSSING_GIVE_WAY

    def test_22_5_deg_abaft_beam(self):
        # own placed exactly 22.5 deg abaft the other's starboard beam, closing
        other = at(0, 0, 0, 0.5)
        a = math.radians(112.5)
        own = VesselState(60 * math.cos(a), 60 * math.sin(a), math.radians(-60), 2.5)
        g = encounter_geometry(own, other)
        assert abs(g.bearing_other_to_own) == pytest.approx(TH.overtake_boundary)

    @settings(max_examples=300)
    @given(st.floats(1, 300), st.floats(-math.pi, math.pi), st.floats(-math.pi, math.pi),
           st.floats(0, 5), st.floats(0, 5))
    def test_total(self, rng_m, b, h, u0, u1):
        other = VesselState(rng_m * math.cos(b), rng_m * math.sin(b), h, u1)
        assert classify(VesselState(u=u0), other) in set(E)

    def test_mirror_fuzz(self):
        rng = np.random.default_rng(2024)
        swap = {E.CROSSING_GIVE_WAY: E.STAND_ON, E.STAND_ON: E.CROSSING_GIVE_WAY}
        for _ in range(1000):
            (o1, t1), (o2, t2) = mirrored_pair(rng)
            c1, c2 = classify(o1, t1), classify(o2, t2)
            assert c2 is swap.get(c1, c1)


class TestThresholds:
    @pytest.mark.parametrize("kw", [{"head_on_half_angle": 0.0}, {"overtake_boundary": 0.1},
                                    {"overtake_boundary": 4.0}, {"release_range": 200.0},
                                    {"reciprocal_tolerance": -0.1}])
    def test_rejects(self, kw):
        with pytest.raises(ValueError):
            ColregsThresholds(**kw)


class TestCleared:
    def test_opening_far_astern(self):
        assert encounter_cleared(encounter_geometry(OWN, at(-100, 0, 180, 1)), TH)

    def test_opening_but_forward(self):
        assert not encounter_cleared(encounter_geometry(OWN, at(100, 0, 0, 4)), TH)

    def test_closing(self):
        assert not encounter_cleared(encounter_geometry(OWN, at(-100, 0, 0, 4)), TH)

    def test_inside_release(self):
        assert not encounter_cleared(encounter_geometry(OWN, at(-40, 0, 180, 1)), TH)
