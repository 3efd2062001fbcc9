"""Shared scene builders for the tests."""
import math

import numpy as np

from zestsim.dynamics import VesselState


def mirrored_pair(rng: np.random.Generator):
    """A random two-vessel scene and its reflection across own's heading axis."""
    psi0 = rng.uniform(-math.pi, math.pi)
    rng_m = rng.uniform(5.0, 160.0)
    bearing = rng.uniform(-math.pi, math.pi)
    rel_heading = rng.uniform(-math.pi, math.pi)
    own_u = rng.uniform(0.5, 4.0)
    other_u = rng.uniform(0.0, 4.0)
    ox, oy = rng.uniform(-100, 100, 2)

    def scene(sign):
        b = psi0 + sign * bearing
        other = VesselState(ox + rng_m * math.cos(b), oy + rng_m * math.sin(b),
                            psi0 + sign * rel_heading, other_u, 0.0)
        return VesselState(ox, oy, psi0, own_u, 0.0), other

    return scene(1.0), scene(-1.0)
