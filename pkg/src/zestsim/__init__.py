"""Planar simulator for virtual-target guidance, COLREGs behaviour trees and
predictive potential-field collision avoidance of a differential-thrust
catamaran."""
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
