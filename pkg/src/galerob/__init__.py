"""Gale-Robinson quivers, Laurent recurrences and calibrated degree sets."""

from .errors import GaleRobinsonError
from .quiver import ArrowKind, GRParams, Quiver, build_quiver
from .laurent import LaurentPoly, gr_sequence
from .degreeset import DegreeSet, build_Sj, build_cyclic, f_polynomial
from .theta import theta, theta_inverse, theta_orbit

__all__ = [
    "ArrowKind",
    "DegreeSet",
    "GRParams",
    "GaleRobinsonError",
    "LaurentPoly",
    "Quiver",
    "build_Sj",
    "build_cyclic",
    "build_quiver",
    "f_polynomial",
    "gr_sequence",
    "theta",
    "theta_inverse",
    "theta_orbit",
]
