"""Thermal vacuum numerics for a single oscillator mode in the doubled (thermofield) space."""

from .doubled import DoubledSpace, doubled, lift_physical, lift_tilde, tilde_conjugate
from .fock import FockSpace, Ket, LinOp, Statistics, make_space
from .thermal import ThermalParams, ThermalState, mixing_angle, vacuum

__version__ = "0.1.0"

__all__ = [
    "DoubledSpace",
    "FockSpace",
    "Ket",
    "LinOp",
    "Statistics",
    "ThermalParams",
    "ThermalState",
    "doubled",
    "lift_physical",
    "lift_tilde",
    "make_space",
    "mixing_angle",
    "tilde_conjugate",
    "vacuum",
]
