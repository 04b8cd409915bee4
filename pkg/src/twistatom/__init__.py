"""Twisted-photon absorption by hydrogen-like atoms.

Transition amplitudes versus photon opening angle, twisted Bessel photon
fields, and synthesis of the twisted center-of-mass state of the recoiling
atom, all in atomic units.
"""

from .errors import (ConfigError, DomainError, KinematicsError, NumericsError,
                     OutputError, SelectionError, TwistatomError)
from .hydrogenic import BoundOrbital, OrbitalValue, orbital_energy
from .photon import ALPHA, ParaxialProfile, PlaneWavePhoton, SpinVector, TwistedPhoton
from .matrixel import TransitionAmplitude, TransitionChannel
from .cmstate import CMTwistedState, ComplexGrid, KinematicConfig
from .scenarios import ZeemanSetting

__all__ = [
    "ALPHA", "BoundOrbital", "CMTwistedState", "ComplexGrid", "ConfigError",
    "DomainError", "KinematicsError", "KinematicConfig", "NumericsError",
    "OrbitalValue", "OutputError", "ParaxialProfile", "PlaneWavePhoton",
    "SelectionError", "SpinVector", "TransitionAmplitude", "TransitionChannel",
    "TwistatomError", "TwistedPhoton", "ZeemanSetting", "orbital_energy",
]
