"""Qutrit teleportation under amplitude damping: simulation and phase-estimation bounds."""

from ._core import *  # noqa: F401,F403
from ._core import QuteleError, SchemeKind, Zeta3Variant  # noqa: F401

__version__ = "0.1.0"
