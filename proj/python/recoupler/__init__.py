"""Pulse-sequence compiler for heteronuclear spin systems.

Builds decoupling and selective-recoupling X-pulse schedules from Hadamard
sign matrices and verifies them with exact integer weights and a brute-force
phase oracle. The heavy lifting lives in the C++ extension ``recoupler._core``.
"""

from recoupler._core import *  # noqa: F401,F403
from recoupler._core import __version__  # noqa: F401
