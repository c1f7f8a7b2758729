"""Hyperbolic Dehn filling constants.

Plain float evaluation of closed-form bounds; the decimal constants are
already rounded, so exact arithmetic buys nothing here. The systole of the
unfilled manifold is always an input.
"""
from __future__ import annotations

import math
from typing import NamedTuple

from .errors import DomainError

LHAT_THRESHOLD = 10.69
CORE_SHIFT = 28.78
C_CAP = 0.0735
SYS_FACTOR = 0.5052


class FillingConstants(NamedTuple):
    c: float
    D: float


def normalized_length_lower(q: int) -> float:
    """|q|/5, the normalized-length bound for slopes p/q when the 1/0
    filling is not hyperbolic."""
    return abs(q) / 5


def core_geodesic_bound(lhat: float) -> float:
    """Upper bound 2*pi/(Lhat^2 - 28.78) on the core geodesic length."""
    if lhat < LHAT_THRESHOLD:
        raise DomainError(f"normalized length {lhat} is below {LHAT_THRESHOLD}")
    return 2 * math.pi / (lhat * lhat - CORE_SHIFT)


def filling_constants(sys: float) -> FillingConstants:
    if not sys > 0:
        raise DomainError("the systole must be positive")
    c = min(C_CAP, SYS_FACTOR * sys)
    D = max(LHAT_THRESHOLD, math.sqrt(2 * math.pi / c + CORE_SHIFT))
    return FillingConstants(c, D)


def safe_q_threshold(sys: float) -> float:
    """5D: any |q| above this puts the filling in the rigid regime."""
    return 5 * filling_constants(sys).D
