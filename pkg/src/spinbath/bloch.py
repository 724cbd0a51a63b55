"""Bloch vectors and affine qubit channels.

Conventions used throughout the package: the computational basis is ordered
(excited, ground), sigma_z = diag(1, -1) in that ordering, components are
v_mu = Tr[sigma_mu rho], and rho = (I + v . sigma)/2. A channel acts as
v -> T @ v + r.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class AffineQubitChannel:
    """Affine Bloch-space map v -> transform @ v + shift."""

    transform: np.ndarray
    shift: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.transform, dtype=float)
        s = np.asarray(self.shift, dtype=float)
        if t.shape != (3, 3):
            raise DomainError(f"transform must be 3x3, got {t.shape}")
        if s.shape != (3,):
            raise DomainError(f"shift must be a 3-vector, got {s.shape}")
        object.__setattr__(self, "transform", t)
        object.__setattr__(self, "shift", s)


def identity_channel() -> AffineQubitChannel:
    return AffineQubitChannel(np.eye(3), np.zeros(3))


def apply_channel(channel: AffineQubitChannel, v: np.ndarray) -> np.ndarray:
    return channel.transform @ np.asarray(v, dtype=float) + channel.shift


def is_unital(channel: AffineQubitChannel, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(channel.shift)) <= tol)


def maximally_mixed_image(channel: AffineQubitChannel) -> np.ndarray:
    """Bloch vector of the channel output on the maximally mixed input."""
    return channel.shift.copy()


def bloch_to_density(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm > 1.0 + 1e-6:
        raise DomainError(f"Bloch vector norm {norm} exceeds 1")
    rho = 0.5 * (np.eye(2, dtype=complex)
                 + v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z)
    return rho


def density_to_bloch(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    return np.array([np.trace(s @ rho).real for s in PAULIS])


def validate_density(rho: np.ndarray, name: str = "rho") -> np.ndarray:
    """Check trace one, hermiticity and positivity of a 2x2 density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise DomainError(f"{name} must be 2x2, got {rho.shape}")
    if abs(np.trace(rho).real - 1.0) > 1e-12 or abs(np.trace(rho).imag) > 1e-12:
        raise DomainError(f"{name} must have unit trace, got {np.trace(rho)}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise DomainError(f"{name} is not Hermitian")
    rho = 0.5 * (rho + rho.conj().T)
    # closed-form eigenvalues of a 2x2 Hermitian matrix
    mean = 0.5 * np.trace(rho).real
    radius = np.hypot(0.5 * (rho[0, 0].real - rho[1, 1].real), abs(rho[0, 1]))
    if mean - radius < -1e-10:
        raise DomainError(f"{name} has negative eigenvalue {mean - radius:.3e}")
    return rho


def angle_between(v1: np.ndarray, v2: np.ndarray) -> float:
    """Angle between two Bloch vectors; NaN when either norm is below 1e-12."""
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    n1 = np.linalg.norm(v1)
    n2 = np.linalg.norm(v2)
    if n1 < 1e-12 or n2 < 1e-12:
        return float("nan")
    c = np.dot(v1, v2) / (n1 * n2)
    return float(np.arccos(np.clip(c, -1.0, 1.0)))
