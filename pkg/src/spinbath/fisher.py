"""Quantum Fisher information for the probe protocols.

The estimated parameter is the probe mixing angle theta. Two protocols are
compared: a product probe, whose sensitivity after the channel reduces to a
closed form in the channel entries, and an entangled two-qubit probe with
one half stored, whose evolved state stays X-shaped in the product basis
and is handled spectrally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bath import SpinBathParams, XStateIngredients, qfi_ingredients, channel_at
from .bloch import AffineQubitChannel
from .errors import ConsistencyError, DomainError
from .linalg import EigenSystem, hermitian_eigendecompose, ordered_eigensystem

_NULL_SPACE_TOL = 1e-12


def qfi_spectral(rho: np.ndarray, drho: np.ndarray) -> float:
    """Quantum Fisher information from the symmetric logarithmic derivative.

    In the eigenbasis of rho,

        F = sum_{m,k} 2 |<m| drho |k>|^2 / (p_m + p_k)

    with pairs skipped when p_m + p_k <= 1e-12 (the null-space block, which
    carries no information).
    """
    rho = np.asarray(rho, dtype=complex)
    drho = np.asarray(drho, dtype=complex)
    if np.max(np.abs(drho - drho.conj().T)) > 1e-9:
        raise DomainError("drho is not Hermitian")
    if abs(np.trace(drho)) > 1e-9:
        raise DomainError(f"drho must be traceless, got trace {np.trace(drho)}")
    es = hermitian_eigendecompose(rho)
    d = es.eigenvectors.conj().T @ drho @ es.eigenvectors
    p = es.eigenvalues
    f = 0.0
    for m in range(p.size):
        for k in range(p.size):
            s = p[m] + p[k]
            if s > _NULL_SPACE_TOL:
                f += 2.0 * abs(d[m, k]) ** 2 / s
    return float(f)


def qfi_product_closed(channel: AffineQubitChannel) -> float:
    """Closed-form product-probe sensitivity at the optimal theta = pi/2.

        F = T33^2 + r3^2 T33^2 / (1 - r3^2 - T11^2 - T12^2)

    The denominator is 1 - |v|^2 for the evolved equatorial probe, so it
    vanishes only when that state is pure; there the correction term has a
    removable zero and F -> T33^2. A vanishing denominator with a finite
    numerator would mean the channel entries are unphysical.
    """
    t = channel.transform
    r3 = channel.shift[2]
    t33 = t[2, 2]
    num = r3 * r3 * t33 * t33
    den = 1.0 - r3 * r3 - t[0, 0] ** 2 - t[0, 1] ** 2
    if den < 1e-12:
        if num < 1e-12:
            return float(t33 * t33)
        raise DomainError(
            f"singular sensitivity: denominator {den:.3e} with numerator {num:.3e}")
    return float(t33 * t33 + num / den)


def _x_parts(ing: XStateIngredients):
    """Diagonal entries and corner of the evolved probe, plus trig factors."""
    c2 = np.cos(0.5 * ing.theta) ** 2
    s2 = np.sin(0.5 * ing.theta) ** 2
    st = np.sin(ing.theta)
    diag = np.array([c2 * ing.alpha ** 2 + s2 * ing.beta ** 2,
                     c2 * ing.alpha * ing.xi + s2 * ing.beta * ing.delta,
                     c2 * ing.alpha * ing.xi + s2 * ing.beta * ing.delta,
                     c2 * ing.xi ** 2 + s2 * ing.delta ** 2])
    corner = 0.5 * st * ing.kappa ** 2
    return diag, corner, c2, s2, st


def entangled_state(ing: XStateIngredients) -> np.ndarray:
    """Evolved two-qubit probe in the ordered product basis (ee, eg, ge, gg).

    One half of cos(theta/2)|ee> + sin(theta/2)|gg> passes through the
    channel, the other is stored. Populations mix through the block
    weights while the only surviving coherence is the ee-gg corner
    proportional to kappa^2.
    """
    diag, corner, _, _, _ = _x_parts(ing)
    rho = np.diag(diag.astype(complex))
    rho[0, 3] = corner
    rho[3, 0] = np.conj(corner)
    eig_min = min(entangled_eigensystem(ing).eigenvalues)
    if eig_min < -1e-9:
        raise ConsistencyError(
            f"evolved probe has negative eigenvalue {eig_min:.3e}")
    return rho


def entangled_eigensystem(ing: XStateIngredients) -> EigenSystem:
    """Closed-form spectral decomposition of the evolved probe.

    The middle levels eg and ge are exact eigenvectors with the shared
    eigenvalue c^2 alpha xi + s^2 beta delta; the corner block mixes ee
    with gg, giving the pair

        avg +- (1/2) sqrt(diff^2 + sin(theta)^2 |kappa^2|^2)

    where avg and diff are the mean and difference of the two outer
    populations. Corner eigenvectors come from the 2x2 null-space ratio
    x / y = corner / (eigenvalue - rho_ee); if the better-conditioned
    denominator still sits below 1e-14 the block is handed to the numeric
    eigensolver instead.
    """
    diag, corner, _, _, _ = _x_parts(ing)
    rho_ee, mid, _, rho_gg = diag
    avg = 0.5 * (rho_ee + rho_gg)
    disc = 0.5 * np.hypot(rho_ee - rho_gg, 2.0 * abs(corner))
    outer_hi = avg + disc
    outer_lo = avg - disc

    dim = 4
    vecs = np.zeros((dim, 2), dtype=complex)
    dens = (outer_hi - rho_ee, outer_lo - rho_ee)
    pick = int(np.argmax(np.abs(dens)))
    if abs(dens[pick]) < 1e-14:
        block = np.array([[rho_ee, corner], [np.conj(corner), rho_gg]],
                         dtype=complex)
        es2 = hermitian_eigendecompose(block)
        # ascending from the 2x2 solver: columns (lo, hi)
        lo_vec, hi_vec = es2.eigenvectors[:, 0], es2.eigenvectors[:, 1]
    else:
        ratio = corner / dens[pick]
        y = 1.0 / np.sqrt(1.0 + abs(ratio) ** 2)
        picked = np.array([ratio * y, y], dtype=complex)
        other = np.array([-np.conj(picked[1]), np.conj(picked[0])], dtype=complex)
        hi_vec, lo_vec = (picked, other) if pick == 0 else (other, picked)

    values = np.array([outer_hi, mid, mid, outer_lo])
    vectors = np.zeros((dim, dim), dtype=complex)
    vectors[0, 0], vectors[3, 0] = hi_vec
    vectors[1, 1] = 1.0
    vectors[2, 2] = 1.0
    vectors[0, 3], vectors[3, 3] = lo_vec
    return ordered_eigensystem(values, vectors)


def probe_derivative(ing: XStateIngredients) -> np.ndarray:
    """d rho / d theta of the evolved probe.

    The block weights alpha, beta, xi, delta do not depend on theta, so
    only the preparation angle differentiates: the outer populations trade
    weight at rate sin(theta) and the corner rotates at cos(theta).
    """
    c2w = -0.5 * np.sin(ing.theta)
    s2w = 0.5 * np.sin(ing.theta)
    ct = np.cos(ing.theta)
    diag = np.array([c2w * ing.alpha ** 2 + s2w * ing.beta ** 2,
                     c2w * ing.alpha * ing.xi + s2w * ing.beta * ing.delta,
                     c2w * ing.alpha * ing.xi + s2w * ing.beta * ing.delta,
                     c2w * ing.xi ** 2 + s2w * ing.delta ** 2])
    drho = np.diag(diag.astype(complex))
    drho[0, 3] = 0.5 * ct * ing.kappa ** 2
    drho[3, 0] = np.conj(drho[0, 3])
    return drho


def qfi_entangled(params: SpinBathParams, t: float,
                  theta: float = np.pi / 2) -> float:
    """Entangled-probe sensitivity at time t, evaluated spectrally."""
    ing = qfi_ingredients(params, t, theta=theta)
    return qfi_spectral(entangled_state(ing), probe_derivative(ing))


@dataclass(frozen=True)
class QFISeries:
    """Both protocol sensitivities over a common time grid."""

    t_grid: np.ndarray
    f_entangled: np.ndarray
    f_product: np.ndarray


def qfi_time_series(params: SpinBathParams, theta: float,
                    t_grid: Sequence[float]) -> QFISeries:
    t_grid = np.asarray(t_grid, dtype=float)
    f_ent = np.empty_like(t_grid)
    f_prod = np.empty_like(t_grid)
    for i, t in enumerate(t_grid):
        f_ent[i] = qfi_entangled(params, float(t), theta)
        f_prod[i] = qfi_product_closed(channel_at(params, float(t)))
    return QFISeries(t_grid=t_grid, f_entangled=f_ent, f_product=f_prod)


def derivative_series(values: Sequence[float], grid: Sequence[float]) -> np.ndarray:
    """Central-difference derivative on the interior, one-sided at the ends."""
    values = np.asarray(values, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if values.shape != grid.shape or values.ndim != 1:
        raise DomainError("values and grid must be 1d arrays of equal length")
    if grid.size < 3:
        raise DomainError(f"need at least 3 grid points, got {grid.size}")
    out = np.empty_like(values)
    out[1:-1] = (values[2:] - values[:-2]) / (grid[2:] - grid[:-2])
    out[0] = (values[1] - values[0]) / (grid[1] - grid[0])
    out[-1] = (values[-1] - values[-2]) / (grid[-1] - grid[-2])
    return out
