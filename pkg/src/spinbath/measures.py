"""Fidelity-based distances and the information-backflow measure.

The distinguishability witness is the Bures angle D_B = arccos F between
the evolved maximally mixed state and the evolved image of the state the
channel itself prepared a lag tau earlier. Any growth of that angle in t
signals information flowing back from the environment; the measure
accumulates the positive variation over a time grid and takes the worst
case over a grid of lag values.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .bath import SpinBathParams, channel_at
from .bloch import AffineQubitChannel, apply_channel, bloch_to_density, \
    maximally_mixed_image, validate_density
from .errors import ConsistencyError, DomainError
from .linalg import psd_sqrt

ChannelFamily = Callable[[float], AffineQubitChannel]


def uhlmann_fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Uhlmann fidelity F = Tr sqrt(sqrt(rho) sigma sqrt(rho)) of two qubit states."""
    rho = validate_density(rho, "rho")
    sigma = validate_density(sigma, "sigma")
    root = psd_sqrt(rho)
    inner = root @ sigma @ root
    f = float(np.trace(psd_sqrt(inner)).real)
    return min(max(f, 0.0), 1.0)


def bures_angle(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Bures angle arccos(F), in [0, pi/2]."""
    return float(np.arccos(uhlmann_fidelity(rho, sigma)))


def _sqrt_clamped(arg: float) -> float:
    if arg < -1e-9:
        raise ConsistencyError(f"square-root argument {arg:.3e} is too negative")
    return float(np.sqrt(max(arg, 0.0)))


def bures_angle_diagonal(r3_t: float, t33_t: float, r3_tau: float) -> float:
    """Closed-form Bures angle between the two z-axis trajectory states.

    Both states are diagonal: the evolved maximally mixed state with z
    component r3_t, and the lag-tau trajectory state with z component
    r3_t + t33_t * r3_tau. For commuting states the fidelity collapses to
    the classical Bhattacharyya overlap of the populations, giving

        D_B = arccos (1/2) sum_{s = +-1} sqrt((1 + s r3_t)
                                              (1 + s r3_t + s t33_t r3_tau)).
    """
    total = 0.0
    for s in (1.0, -1.0):
        total += _sqrt_clamped((1.0 + s * r3_t)
                               * (1.0 + s * (r3_t + t33_t * r3_tau)))
    return float(np.arccos(min(max(0.5 * total, 0.0), 1.0)))


def bures_angle_trajectory(params: SpinBathParams, t: float, tau: float) -> float:
    """Closed-form trajectory Bures angle for the spin-bath channel."""
    ch_t = channel_at(params, t)
    r3_t = ch_t.shift[2]
    t33_t = ch_t.transform[2, 2]
    r3_tau = channel_at(params, tau).shift[2]
    return bures_angle_diagonal(r3_t, t33_t, r3_tau)


@dataclass(frozen=True)
class BuresSeries:
    """Trajectory Bures angle over a time grid at fixed lag tau."""

    tau: float
    t_grid: np.ndarray
    angles: np.ndarray


def bures_series(params: SpinBathParams, tau: float,
                 t_grid: Sequence[float]) -> BuresSeries:
    t_grid = np.asarray(t_grid, dtype=float)
    r3_tau = channel_at(params, tau).shift[2]
    angles = np.empty_like(t_grid)
    for i, t in enumerate(t_grid):
        ch = channel_at(params, t)
        angles[i] = bures_angle_diagonal(ch.shift[2], ch.transform[2, 2], r3_tau)
    return BuresSeries(tau=float(tau), t_grid=t_grid, angles=angles)


@dataclass(frozen=True)
class NMResult:
    """Backflow measure: worst-case positive variation of the Bures angle.

    per_tau holds (tau, partial measure) for every lag on the grid;
    measure is their maximum, attained at argmax_tau (smallest lag wins a
    tie). argmax_on_boundary flags an argmax on the last grid point, a hint
    that the configured lag window may be cutting the supremum short.
    """

    measure: float
    argmax_tau: float
    per_tau: tuple
    argmax_on_boundary: bool


def _check_grid(grid: np.ndarray, name: str, must_start_at_zero: bool) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise DomainError(f"{name} must not be empty")
    if grid.ndim != 1:
        raise DomainError(f"{name} must be one-dimensional")
    if np.any(np.diff(grid) <= 0.0):
        raise DomainError(f"{name} must be strictly increasing")
    if must_start_at_zero and abs(grid[0]) > 1e-12:
        raise DomainError(f"{name} must start at 0, got {grid[0]}")
    if grid[0] < 0.0:
        raise DomainError(f"{name} must be nonnegative")
    return grid


def nm_measure(channel_family: ChannelFamily, tau_grid: Sequence[float],
               t_grid: Sequence[float]) -> NMResult:
    """Backflow measure of a channel family over lag and time grids.

    For each lag tau, the two trajectory states at time t are built from
    the family itself (the evolved maximally mixed state and the evolved
    lag-tau preparation) and compared with the Uhlmann fidelity; the
    partial measure is the summed positive variation of the Bures angle
    over the time grid. If the final tenth of the time window contributes
    more than one percent of the winning partial measure, a warning is
    emitted, since the window is then likely clipping revivals.
    """
    tau_grid = _check_grid(tau_grid, "tau_grid", must_start_at_zero=False)
    t_grid = _check_grid(t_grid, "t_grid", must_start_at_zero=True)

    channels = [channel_family(float(t)) for t in t_grid]
    mm_states = [bloch_to_density(maximally_mixed_image(ch)) for ch in channels]

    per_tau = []
    best = -1.0
    best_tau = float(tau_grid[0])
    best_increments = None
    for tau in tau_grid:
        prepared = maximally_mixed_image(channel_family(float(tau)))
        angles = np.empty(t_grid.size)
        for i, ch in enumerate(channels):
            evolved = bloch_to_density(apply_channel(ch, prepared))
            angles[i] = bures_angle(mm_states[i], evolved)
        increments = np.diff(angles)
        partial = float(np.sum(increments[increments > 0.0]))
        per_tau.append((float(tau), partial))
        if partial > best:
            best = partial
            best_tau = float(tau)
            best_increments = increments
    assert best_increments is not None

    if best > 0.0:
        tail_start = t_grid[0] + 0.9 * (t_grid[-1] - t_grid[0])
        tail = best_increments[(t_grid[1:] > tail_start) & (best_increments > 0.0)]
        if float(np.sum(tail)) > 0.01 * best:
            warnings.warn(
                f"the final 10% of the time window contributes more than 1% of "
                f"the measure at tau={best_tau}; consider a longer window",
                RuntimeWarning, stacklevel=2)

    return NMResult(measure=best, argmax_tau=best_tau, per_tau=tuple(per_tau),
                    argmax_on_boundary=bool(best_tau == float(tau_grid[-1])))
