"""Reduced qubit dynamics in a thermal bath of exchange-coupled spins.

The model: a central qubit with level splitting epsilon couples with
strength J0 to a large bath of spins that interact among themselves with
exchange constant J. In the thermodynamic limit the bath excitations
behave like a collective bosonic mode, and the reduced dynamics becomes an
exact thermal mixture over excitation sectors. Within the sector holding n
excitations the joint amplitudes obey two closed 2x2 systems,

    i d/dt (A1, B1) = [[eps/2,      J0 (n+1)], [J0,    2J - eps/2]] (A1, B1)
    i d/dt (C1, D1) = [[eps/2 - 2J, J0      ], [J0 n,  -eps/2    ]] (C1, D1)

started from (1, 0) and (0, 1). Each block is a detuned Rabi problem with
frequency

    omega_ab = sqrt(J0^2 (n+1) + (J - eps/2)^2)
    omega_cd = sqrt(J0^2 n     + (J - eps/2)^2)

and solvable in closed form; integrating the blocks numerically gives an
independent route to the same channel, which selftest and the test suite
exploit.

Tracing out the bath leaves an affine Bloch channel whose transverse block
is the rotation/contraction built from kappa = sum_n w_n A1 D1* and whose
longitudinal entries follow from the populations. The thermal weights are
w_n = exp(-2 J n / T) / Z with Z = 1 / (1 - exp(-2 J / T)).

Two phase conventions are supported for the (C1, D1) block. "ode" keeps
the phases generated by the block equations above, under which the J0 -> 0
limit gives the bare precession kappa = exp(-i eps t). "paper" flips the
sign of the global phase factor on that block, a form common in closed-form
tabulations of this model. The two differ by a rigid frame rotation: every
population, length and fidelity reported by this package is identical
under either choice.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .bloch import AffineQubitChannel
from .errors import ConsistencyError, DomainError
from .linalg import rk4_linear

PHASE_CONVENTIONS = ("ode", "paper")

_FREQ_FLOOR = 1e-14


@dataclass(frozen=True)
class SpinBathParams:
    """Model parameters. Energies are in units of the bath exchange J.

    epsilon        qubit level splitting
    coupling_j0    qubit-bath coupling
    temperature    bath temperature (same units)
    coupling_j     bath exchange constant, the unit of energy
    trunc_tol      tail tolerance for the thermal sector sum
    n_cap          hard cap on the number of retained sectors
    """

    epsilon: float
    coupling_j0: float
    temperature: float
    coupling_j: float = 1.0
    trunc_tol: float = 1e-12
    n_cap: int = 10000
    phase_convention: str = "ode"

    def __post_init__(self):
        if self.coupling_j <= 0.0:
            raise DomainError(f"coupling_j must be positive, got {self.coupling_j}")
        if self.temperature <= 0.0:
            raise DomainError(f"temperature must be positive, got {self.temperature}")
        if not 0.0 < self.trunc_tol < 1e-3:
            raise DomainError(f"trunc_tol must lie in (0, 1e-3), got {self.trunc_tol}")
        if self.n_cap < 1:
            raise DomainError(f"n_cap must be at least 1, got {self.n_cap}")
        if self.phase_convention not in PHASE_CONVENTIONS:
            raise DomainError(
                f"phase_convention must be one of {PHASE_CONVENTIONS}, "
                f"got {self.phase_convention!r}")


@dataclass(frozen=True)
class ModeAmplitudes:
    """Joint amplitudes of one bath excitation sector at a fixed time.

    a1, b1 solve the excited-qubit block from (1, 0); c1, d1 the
    ground-qubit block from (0, 1). omega_ab and omega_cd are the block
    frequencies. Unitarity of each block conserves

        |a1|^2 + (n+1) |b1|^2 = 1      |d1|^2 + n |c1|^2 = 1.
    """

    n: int
    a1: complex
    b1: complex
    c1: complex
    d1: complex
    omega_ab: float
    omega_cd: float


@dataclass(frozen=True)
class ThermalWeights:
    """Normalized sector weights w_n for n = 0..n_max, plus the partition sum."""

    z: float
    weights: np.ndarray
    n_max: int
    capped: bool = False


def thermal_weights(params: SpinBathParams) -> ThermalWeights:
    """Geometric thermal weights, truncated where the tail stops mattering.

    The cut n_max is the smallest n with (n + 2) w_n < trunc_tol; the factor
    (n + 2) covers the n-weighted sums the channel assembles. If n_cap is
    reached first, the result is flagged and a warning is emitted.
    """
    q = np.exp(-2.0 * params.coupling_j / params.temperature)
    z = 1.0 / (1.0 - q)
    n = 0
    w = 1.0 / z
    capped = False
    while (n + 2) * w >= params.trunc_tol:
        if n >= params.n_cap:
            capped = True
            break
        n += 1
        w = q ** n / z
    if capped:
        warnings.warn(
            f"thermal sector sum hit n_cap={params.n_cap} before reaching "
            f"trunc_tol={params.trunc_tol}; results are truncated",
            RuntimeWarning, stacklevel=2)
    ns = np.arange(n + 1)
    return ThermalWeights(z=z, weights=q ** ns / z, n_max=n, capped=capped)


def _sin_over(omega, t: float):
    """sin(omega t) / omega with the removable zero-frequency limit."""
    small = omega < _FREQ_FLOOR
    safe = np.where(small, 1.0, omega)
    return np.where(small, t, np.sin(safe * t) / safe)


def _closed_blocks(params: SpinBathParams, n, t: float):
    """Closed-form sector amplitudes; n may be a float scalar or array."""
    x = params.coupling_j - 0.5 * params.epsilon
    j0 = params.coupling_j0
    omega_ab = np.sqrt(j0 * j0 * (n + 1.0) + x * x)
    omega_cd = np.sqrt(j0 * j0 * n + x * x)
    sab = _sin_over(omega_ab, t)
    scd = _sin_over(omega_cd, t)
    phase = np.exp(-1j * params.coupling_j * t)
    a1 = phase * (np.cos(omega_ab * t) + 1j * x * sab)
    b1 = phase * (-1j * j0 * sab)
    cd_phase = np.conj(phase) if params.phase_convention == "ode" else phase
    c1 = cd_phase * (-1j * j0 * scd)
    d1 = cd_phase * (np.cos(omega_cd * t) - 1j * x * scd)
    return a1, b1, c1, d1, omega_ab, omega_cd


def mode_amplitudes_closed(params: SpinBathParams, n: int, t: float) -> ModeAmplitudes:
    """Closed-form amplitudes of sector n at time t."""
    if n < 0:
        raise DomainError(f"sector index must be nonnegative, got {n}")
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    a1, b1, c1, d1, wab, wcd = _closed_blocks(params, float(n), t)
    return ModeAmplitudes(n=n, a1=complex(a1), b1=complex(b1),
                          c1=complex(c1), d1=complex(d1),
                          omega_ab=float(wab), omega_cd=float(wcd))


def mode_amplitudes_ode(params: SpinBathParams, n: int, t: float,
                        dt: float = 1e-4) -> ModeAmplitudes:
    """Sector amplitudes by direct integration of the block equations.

    Independent of the closed forms; used as the cross-validation route.
    The "paper" phase convention is applied as a frame factor afterwards,
    since the equations themselves generate the "ode" phases.
    """
    if n < 0:
        raise DomainError(f"sector index must be nonnegative, got {n}")
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    eps = params.epsilon
    j = params.coupling_j
    j0 = params.coupling_j0
    m_ab = np.array([[0.5 * eps, j0 * (n + 1.0)],
                     [j0, 2.0 * j - 0.5 * eps]], dtype=complex)
    m_cd = np.array([[0.5 * eps - 2.0 * j, j0],
                     [j0 * n, -0.5 * eps]], dtype=complex)
    ab = rk4_linear(m_ab, np.array([1.0, 0.0]), t, dt)
    cd = rk4_linear(m_cd, np.array([0.0, 1.0]), t, dt)
    if params.phase_convention == "paper":
        cd = cd * np.exp(-2j * j * t)
    x = j - 0.5 * eps
    return ModeAmplitudes(n=n,
                          a1=complex(ab[0]), b1=complex(ab[1]),
                          c1=complex(cd[0]), d1=complex(cd[1]),
                          omega_ab=float(np.sqrt(j0 * j0 * (n + 1.0) + x * x)),
                          omega_cd=float(np.sqrt(j0 * j0 * n + x * x)))


def _thermal_sums(params: SpinBathParams, t: float, method: str, ode_dt: float):
    """Thermal moments of the sector amplitudes used by the channel.

    Returns (alpha, comp_alpha, beta, comp_beta, kappa) where
    alpha = sum w_n |a1|^2, comp_alpha = sum w_n (n+1) |b1|^2 and the pair
    (beta, comp_beta) is the same for the ground block. Unitarity makes
    comp_alpha = 1 - alpha and comp_beta = 1 - beta up to the thermal tail.
    """
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    tw = thermal_weights(params)
    ns = np.arange(tw.n_max + 1, dtype=float)
    if method == "closed":
        a1, b1, c1, d1, _, _ = _closed_blocks(params, ns, t)
    elif method == "ode":
        amps = [mode_amplitudes_ode(params, n, t, ode_dt) for n in range(tw.n_max + 1)]
        a1 = np.array([a.a1 for a in amps])
        b1 = np.array([a.b1 for a in amps])
        c1 = np.array([a.c1 for a in amps])
        d1 = np.array([a.d1 for a in amps])
    else:
        raise DomainError(f"unknown amplitude method {method!r}")
    w = tw.weights
    alpha = float(np.sum(w * np.abs(a1) ** 2))
    comp_alpha = float(np.sum(w * (ns + 1.0) * np.abs(b1) ** 2))
    beta = float(np.sum(w * ns * np.abs(c1) ** 2))
    comp_beta = float(np.sum(w * np.abs(d1) ** 2))
    kappa = complex(np.sum(w * a1 * np.conj(d1)))
    return alpha, comp_alpha, beta, comp_beta, kappa


def channel_at(params: SpinBathParams, t: float, method: str = "closed",
               ode_dt: float = 1e-4) -> AffineQubitChannel:
    """Thermal-limit reduced channel at time t.

    The transverse block is the rotation/contraction

        [[Re kappa,  Im kappa], [-Im kappa,  Re kappa]]

    with kappa = sum_n w_n a1 d1*; the longitudinal entries are
    T33 = alpha - beta and r3 = alpha + beta - 1 in terms of the thermal
    populations alpha = sum w_n |a1|^2 and beta = sum w_n n |c1|^2. At
    t = 0 the channel is the identity up to the truncated thermal tail.

    method="ode" assembles the same channel from the integrated block
    equations instead of the closed forms.
    """
    alpha, comp_alpha, beta, comp_beta, kappa = _thermal_sums(params, t, method, ode_dt)
    t33 = 0.5 * (alpha - comp_alpha + comp_beta - beta)
    r3 = 0.5 * (alpha - comp_alpha - comp_beta + beta)
    transform = np.array([[kappa.real, kappa.imag, 0.0],
                          [-kappa.imag, kappa.real, 0.0],
                          [0.0, 0.0, t33]])
    return AffineQubitChannel(transform, np.array([0.0, 0.0, r3]))


@dataclass(frozen=True)
class XStateIngredients:
    """Thermal scalars that assemble the evolved two-qubit probe state.

    alpha and beta are the excited- and ground-block populations, xi and
    delta their unitarity complements (xi = 1 - alpha, delta = 1 - beta),
    kappa the transverse decoherence factor and theta the probe mixing
    angle. The evolved probe is an X-shaped matrix in the product basis.
    """

    alpha: float
    beta: float
    xi: float
    delta: float
    kappa: complex
    theta: float = np.pi / 2


def qfi_ingredients(params: SpinBathParams, t: float,
                    theta: float = np.pi / 2) -> XStateIngredients:
    """Evolved-probe ingredients at time t.

    xi and delta are computed from the channel entries, then checked
    against their unitarity identities; disagreement beyond 1e-8 raises
    ConsistencyError since it would mean the sector sums have gone bad.
    """
    alpha, comp_alpha, beta, comp_beta, kappa = _thermal_sums(params, t, "closed", 1e-4)
    t33 = 0.5 * (alpha - comp_alpha + comp_beta - beta)
    r3 = 0.5 * (alpha - comp_alpha - comp_beta + beta)
    xi = alpha - t33 - r3
    delta = beta + t33 - r3
    for label, value, ref in (("xi", xi, 1.0 - alpha), ("delta", delta, 1.0 - beta)):
        if abs(value - ref) > 1e-8:
            raise ConsistencyError(
                f"{label} = {value} violates its unitarity identity ({ref})")
    return XStateIngredients(alpha=alpha, beta=beta, xi=xi, delta=delta,
                             kappa=kappa, theta=theta)
