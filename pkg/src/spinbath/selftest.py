"""Built-in cross-checks between independent computation routes.

Each check pits a closed form against the generic machinery that does not
share code with it: closed sector amplitudes against the integrated block
equations, the diagonal-angle formula against the Uhlmann fidelity, the
closed product sensitivity against the spectral evaluation, the closed
probe spectrum against the Jacobi eigensolver, and the memoryless baseline
against a strict zero. Run via the `selftest` subcommand.
"""

from __future__ import annotations

import numpy as np

from .bath import SpinBathParams, channel_at, mode_amplitudes_closed, \
    mode_amplitudes_ode, qfi_ingredients
from .bloch import bloch_to_density
from .damping import amplitude_damping
from .fisher import entangled_eigensystem, entangled_state, probe_derivative, \
    qfi_product_closed, qfi_spectral
from .linalg import hermitian_eigendecompose
from .measures import bures_angle, bures_angle_trajectory, nm_measure

_CAPTION_SETS = ((2.0, 1.0), (6.0, 1.0), (2.0, 6.0))


def _params(epsilon: float, temperature: float) -> SpinBathParams:
    return SpinBathParams(epsilon=epsilon, coupling_j0=1.0,
                          temperature=temperature)


def check_identity_at_zero() -> tuple:
    worst = 0.0
    for eps, temp in _CAPTION_SETS:
        ch = channel_at(_params(eps, temp), 0.0)
        worst = max(worst,
                    float(np.max(np.abs(ch.transform - np.eye(3)))),
                    float(np.max(np.abs(ch.shift))))
    return worst <= 1e-11, f"worst deviation {worst:.2e} (tol 1e-11)"


def check_closed_vs_ode() -> tuple:
    worst = 0.0
    for n in range(6):
        for eps in (2.0, 6.0):
            p = _params(eps, 1.0)
            for t in (0.5, 1.0, 3.0):
                closed = mode_amplitudes_closed(p, n, t)
                ode = mode_amplitudes_ode(p, n, t, dt=1e-4)
                for name in ("a1", "b1", "c1", "d1"):
                    worst = max(worst, abs(abs(getattr(closed, name))
                                           - abs(getattr(ode, name))))
                worst = max(worst,
                            abs(abs(ode.a1) ** 2 + (n + 1) * abs(ode.b1) ** 2 - 1.0),
                            abs(abs(ode.d1) ** 2 + n * abs(ode.c1) ** 2 - 1.0))
    return worst <= 1e-7, f"worst deviation {worst:.2e} (tol 1e-7)"


def check_channel_dual_route() -> tuple:
    worst = 0.0
    for eps, temp in _CAPTION_SETS:
        p = _params(eps, temp)
        for t in (0.5, 2.0):
            a = channel_at(p, t, method="closed")
            b = channel_at(p, t, method="ode")
            worst = max(worst,
                        abs(a.transform[2, 2] - b.transform[2, 2]),
                        abs(a.shift[2] - b.shift[2]),
                        abs(np.hypot(a.transform[0, 0], a.transform[0, 1])
                            - np.hypot(b.transform[0, 0], b.transform[0, 1])))
    return worst <= 1e-7, f"worst deviation {worst:.2e} (tol 1e-7)"


def check_angle_formula_vs_uhlmann() -> tuple:
    p = _params(2.0, 1.0)
    rng = np.random.default_rng(20)
    worst = 0.0
    for _ in range(50):
        t = float(rng.uniform(0.0, 6.0))
        tau = float(rng.uniform(0.0, 4.0))
        closed = bures_angle_trajectory(p, t, tau)
        ch = channel_at(p, t)
        r3_tau = channel_at(p, tau).shift[2]
        rho = bloch_to_density(ch.shift)
        sigma = bloch_to_density(ch.transform @ np.array([0.0, 0.0, r3_tau])
                                 + ch.shift)
        worst = max(worst, abs(closed - bures_angle(rho, sigma)))
    return worst <= 1e-10, f"worst deviation {worst:.2e} (tol 1e-10)"


def check_product_closed_vs_spectral() -> tuple:
    worst = 0.0
    rng = np.random.default_rng(21)
    for eps, temp in _CAPTION_SETS:
        p = _params(eps, temp)
        for t in rng.uniform(0.05, 6.0, size=20):
            ch = channel_at(p, float(t))
            v = ch.transform @ np.array([1.0, 0.0, 0.0]) + ch.shift
            dv = ch.transform @ np.array([0.0, 0.0, -1.0])
            rho = bloch_to_density(v)
            drho = 0.5 * (dv[0] * np.array([[0, 1], [1, 0]], dtype=complex)
                          + dv[1] * np.array([[0, -1j], [1j, 0]])
                          + dv[2] * np.array([[1, 0], [0, -1]], dtype=complex))
            spectral = qfi_spectral(rho, drho)
            closed = qfi_product_closed(ch)
            worst = max(worst, abs(spectral - closed) / max(abs(spectral), 1e-30))
    return worst <= 1e-8, f"worst relative deviation {worst:.2e} (tol 1e-8)"


def check_probe_spectrum() -> tuple:
    worst = 0.0
    rng = np.random.default_rng(22)
    for eps, temp in _CAPTION_SETS:
        p = _params(eps, temp)
        for t in rng.uniform(0.0, 6.0, size=10):
            for theta in (np.pi / 2, np.pi / 3):
                ing = qfi_ingredients(p, float(t), theta=theta)
                closed = entangled_eigensystem(ing).eigenvalues
                numeric = hermitian_eigendecompose(entangled_state(ing)).eigenvalues
                worst = max(worst, float(np.max(np.abs(closed - numeric))),
                            abs(float(np.sum(closed)) - 1.0))
    return worst <= 1e-10, f"worst deviation {worst:.2e} (tol 1e-10)"


def check_probe_qfi_finite_difference() -> tuple:
    p = _params(6.0, 1.0)
    h = 1e-5
    worst = 0.0
    for t in (0.3, 1.1, 2.7):
        for theta in (np.pi / 2, 1.0):
            ing = qfi_ingredients(p, t, theta=theta)
            plus = entangled_state(qfi_ingredients(p, t, theta=theta + h))
            minus = entangled_state(qfi_ingredients(p, t, theta=theta - h))
            fd = (plus - minus) / (2.0 * h)
            exact = qfi_spectral(entangled_state(ing), probe_derivative(ing))
            approx = qfi_spectral(entangled_state(ing), fd)
            worst = max(worst, abs(exact - approx) / max(abs(exact), 1e-30))
    return worst <= 1e-6, f"worst relative deviation {worst:.2e} (tol 1e-6)"


def check_memoryless_baseline() -> tuple:
    taus = np.arange(1, 9) * 0.5
    grid = np.arange(0, 301) * 0.02
    result = nm_measure(lambda t: amplitude_damping(1.0, t), taus, grid)
    return result.measure == 0.0, f"measure {result.measure!r} (expected exactly 0)"


def check_phase_convention_invariance() -> tuple:
    worst = 0.0
    for t in (0.4, 1.3, 3.7):
        entries = []
        for convention in ("ode", "paper"):
            p = SpinBathParams(epsilon=2.0, coupling_j0=1.0, temperature=1.0,
                               phase_convention=convention)
            ch = channel_at(p, t)
            entries.append((ch.transform[2, 2], ch.shift[2],
                            ch.transform[0, 0] ** 2 + ch.transform[0, 1] ** 2))
        worst = max(worst, *(abs(a - b) for a, b in zip(*entries)))
    return worst <= 1e-12, f"worst deviation {worst:.2e} (tol 1e-12)"


CHECKS = (
    ("identity channel at t=0", check_identity_at_zero),
    ("closed sector amplitudes vs integrated blocks", check_closed_vs_ode),
    ("channel assembly, closed vs integrated route", check_channel_dual_route),
    ("diagonal angle formula vs Uhlmann fidelity", check_angle_formula_vs_uhlmann),
    ("product sensitivity, closed vs spectral", check_product_closed_vs_spectral),
    ("probe spectrum, closed vs Jacobi", check_probe_spectrum),
    ("probe sensitivity vs finite difference", check_probe_qfi_finite_difference),
    ("memoryless baseline has zero measure", check_memoryless_baseline),
    ("phase convention invariance", check_phase_convention_invariance),
)


def run_selftest(out=print) -> bool:
    all_ok = True
    for name, check in CHECKS:
        try:
            ok, detail = check()
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok = all_ok and ok
        out(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return all_ok
