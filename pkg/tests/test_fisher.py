"""Tests for the sensitivity measures and the evolved probe spectrum."""

import numpy as np
import pytest

from spinbath import (
    AffineQubitChannel,
    DomainError,
    SpinBathParams,
    bloch_to_density,
    channel_at,
    derivative_series,
    entangled_eigensystem,
    entangled_state,
    identity_channel,
    probe_derivative,
    qfi_entangled,
    qfi_ingredients,
    qfi_product_closed,
    qfi_spectral,
    qfi_time_series,
)
from spinbath.bloch import PAULIS


def params(epsilon=2.0, temperature=1.0):
    return SpinBathParams(epsilon=epsilon, coupling_j0=1.0,
                          temperature=temperature)


def random_density(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_traceless_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = (a + a.conj().T) / 2.0
    return h - np.trace(h).real * np.eye(dim) / dim


# --------------------------------------------------------------- spectral

def test_spectral_pure_phase_rotation():
    # equatorial pure state under a phase shift carries unit information
    rho = bloch_to_density(np.array([1.0, 0.0, 0.0]))
    drho = 0.5 * PAULIS[1]
    assert abs(qfi_spectral(rho, drho) - 1.0) < 1e-10


def test_spectral_classical_population_rate():
    # commuting family: F = sum (dp_i)^2 / p_i
    q, dq = 0.3, 1.0
    rho = np.diag([q, 1.0 - q]).astype(complex)
    drho = np.diag([dq, -dq]).astype(complex)
    expected = dq ** 2 * (1.0 / q + 1.0 / (1.0 - q))
    assert abs(qfi_spectral(rho, drho) - expected) < 1e-12


def test_spectral_is_unitarily_invariant():
    rng = np.random.default_rng(13)
    for dim in (2, 4):
        for _ in range(15):
            rho = random_density(rng, dim)
            drho = random_traceless_hermitian(rng, dim)
            base = qfi_spectral(rho, drho)
            u, _ = np.linalg.qr(rng.normal(size=(dim, dim))
                                + 1j * rng.normal(size=(dim, dim)))
            rotated = qfi_spectral(u @ rho @ u.conj().T, u @ drho @ u.conj().T)
            assert abs(rotated - base) < 1e-9 * max(1.0, base)


def test_spectral_guards():
    rho = np.eye(2, dtype=complex) / 2.0
    with pytest.raises(DomainError):
        qfi_spectral(rho, np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(DomainError):
        qfi_spectral(rho, np.eye(2, dtype=complex))


# ---------------------------------------------------------- product probe

def test_product_identity_channel_is_unit():
    # the evolved probe is pure, so the correction has a removable zero
    assert qfi_product_closed(identity_channel()) == 1.0


def test_product_synthetic_channel():
    transform = np.array([[0.5, 0.2, 0.0], [-0.2, 0.5, 0.0], [0.0, 0.0, 0.8]])
    ch = AffineQubitChannel(transform, np.array([0.0, 0.0, 0.1]))
    expected = 0.64 + (0.01 * 0.64) / (1.0 - 0.01 - 0.25 - 0.04)
    assert abs(qfi_product_closed(ch) - expected) < 1e-14


def test_product_rejects_singular_mixed_case():
    # evolved probe pure but off-center: the closed form has a true pole
    transform = np.diag([np.sqrt(0.75), np.sqrt(0.75), 0.8])
    ch = AffineQubitChannel(transform, np.array([0.0, 0.0, 0.5]))
    with pytest.raises(DomainError):
        qfi_product_closed(ch)


def test_product_matches_spectral_on_the_bath_channel():
    # the closed form is the Bloch-vector identity
    # F = |du|^2 + (u . du)^2 / (1 - |u|^2) for the evolved equatorial probe
    rng = np.random.default_rng(37)
    for _ in range(15):
        p = params(epsilon=rng.uniform(0.0, 8.0),
                   temperature=rng.uniform(0.3, 6.0))
        ch = channel_at(p, rng.uniform(0.05, 6.0))
        u = ch.transform @ np.array([1.0, 0.0, 0.0]) + ch.shift
        du = ch.transform @ np.array([0.0, 0.0, -1.0])
        closed = qfi_product_closed(ch)
        bloch_form = du @ du + (u @ du) ** 2 / (1.0 - u @ u)
        assert abs(closed - bloch_form) < 1e-10 * max(1.0, closed)
        spectral = qfi_spectral(bloch_to_density(u),
                                0.5 * sum(c * s for c, s in zip(du, PAULIS)))
        assert abs(closed - spectral) < 1e-8 * max(1.0, closed)


# -------------------------------------------------------- entangled probe

def test_probe_at_start_is_the_bell_state():
    ing = qfi_ingredients(params(), 0.0)
    rho = entangled_state(ing)
    expected = np.zeros((4, 4), dtype=complex)
    for i, j in ((0, 0), (0, 3), (3, 0), (3, 3)):
        expected[i, j] = 0.5
    np.testing.assert_allclose(rho, expected, atol=1e-12)
    es = entangled_eigensystem(ing)
    np.testing.assert_allclose(sorted(es.eigenvalues), [0.0, 0.0, 0.0, 1.0],
                               atol=1e-12)


def test_probe_stays_a_state():
    rng = np.random.default_rng(43)
    for _ in range(20):
        p = params(epsilon=rng.uniform(0.0, 8.0),
                   temperature=rng.uniform(0.3, 6.0))
        theta = rng.uniform(0.1, np.pi - 0.1)
        ing = qfi_ingredients(p, rng.uniform(0.0, 6.0), theta=theta)
        rho = entangled_state(ing)
        assert abs(np.trace(rho).real - 1.0) < 1e-12
        np.testing.assert_allclose(rho, rho.conj().T, atol=1e-14)
        es = entangled_eigensystem(ing)
        assert es.eigenvalues.min() > -1e-10
        assert abs(es.eigenvalues.sum() - 1.0) < 1e-10


def test_probe_spectrum_matches_numeric_solver():
    rng = np.random.default_rng(47)
    for _ in range(25):
        p = params(epsilon=rng.uniform(0.0, 8.0),
                   temperature=rng.uniform(0.3, 6.0))
        theta = rng.uniform(0.1, np.pi - 0.1)
        ing = qfi_ingredients(p, rng.uniform(0.0, 6.0), theta=theta)
        rho = entangled_state(ing)
        es = entangled_eigensystem(ing)
        np.testing.assert_allclose(es.eigenvalues, np.linalg.eigvalsh(rho),
                                   atol=1e-10)
        residual = rho @ es.eigenvectors - es.eigenvectors * es.eigenvalues
        assert np.max(np.abs(residual)) < 1e-10
        gram = es.eigenvectors.conj().T @ es.eigenvectors
        np.testing.assert_allclose(gram, np.eye(4), atol=1e-10)


def test_probe_derivative_is_valid_tangent():
    ing = qfi_ingredients(params(), 1.3, theta=1.1)
    drho = probe_derivative(ing)
    np.testing.assert_allclose(drho, drho.conj().T, atol=1e-14)
    assert abs(np.trace(drho)) < 1e-12


def test_entangled_qfi_at_start_is_unit():
    assert abs(qfi_entangled(params(), 0.0) - 1.0) < 1e-9


def test_entangled_qfi_matches_finite_difference():
    h = 1e-5
    for t in (0.6, 1.7, 3.9):
        p = params()
        theta = np.pi / 2.0
        closed = qfi_entangled(p, t, theta)
        hi = entangled_state(qfi_ingredients(p, t, theta=theta + h))
        lo = entangled_state(qfi_ingredients(p, t, theta=theta - h))
        drho_fd = (hi - lo) / (2.0 * h)
        fd = qfi_spectral(entangled_state(qfi_ingredients(p, t, theta=theta)),
                          drho_fd)
        assert abs(fd - closed) < 1e-6 * max(1.0, closed)


def test_entangled_never_below_product():
    for t in (0.5, 1.5, 3.0, 5.0):
        f_ent = qfi_entangled(params(), t)
        f_prod = qfi_product_closed(channel_at(params(), t))
        assert f_ent >= f_prod - 1e-9


def test_time_series_matches_pointwise():
    p = params(epsilon=6.0)
    grid = np.arange(0.0, 1.0001, 0.2)
    series = qfi_time_series(p, np.pi / 2.0, grid)
    np.testing.assert_array_equal(series.t_grid, grid)
    for i, t in enumerate(grid):
        assert series.f_entangled[i] == qfi_entangled(p, float(t))
        assert series.f_product[i] == qfi_product_closed(channel_at(p, float(t)))


# ------------------------------------------------------------ derivatives

def test_derivative_series_linear_is_exact():
    grid = np.arange(0.0, 1.0001, 0.1)
    values = 3.0 * grid - 0.7
    np.testing.assert_allclose(derivative_series(values, grid),
                               np.full_like(grid, 3.0), atol=1e-12)


def test_derivative_series_quadratic_interior():
    grid = np.arange(0.0, 2.0001, 0.05)
    d = derivative_series(grid ** 2, grid)
    np.testing.assert_allclose(d[1:-1], 2.0 * grid[1:-1], atol=1e-10)


def test_derivative_series_guards():
    with pytest.raises(DomainError):
        derivative_series([1.0, 2.0], [0.0, 1.0])
    with pytest.raises(DomainError):
        derivative_series([1.0, 2.0, 3.0], [0.0, 1.0])
