import numpy as np
import pytest

from spinbath import DomainError, hermitian_eigendecompose, psd_sqrt, rk4_linear


def random_hermitian(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (m + m.conj().T)


def test_identity_2x2():
    es = hermitian_eigendecompose(np.eye(2, dtype=complex))
    np.testing.assert_allclose(es.eigenvalues, [1.0, 1.0])


def test_diagonal_2x2():
    es = hermitian_eigendecompose(np.diag([0.2, 0.8]).astype(complex))
    np.testing.assert_allclose(es.eigenvalues, [0.2, 0.8])
    # eigenvector of the smaller value sits on the first axis
    assert abs(abs(es.eigenvectors[0, 0]) - 1.0) < 1e-14
    assert abs(abs(es.eigenvectors[1, 1]) - 1.0) < 1e-14


@pytest.mark.parametrize("dim", [2, 4])
def test_random_hermitian_reconstruction(dim):
    rng = np.random.default_rng(11)
    for _ in range(200):
        m = random_hermitian(rng, dim)
        es = hermitian_eigendecompose(m)
        v = es.eigenvectors
        recon = (v * es.eigenvalues) @ v.conj().T
        assert np.max(np.abs(recon - m)) <= 1e-10 * max(1.0, np.max(np.abs(m)))
        assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) <= 1e-10
        assert np.all(np.diff(es.eigenvalues) >= 0.0)


@pytest.mark.parametrize("dim", [2, 4])
def test_eigenvalues_against_numpy(dim):
    rng = np.random.default_rng(12)
    for _ in range(100):
        m = random_hermitian(rng, dim)
        got = hermitian_eigendecompose(m).eigenvalues
        ref = np.linalg.eigvalsh(m)
        np.testing.assert_allclose(got, ref, atol=1e-11 * max(1.0, np.max(np.abs(m))))


def test_ordering_is_deterministic():
    rng = np.random.default_rng(13)
    m = random_hermitian(rng, 4)
    a = hermitian_eigendecompose(m)
    b = hermitian_eigendecompose(m.copy())
    np.testing.assert_array_equal(a.eigenvalues, b.eigenvalues)
    np.testing.assert_array_equal(a.eigenvectors, b.eigenvectors)


def test_phase_fix_leading_component_real_positive():
    rng = np.random.default_rng(14)
    m = random_hermitian(rng, 4)
    es = hermitian_eigendecompose(m)
    for k in range(4):
        col = es.eigenvectors[:, k]
        lead = next(c for c in col if abs(c) > 1e-12)
        assert lead.real > 0.0
        assert abs(lead.imag) <= 1e-12 * abs(lead)


def test_non_hermitian_rejected():
    with pytest.raises(DomainError):
        hermitian_eigendecompose(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


def test_unsupported_dimension_rejected():
    with pytest.raises(DomainError):
        hermitian_eigendecompose(np.eye(3, dtype=complex))


def test_psd_sqrt_identity_and_diagonal():
    np.testing.assert_allclose(psd_sqrt(np.eye(2, dtype=complex)), np.eye(2),
                               atol=1e-15)
    np.testing.assert_allclose(psd_sqrt(np.diag([4.0, 9.0]).astype(complex)),
                               np.diag([2.0, 3.0]), atol=1e-14)


def test_psd_sqrt_bloch_state():
    # rho = (I + 0.6 sigma_z)/2 has eigenvalues 0.8 and 0.2
    rho = np.diag([0.8, 0.2]).astype(complex)
    root = psd_sqrt(rho)
    es = hermitian_eigendecompose(root)
    np.testing.assert_allclose(es.eigenvalues,
                               [np.sqrt(0.2), np.sqrt(0.8)], atol=1e-14)


def test_psd_sqrt_squares_back():
    rng = np.random.default_rng(15)
    for dim in (2, 4):
        for _ in range(50):
            m = random_hermitian(rng, dim)
            m = m @ m.conj().T  # PSD by construction
            root = psd_sqrt(m)
            assert np.max(np.abs(root @ root - m)) <= 1e-9 * max(1.0, np.max(np.abs(m)))


def test_psd_sqrt_rejects_negative():
    with pytest.raises(DomainError):
        psd_sqrt(np.diag([1.0, -1e-3]).astype(complex))


def test_psd_sqrt_clamps_tiny_negative():
    root = psd_sqrt(np.diag([1.0, -1e-13]).astype(complex))
    np.testing.assert_allclose(root, np.diag([1.0, 0.0]), atol=1e-6)


def test_rk4_zero_generator():
    v0 = np.array([0.3 + 0.1j, -0.2j])
    out = rk4_linear(np.zeros((2, 2)), v0, 5.0, 0.1)
    np.testing.assert_array_equal(out, v0)


def test_rk4_diagonal_phase():
    omega = 1.0
    m = np.diag([omega, -omega]).astype(complex)
    for t in (0.5, 3.0, 10.0):
        out = rk4_linear(m, np.array([1.0, 0.0]), t, 1e-3)
        assert abs(out[0] - np.exp(-1j * omega * t)) <= 1e-8
        assert abs(out[1]) == 0.0


def test_rk4_partial_final_step():
    # t is not a multiple of dt; the last step must land exactly on t
    m = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    out = rk4_linear(m, np.array([1.0, 0.0]), 0.7501, 1e-3)
    exact = np.array([np.cos(0.7501), -1j * np.sin(0.7501)])
    assert np.max(np.abs(out - exact)) <= 1e-10


def test_rk4_convergence_order():
    rng = np.random.default_rng(16)
    m = random_hermitian(rng, 2)
    es = hermitian_eigendecompose(m)
    t = 2.0
    v0 = np.array([0.6, 0.8], dtype=complex)
    exact = (es.eigenvectors * np.exp(-1j * es.eigenvalues * t)) \
        @ es.eigenvectors.conj().T @ v0
    errs = [np.max(np.abs(rk4_linear(m, v0, t, dt) - exact))
            for dt in (0.02, 0.01, 0.005)]
    # global error contracts as dt^4: halving the step gains about 16x
    assert errs[0] / errs[1] > 12.0
    assert errs[1] / errs[2] > 12.0


def test_rk4_norm_conservation_scales_like_dt4():
    # Hermitian generator conserves the norm exactly; the integrator should
    # track it to fourth order per unit time
    m = np.array([[1.0, 0.5 - 0.2j], [0.5 + 0.2j, -1.0]], dtype=complex)
    v0 = np.array([1.0, 0.0], dtype=complex)
    drift = []
    for dt in (0.02, 0.01):
        out = rk4_linear(m, v0, 4.0, dt)
        drift.append(abs(np.linalg.norm(out) - 1.0))
    assert drift[0] <= 1e-6
    assert drift[0] / max(drift[1], 1e-300) > 10.0


def test_rk4_rejects_bad_steps():
    m = np.zeros((2, 2))
    with pytest.raises(DomainError):
        rk4_linear(m, np.array([1.0, 0.0]), 1.0, 0.0)
    with pytest.raises(DomainError):
        rk4_linear(m, np.array([1.0, 0.0]), -1.0, 0.1)
