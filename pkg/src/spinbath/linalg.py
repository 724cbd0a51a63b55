"""Small dense Hermitian linear algebra and a fixed-step Schroedinger integrator.

Everything here is sized for the 2x2 and 4x4 matrices that appear in the
qubit reduced dynamics. The eigensolver is deliberately self-contained
(closed quadratic for 2x2, cyclic Jacobi rotations for 4x4) so that the
rest of the package does not lean on a library eigensolver it is also
being validated against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError

_HERMITICITY_TOL = 1e-10
_PHASE_TOL = 1e-12


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues in ascending order; eigenvectors[:, k] belongs to eigenvalues[k]."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _ensure_hermitian(m: np.ndarray, tol: float = _HERMITICITY_TOL) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    dev = np.max(np.abs(m - m.conj().T))
    if dev > tol:
        raise DomainError(f"matrix is not Hermitian: max |m - m^dag| = {dev:.3e}")
    return 0.5 * (m + m.conj().T)


def _phase_fix(vec: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the first component above tolerance is real positive."""
    for comp in vec:
        if abs(comp) > _PHASE_TOL:
            return vec * (comp.conjugate() / abs(comp))
    return vec


def ordered_eigensystem(values, vectors) -> EigenSystem:
    """Sort ascending by eigenvalue; break exact ties lexicographically on Re(vector).

    Eigenvector phases are fixed first (leading nonzero component real
    positive), so the ordering and the returned columns are reproducible.
    """
    cols = [_phase_fix(vectors[:, k]) for k in range(len(values))]
    order = sorted(range(len(values)),
                   key=lambda k: (values[k], tuple(cols[k].real)))
    vals = np.array([values[k] for k in order], dtype=float)
    vecs = np.column_stack([cols[k] for k in order])
    return EigenSystem(vals, vecs)


def _eig2(m: np.ndarray) -> EigenSystem:
    a = m[0, 0].real
    b = m[1, 1].real
    c = m[0, 1]
    mean = 0.5 * (a + b)
    radius = np.hypot(0.5 * (a - b), abs(c))
    lo, hi = mean - radius, mean + radius
    if abs(c) < 1e-300:
        return ordered_eigensystem(np.array([a, b]), np.eye(2, dtype=complex))
    # For the upper eigenvalue take whichever null-space formula is
    # better conditioned; the lower eigenvector is its orthogonal complement.
    u1 = np.array([c, hi - a], dtype=complex)
    u2 = np.array([hi - b, np.conj(c)], dtype=complex)
    u = u1 if np.linalg.norm(u1) >= np.linalg.norm(u2) else u2
    u = u / np.linalg.norm(u)
    w = np.array([-np.conj(u[1]), np.conj(u[0])], dtype=complex)
    return ordered_eigensystem(np.array([hi, lo]), np.column_stack([u, w]))


def _jacobi(m: np.ndarray, max_sweeps: int = 50) -> EigenSystem:
    """Cyclic Jacobi for complex Hermitian matrices.

    Each rotation zeroes one off-diagonal pair with the unitary

        U[p,p] = c, U[q,q] = c, U[p,q] = -s*phase, U[q,p] = s*conj(phase)

    where phase = a_pq / |a_pq| and tan(theta) solves the usual 2x2
    secular equation for the phase-stripped real block.
    """
    n = m.shape[0]
    a = m.copy()
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(a))))

    def max_offdiag() -> float:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off = max(off, abs(a[p, q]))
        return off

    for _ in range(max_sweeps):
        if max_offdiag() <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-18 * scale:
                    continue
                phase = apq / r
                tau = (a[p, p].real - a[q, q].real) / (2.0 * r)
                sign = 1.0 if tau >= 0.0 else -1.0
                t = sign / (abs(tau) + np.sqrt(tau * tau + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                u = np.eye(n, dtype=complex)
                u[p, p] = c
                u[q, q] = c
                u[p, q] = -s * phase
                u[q, p] = s * np.conj(phase)
                a = u.conj().T @ a @ u
                v = v @ u
    else:
        if max_offdiag() > 1e-15 * scale:
            raise ConsistencyError("Jacobi sweep limit reached without convergence")
    return ordered_eigensystem(np.diag(a).real.copy(), v)


def hermitian_eigendecompose(m: np.ndarray) -> EigenSystem:
    """Eigendecompose a 2x2 or 4x4 Hermitian matrix.

    The input is symmetrized as (m + m^dag)/2 after a hermiticity check at
    1e-10; a larger deviation raises DomainError. Ordering is ascending by
    eigenvalue, with exact ties broken by the lexicographic order of the
    phase-fixed eigenvector real parts, so repeated calls are reproducible.
    """
    m = _ensure_hermitian(m)
    if m.shape[0] == 2:
        return _eig2(m)
    if m.shape[0] == 4:
        return _jacobi(m)
    raise DomainError(f"unsupported dimension {m.shape[0]}; expected 2 or 4")


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in [-1e-6, 0) are treated as roundoff and clamped to zero;
    anything more negative raises DomainError.
    """
    es = hermitian_eigendecompose(m)
    if es.eigenvalues[0] < -1e-6:
        raise DomainError(
            f"matrix is not positive semidefinite: min eigenvalue {es.eigenvalues[0]:.3e}")
    root = np.sqrt(np.clip(es.eigenvalues, 0.0, None))
    out = (es.eigenvectors * root) @ es.eigenvectors.conj().T
    return 0.5 * (out + out.conj().T)


def rk4_linear(coeff: np.ndarray, v0: np.ndarray, t: float, dt: float) -> np.ndarray:
    """Integrate i dv/dt = coeff @ v from 0 to t with classic fixed-step RK4.

    For a constant linear generator the classic RK4 step is exactly the
    fourth-degree Taylor polynomial of the step propagator, so the update
    matrix is formed once and applied by repeated squaring. The final
    partial step is shortened to land exactly on t.
    """
    if dt <= 0.0:
        raise DomainError(f"dt must be positive, got {dt}")
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    a = -1j * np.asarray(coeff, dtype=complex)
    v = np.asarray(v0, dtype=complex).copy()
    if t == 0.0:
        return v

    def step(h: float) -> np.ndarray:
        ha = h * a
        ha2 = ha @ ha
        return (np.eye(a.shape[0], dtype=complex) + ha + ha2 / 2.0
                + ha2 @ ha / 6.0 + ha2 @ ha2 / 24.0)

    ratio = t / dt
    n_full = int(np.floor(ratio))
    if ratio - n_full > 1.0 - 1e-9:
        n_full += 1
    if n_full > 0:
        v = np.linalg.matrix_power(step(dt), n_full) @ v
    rem = t - n_full * dt
    if rem > dt * 1e-12:
        v = step(rem) @ v
    return v
