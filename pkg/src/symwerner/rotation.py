"""SU(2) elements, the adjoint map to SO(3), and qubit-wise conjugation."""
from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np

from .pauli import SIGMA, PauliDecomposition, num_qubits

GROUP_TOL = 1e-10


def check_su2(g: np.ndarray, tol: float = GROUP_TOL) -> np.ndarray:
    g = np.asarray(g, dtype=complex)
    if g.shape != (2, 2):
        raise ValueError(f"SU(2) element must be 2x2, got shape {g.shape}")
    if np.max(np.abs(g @ g.conj().T - np.eye(2))) > tol:
        raise ValueError("matrix is not unitary")
    if abs(np.linalg.det(g) - 1) > tol:
        raise ValueError("determinant is not 1")
    return g


def phi(g: np.ndarray) -> np.ndarray:
    """Rotation with ``g sigma_k g^dagger = sum_j R[j, k] sigma_j``.

    ``R[j, k] = tr(sigma_j g sigma_k g^dagger) / 2`` for j, k over x, y, z.
    """
    g = check_su2(g)
    gd = g.conj().T
    R = np.empty((3, 3))
    for k in range(3):
        conj = g @ SIGMA[k + 1] @ gd
        for j in range(3):
            R[j, k] = 0.5 * np.trace(SIGMA[j + 1] @ conj).real
    return R


def su2_from_quaternion(q: Sequence[float]) -> np.ndarray:
    a, b, c, d = np.asarray(q, dtype=float) / np.linalg.norm(q)
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def haar_random_su2(rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed SU(2) element from a uniform unit quaternion."""
    return su2_from_quaternion(rng.standard_normal(4))


def _adjoint4(g: np.ndarray) -> np.ndarray:
    A = np.eye(4)
    A[1:, 1:] = phi(g)
    return A


def tg_action(g: np.ndarray, d):
    """``g^{(x)n} rho (g^dagger)^{(x)n}``.

    A ``PauliDecomposition`` is transformed slot by slot with ``phi(g)``
    (label 0 fixed); a dense matrix is conjugated directly.
    """
    if isinstance(d, PauliDecomposition):
        return PauliDecomposition.from_array(tg_action_array(g, d.to_array()))
    H = np.asarray(d)
    return local_unitary_action([g] * num_qubits(H), H)


def tg_action_array(g: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """``tg_action`` on a dense ``(4,) * n`` Pauli coefficient tensor."""
    A = _adjoint4(g)
    for axis in range(coeffs.ndim):
        coeffs = np.moveaxis(np.tensordot(A, coeffs, axes=(1, axis)), 0, axis)
    return coeffs


def local_unitary_action(gs: Sequence[np.ndarray], H: np.ndarray) -> np.ndarray:
    """Conjugate ``H`` by ``g_0 (x) g_1 (x) ... (x) g_{n-1}``."""
    H = np.asarray(H, dtype=complex)
    n = num_qubits(H)
    if len(gs) != n:
        raise ValueError(f"need {n} single-qubit unitaries, got {len(gs)}")
    U = reduce(np.kron, [check_su2(g) for g in gs])
    return U @ H @ U.conj().T
