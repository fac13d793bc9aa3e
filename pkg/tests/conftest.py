"""Shared numeric oracles for the test suite.

Matrices here are built directly from textbook definitions (independent of
the simulator) so pattern extractions have something to be checked against.
Matrix convention: the first qubit of a pattern's input/output ordering is
the most significant bit of the state index.
"""

import math

import numpy as np

SQ2 = math.sqrt(2.0)

I2 = np.eye(2, dtype=complex)
X_MAT = np.array([[0, 1], [1, 0]], dtype=complex)
Z_MAT = np.array([[1, 0], [0, -1]], dtype=complex)
H_MAT = np.array([[1, 1], [1, -1]], dtype=complex) / SQ2
CZ_MAT = np.diag([1, 1, 1, -1]).astype(complex)
CNOT_MAT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
P_HALF_MAT = np.diag([1, 1j]).astype(complex)


def j_mat(theta: float) -> np.ndarray:
    return np.array(
        [[1, np.exp(1j * theta)], [1, -np.exp(1j * theta)]], dtype=complex
    ) / SQ2


def rotation_mat(alpha: float, beta: float, gamma: float) -> np.ndarray:
    return j_mat(0) @ j_mat(alpha) @ j_mat(beta) @ j_mat(gamma)


def ghz_vec(n: int) -> np.ndarray:
    v = np.zeros(2**n, dtype=complex)
    v[0] = v[-1] = 1 / SQ2
    return v


def cu_mat(alpha: float, beta: float, gamma: float, delta: float) -> np.ndarray:
    """Controlled-U from its J-generator decomposition; control is the MSB."""
    a_prime = alpha + (beta + gamma + delta) / 2
    factors = [
        np.kron(I2, j_mat((-beta + delta - math.pi) / 2)),
        CZ_MAT,
        np.kron(I2, j_mat(0)),
        np.kron(I2, j_mat((-math.pi - delta - beta) / 2)),
        np.kron(I2, j_mat(gamma / 2)),
        np.kron(I2, j_mat(math.pi / 2)),
        CZ_MAT,
        np.kron(I2, j_mat(0)),
        np.kron(I2, j_mat(-math.pi / 2)),
        np.kron(I2, j_mat(-gamma / 2)),
        np.kron(I2, j_mat(beta + math.pi)),
        np.kron(I2, j_mat(0)),
        np.kron(j_mat(a_prime), I2),
        np.kron(j_mat(0), I2),
    ]
    u = np.eye(4, dtype=complex)
    for factor in factors:
        u = factor @ u
    return u


def aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius distance after optimal global-phase alignment."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    inner = np.vdot(a, b)
    phase = inner / abs(inner) if abs(inner) > 0 else 1.0
    return float(np.linalg.norm(a * phase - b))


def assert_proportional(a, b, tol=1e-9):
    assert aligned_distance(
        np.asarray(a) / np.linalg.norm(a), np.asarray(b) / np.linalg.norm(b)
    ) < tol
