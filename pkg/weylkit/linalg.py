#!/usr/bin/env python3
"""
Small complex linear algebra for two-qubit gates.

Gates are numpy complex128 arrays: Mat2 has shape (2, 2), Gate4 has shape
(4, 4). Basis order is |00>, |01>, |10>, |11> and the first Kronecker factor
acts on qubit 1.
"""

from __future__ import annotations

import logging
from functools import reduce

import numpy as np

from shared.config import get_settings
from shared.errors import NoConvergenceError, NotUnitaryError

logger = logging.getLogger(__name__)


def _frozen(rows) -> np.ndarray:
    array = np.array(rows, dtype=np.complex128)
    array.flags.writeable = False
    return array


# Pauli matrices, exact entries
I2 = _frozen([[1, 0], [0, 1]])
SX = _frozen([[0, 1], [1, 0]])
SY = _frozen([[0, -1j], [1j, 0]])
SZ = _frozen([[1, 0], [0, -1]])
PAULIS = {"I": I2, "X": SX, "Y": SY, "Z": SZ}

I4 = _frozen(np.eye(4))


def as_gate(matrix, shape: tuple[int, int] = (4, 4)) -> np.ndarray:
    """Convert to a complex128 array of the given shape."""
    array = np.asarray(matrix, dtype=np.complex128)
    if array.shape != shape:
        raise ValueError(f"Expected matrix of shape {shape}, got {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError("Matrix has non-finite entries")
    return array


def kron(a, b) -> np.ndarray:
    """Kronecker product a ⊗ b of two 2x2 matrices."""
    return np.kron(as_gate(a, (2, 2)), as_gate(b, (2, 2)))


def local_layer(a, b) -> np.ndarray:
    """Local gate a ⊗ b; Pauli labels such as "X" are accepted."""
    if isinstance(a, str):
        a = PAULIS[a]
    if isinstance(b, str):
        b = PAULIS[b]
    return kron(a, b)


def dagger(g) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.asarray(g)).T


def transpose(g) -> np.ndarray:
    """Plain transpose, no conjugation."""
    return np.asarray(g).T


def matmul(*factors) -> np.ndarray:
    """Matrix product, leftmost factor applied last."""
    if not factors:
        raise ValueError("matmul needs at least one factor")
    return reduce(np.matmul, (np.asarray(f, dtype=np.complex128) for f in factors))


def trace(g) -> complex:
    return complex(np.trace(g))


def det(g) -> complex:
    """Determinant (LU with partial pivoting)."""
    return complex(np.linalg.det(g))


def unitarity_deviation(g) -> float:
    """Largest absolute entry of U†U - I."""
    g = np.asarray(g, dtype=np.complex128)
    return float(np.max(np.abs(dagger(g) @ g - np.eye(g.shape[0]))))


def is_unitary(g, tol: float | None = None) -> bool:
    if tol is None:
        tol = get_settings().tolerances.unitary
    return unitarity_deviation(g) <= tol


def assert_unitary(g, tol: float | None = None) -> np.ndarray:
    """Return g as a Gate4 if it is unitary within tol.

    Raises:
        NotUnitaryError: max |(U†U - I)_jk| exceeds tol
    """
    if tol is None:
        tol = get_settings().tolerances.unitary
    if tol <= 0:
        raise ValueError("tol must be positive")
    gate = np.asarray(g, dtype=np.complex128)
    if gate.shape not in ((2, 2), (4, 4)) or not np.all(np.isfinite(gate)):
        raise NotUnitaryError("Not a finite 2x2 or 4x4 matrix",
                              {"shape": gate.shape, "deviation": float("inf")})
    deviation = unitarity_deviation(gate)
    if deviation > tol:
        raise NotUnitaryError("Matrix is not unitary", {"deviation": deviation, "tol": tol})
    return gate


def eig4(g) -> np.ndarray:
    """Eigenvalues of a 4x4 matrix, unordered, repeated by multiplicity.

    Raises:
        NoConvergenceError: the eigenvalue iteration failed
    """
    g = as_gate(g)
    try:
        values = np.linalg.eigvals(g)
    except np.linalg.LinAlgError as e:
        raise NoConvergenceError(f"Eigenvalue iteration failed: {e}")
    if not np.all(np.isfinite(values)):
        raise NoConvergenceError("Eigenvalues are not finite")
    return values


def characteristic_polynomial(g) -> np.ndarray:
    """Coefficients of det(λI - g), highest degree first."""
    return np.poly(as_gate(g))
