#!/usr/bin/env python3
"""
Bell-basis transform and the local invariants (G1, G2) of two-qubit gates.

Two gates are locally equivalent (differ only by single-qubit gates before
and after) exactly when their invariants agree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from shared.config import get_settings
from shared.errors import NotUnitaryError

from .linalg import assert_unitary, dagger, det, kron, matmul, trace, transpose

logger = logging.getLogger(__name__)

# Columns are the magic (Bell) basis states; this matrix is the only
# Bell-basis convention used anywhere in the package.
BELL_Q = (1.0 / np.sqrt(2.0)) * np.array(
    [[1, 0, 0, 1j],
     [0, 1j, 1, 0],
     [0, 1j, -1, 0],
     [1, 0, 0, -1j]], dtype=np.complex128)
BELL_Q.flags.writeable = False

assert_unitary(BELL_Q, 1e-12)


@dataclass(frozen=True)
class LocalInvariants:
    """Makhlin invariants: complex G1 and real G2."""
    g1: complex
    g2: float

    def distance(self, other: "LocalInvariants") -> float:
        """Largest of |ΔG1| and |ΔG2|."""
        return max(abs(self.g1 - other.g1), abs(self.g2 - other.g2))

    def is_close(self, other: "LocalInvariants", tol: float | None = None) -> bool:
        if tol is None:
            tol = get_settings().tolerances.equivalence
        return abs(self.g1 - other.g1) <= tol and abs(self.g2 - other.g2) <= tol

    def as_tuple(self) -> tuple[float, float, float]:
        """(Re G1, Im G1, G2)."""
        return (self.g1.real, self.g1.imag, self.g2)

    def __str__(self) -> str:
        return f"G1 = {self.g1.real:+.12g}{self.g1.imag:+.12g}i, G2 = {self.g2:+.12g}"


def bell_transform(u) -> np.ndarray:
    """U_B = Q† U Q."""
    return dagger(BELL_Q) @ np.asarray(u, dtype=np.complex128) @ BELL_Q


def from_bell(u_b) -> np.ndarray:
    """Inverse of bell_transform: U = Q U_B Q†."""
    return BELL_Q @ np.asarray(u_b, dtype=np.complex128) @ dagger(BELL_Q)


def m_matrix(u) -> np.ndarray:
    """M(U) = U_B^T U_B, a complex-symmetric unitary."""
    u_b = bell_transform(u)
    return matmul(transpose(u_b), u_b)


def local_invariants(u, tol: float | None = None) -> LocalInvariants:
    """Compute (G1, G2) of a two-qubit gate.

    The det(U) normalization makes the result independent of global phase.

    Raises:
        NotUnitaryError: input is not unitary, or G2 has a significant
            imaginary part
    """
    tolerances = get_settings().tolerances
    u = assert_unitary(u, tol if tol is not None else tolerances.unitary)

    m = m_matrix(u)
    det_u = det(u)
    tr_m = trace(m)
    tr_m2 = trace(matmul(m, m))

    g1 = tr_m * tr_m / (16.0 * det_u)
    g2 = (tr_m * tr_m - tr_m2) / (4.0 * det_u)

    if abs(g2.imag) > tolerances.g2_imag:
        raise NotUnitaryError("G2 has a nonzero imaginary part",
                              {"imag": float(g2.imag), "tol": tolerances.g2_imag})

    # -0.0 + 0.0 = 0.0
    return LocalInvariants(g1=complex(g1) + 0.0, g2=float(g2.real) + 0.0)


def locally_equivalent(u, v, tol: float | None = None) -> bool:
    """True iff u and v have the same local invariants within tol."""
    return local_invariants(u).is_close(local_invariants(v), tol)


def random_su2(rng: np.random.Generator) -> np.ndarray:
    """Haar-random SU(2) element from a normalized Gaussian quaternion."""
    q = rng.standard_normal(4)
    q /= np.linalg.norm(q)
    a = complex(q[0], q[3])
    b = complex(q[2], q[1])
    return np.array([[a, -b.conjugate()],
                     [b, a.conjugate()]], dtype=np.complex128)


def random_local_gate(rng: np.random.Generator) -> np.ndarray:
    """Haar-random k1 ⊗ k2 with k1, k2 in SU(2)."""
    return kron(random_su2(rng), random_su2(rng))
