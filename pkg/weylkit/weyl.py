#!/usr/bin/env python3
"""
Weyl-chamber geometry of two-qubit gates.

A local equivalence class is a point [c1, c2, c3] (radians) of the
tetrahedron O A1 A2 A3:

    0 <= c3 <= c2 <= min(c1, pi - c1),  0 <= c1 <= pi

The base triangles L A2 A1 and L A2 O (c3 = 0) are mirror images of each
other, so [c1, c2, 0] and [pi - c1, c2, 0] are the same class. Perfect
entanglers form the polyhedron L M N P Q A2 inside the chamber.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from scipy.linalg import expm

from shared.config import get_settings
from shared.errors import NoConvergenceError

from .invariants import LocalInvariants, local_invariants, m_matrix
from .linalg import SX, SY, SZ, assert_unitary, det, eig4, kron

logger = logging.getLogger(__name__)

PI = np.pi
HALF_PI = np.pi / 2


@dataclass(frozen=True)
class WeylPoint:
    """Canonical coordinates [c1, c2, c3] in radians."""
    c1: float
    c2: float
    c3: float

    @classmethod
    def of(cls, c) -> "WeylPoint":
        """Build from a WeylPoint or any length-3 sequence."""
        if isinstance(c, WeylPoint):
            return c
        c1, c2, c3 = (float(x) for x in c)
        return cls(c1, c2, c3)

    def __iter__(self) -> Iterator[float]:
        return iter((self.c1, self.c2, self.c3))

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3], dtype=float)

    def in_pi_units(self) -> tuple[float, float, float]:
        return (self.c1 / PI, self.c2 / PI, self.c3 / PI)

    def distance(self, other) -> float:
        """Largest per-coordinate difference."""
        return float(np.max(np.abs(self.as_array() - WeylPoint.of(other).as_array())))

    def __str__(self) -> str:
        return "[" + ", ".join(f"{x:.6g}π" for x in self.in_pi_units()) + "]"


@dataclass(frozen=True)
class NamedPoint:
    """A labelled vertex or edge midpoint of the chamber."""
    label: str
    point: WeylPoint
    gate: str = ""


NAMED_POINTS: dict[str, NamedPoint] = {
    "O": NamedPoint("O", WeylPoint(0.0, 0.0, 0.0), "identity"),
    "A1": NamedPoint("A1", WeylPoint(PI, 0.0, 0.0), "identity"),
    "A2": NamedPoint("A2", WeylPoint(HALF_PI, HALF_PI, 0.0)),
    "A3": NamedPoint("A3", WeylPoint(HALF_PI, HALF_PI, HALF_PI), "SWAP"),
    # midpoints of OA1, A2A1, A3A1, OA3, OA2
    "L": NamedPoint("L", WeylPoint(HALF_PI, 0.0, 0.0), "CNOT"),
    "M": NamedPoint("M", WeylPoint(3 * PI / 4, PI / 4, 0.0)),
    "N": NamedPoint("N", WeylPoint(3 * PI / 4, PI / 4, PI / 4), "SWAP^-1/2"),
    "P": NamedPoint("P", WeylPoint(PI / 4, PI / 4, PI / 4), "SWAP^1/2"),
    "Q": NamedPoint("Q", WeylPoint(PI / 4, PI / 4, 0.0)),
}

_VERTICES = np.array([NAMED_POINTS[label].point.as_array()
                      for label in ("O", "A1", "A2", "A3")])


def named_point(label: str) -> WeylPoint:
    """Coordinates of a labelled point (O, A1, A2, A3, L, M, N, P, Q)."""
    try:
        return NAMED_POINTS[label].point
    except KeyError:
        raise KeyError(f"Unknown point label '{label}' (known: {', '.join(NAMED_POINTS)})")


def nearest_named_point(c, tol: float = 1e-7) -> NamedPoint | None:
    """The labelled point within tol of c, if any."""
    c = WeylPoint.of(c)
    for named in NAMED_POINTS.values():
        if c.distance(named.point) <= tol:
            return named
    return None


def in_chamber(c, tol: float = 1e-12) -> bool:
    """Canonical predicate, boundary inclusive."""
    c1, c2, c3 = WeylPoint.of(c)
    return (-tol <= c1 <= PI + tol
            and c3 >= -tol
            and c2 >= c3 - tol
            and c2 <= min(c1, PI - c1) + tol)


def invariants_from_point(c) -> LocalInvariants:
    """G1, G2 of the class at [c1, c2, c3] (valid for any real triple)."""
    c1, c2, c3 = WeylPoint.of(c)
    bracket = np.exp(-1j * c3) * np.cos(c1 - c2) + np.exp(1j * c3) * np.cos(c1 + c2)
    g1 = 0.25 * bracket * bracket
    g2 = np.cos(2 * c1) + np.cos(2 * c2) + np.cos(2 * c3)
    return LocalInvariants(g1=complex(g1) + 0.0, g2=float(g2) + 0.0)


def canonical_gate(c) -> np.ndarray:
    """Standard representative of the class at c, in the computational basis.

    Equals exp{-(i/2)(c1 XX + c2 YY + c3 ZZ)}; its local invariants are
    exactly invariants_from_point(c).
    """
    c1, c2, c3 = WeylPoint.of(c)
    cm, sm = np.cos((c1 - c2) / 2), np.sin((c1 - c2) / 2)
    cp, sp = np.cos((c1 + c2) / 2), np.sin((c1 + c2) / 2)
    em = np.exp(-0.5j * c3)
    ep = np.exp(0.5j * c3)
    gate = np.array(
        [[em * cm, 0, 0, -1j * em * sm],
         [0, ep * cp, -1j * ep * sp, 0],
         [0, -1j * ep * sp, ep * cp, 0],
         [-1j * em * sm, 0, 0, em * cm]], dtype=np.complex128)
    return assert_unitary(gate, 1e-12)


XX = kron(SX, SX)
YY = kron(SY, SY)
ZZ = kron(SZ, SZ)


def canonical_gate_exp(c) -> np.ndarray:
    """exp{(i/2)(c1 XX + c2 YY + c3 ZZ)}, the nonlocal core of a KAK form.

    This is the complex conjugate of canonical_gate(c) and sits at the
    class of [-c1, -c2, -c3].
    """
    c1, c2, c3 = WeylPoint.of(c)
    return expm(0.5j * (c1 * XX + c2 * YY + c3 * ZZ))


def canonicalize(c_raw: Sequence[float]) -> WeylPoint:
    """Map any triple to its representative in the chamber.

    Uses shifts by pi on single coordinates, permutations, sign flips in
    pairs and finally the c3 = 0 mirror [c1, c2, -c3] -> [pi - c1, c2, c3].
    Preserves invariants_from_point.
    """
    c = np.array([float(x) for x in c_raw], dtype=float)
    if c.shape != (3,) or not np.all(np.isfinite(c)):
        raise ValueError(f"Expected three finite coordinates, got {c_raw!r}")

    c = np.mod(c + HALF_PI, PI) - HALF_PI
    c = c[np.argsort(-np.abs(c), kind="stable")]

    if c[0] < 0 and c[1] < 0:
        c[0], c[1] = -c[0], -c[1]
    elif c[0] < 0:
        c[0], c[2] = -c[0], -c[2]
    elif c[1] < 0:
        c[1], c[2] = -c[1], -c[2]

    if c[2] < 0:
        c = np.array([PI - c[0], c[1], -c[2]])

    return WeylPoint(float(c[0]) + 0.0, float(c[1]) + 0.0, float(c[2]) + 0.0)


def _normalized_m(u) -> tuple[np.ndarray, complex]:
    """M(U) and one square root of det(U)."""
    return m_matrix(u), complex(np.sqrt(det(u)))


def coordinates_of(u, tol: float | None = None) -> WeylPoint:
    """Canonical Weyl-chamber point of a two-qubit gate.

    The eigenvalues of M(U)/sqrt(det U) are exp(-i λ) with
    λ = (c1 - c2 + c3, c1 + c2 - c3, -c1 - c2 - c3, -c1 + c2 + c3), so
    c1 = (λ1 + λ2)/2, c2 = (λ2 + λ4)/2, c3 = (λ1 + λ4)/2. Every square-root
    branch and eigenvalue ordering gives a candidate; the first whose
    invariants match local_invariants(u) is returned.

    Raises:
        NotUnitaryError: u is not unitary
        NoConvergenceError: no candidate reproduces the invariants
    """
    if tol is None:
        tol = get_settings().tolerances.roundtrip
    u = assert_unitary(u)
    target = local_invariants(u)
    m, root = _normalized_m(u)

    best: tuple[float, WeylPoint] | None = None
    for branch in (root, -root):
        phases = -np.angle(eig4(m / branch))
        for order in itertools.permutations(range(4)):
            l1, l2, _, l4 = phases[list(order)]
            candidate = canonicalize(((l1 + l2) / 2, (l2 + l4) / 2, (l1 + l4) / 2))
            mismatch = invariants_from_point(candidate).distance(target)
            if mismatch <= tol:
                return candidate
            if best is None or mismatch < best[0]:
                best = (mismatch, candidate)

    if best is not None and best[0] <= 100 * tol:
        logger.warning("Coordinate extraction matched invariants only to %.3g", best[0])
        return best[1]
    raise NoConvergenceError("No coordinate candidate reproduces the local invariants",
                             {"best_mismatch": None if best is None else best[0]})


def _permutation_holds(ci, cj, ck, tol):
    """One permutation of the perfect-entangler inequality chains."""
    lower = ci + ck
    upper = ci + cj + HALF_PI
    first = (lower >= HALF_PI - tol) & (lower <= upper + tol) & (upper <= PI + tol)
    second = (lower >= 3 * HALF_PI - tol) & (lower <= upper + tol) & (upper <= 2 * PI + tol)
    return first | second


def perfect_entangler_mask(points, tol: float | None = None) -> np.ndarray:
    """Vectorized coordinate test over an (n, 3) array of chamber points."""
    if tol is None:
        tol = get_settings().tolerances.pe_coords
    points = np.atleast_2d(np.asarray(points, dtype=float))
    mask = np.zeros(points.shape[0], dtype=bool)
    for i, j, k in itertools.permutations(range(3)):
        mask |= _permutation_holds(points[:, i], points[:, j], points[:, k], tol)
    return mask


def is_perfect_entangler_coords(c, tol: float | None = None) -> bool:
    """Coordinate test: some permutation (i, j, k) satisfies either chain

        pi/2 <= c_i + c_k <= c_i + c_j + pi/2 <= pi
        3pi/2 <= c_i + c_k <= c_i + c_j + pi/2 <= 2pi

    Boundary points count as perfect entanglers.
    """
    return bool(perfect_entangler_mask(WeylPoint.of(c).as_array(), tol)[0])


def is_perfect_entangler_hull(u, tol: float | None = None) -> bool:
    """Spectral test: zero lies in the convex hull of the eigenvalues of
    M(U)/sqrt(det U).

    The eigenvalues sit on the unit circle, so zero is inside the (closed)
    hull iff no angular gap between neighbouring eigenvalues exceeds pi.
    """
    if tol is None:
        tol = get_settings().tolerances.pe_hull
    u = assert_unitary(u)
    m, root = _normalized_m(u)
    angles = np.sort(np.angle(eig4(m / root)))
    gaps = np.diff(np.append(angles, angles[0] + 2 * PI))
    return bool(np.max(gaps) <= PI + tol)


def pe_boundary_distance(c) -> float:
    """Euclidean distance from a chamber point to the nearest polyhedron face."""
    c1, c2, c3 = WeylPoint.of(c)
    return float(min(abs(c1 + c2 - HALF_PI), abs(c1 - c2 - HALF_PI),
                     abs(c2 + c3 - HALF_PI)) / np.sqrt(2.0))


def pe_region(c, tol: float | None = None) -> str:
    """Region of a canonical point: 'PE', 'W0' (towards O), 'W0*' (towards
    A1) or 'W1' (towards A3)."""
    c = WeylPoint.of(c)
    if is_perfect_entangler_coords(c, tol):
        return "PE"
    if c.c1 + c.c2 < HALF_PI:
        return "W0"
    if c.c1 - c.c2 > HALF_PI:
        return "W0*"
    return "W1"


def sample_chamber(n: int, seed: int) -> np.ndarray:
    """n points uniform in the chamber volume, as an (n, 3) array.

    Barycentric sampling: sorted uniforms give Dirichlet(1, 1, 1, 1) weights
    over the four vertices.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    u = np.sort(rng.random((n, 3)), axis=1)
    weights = np.column_stack([u[:, 0], u[:, 1] - u[:, 0], u[:, 2] - u[:, 1], 1.0 - u[:, 2]])
    return weights @ _VERTICES
