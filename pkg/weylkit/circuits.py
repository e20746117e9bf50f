#!/usr/bin/env python3
"""
Gate sequences and the CNOT-class constructions.

A CircuitExpr alternates nonlocal Gate4 factors with local layers
k_a ⊗ k_b. Each construction sandwiches one Pauli layer between two copies
of a perfect entangler; verification is at the level of local invariants,
so the result only has to be locally equivalent to CNOT (G1 = 0, G2 = 1).
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from shared.config import get_settings

from .families import edge_point, get_family, swap_alpha
from .invariants import local_invariants
from .linalg import PAULIS, assert_unitary, kron, matmul
from .weyl import canonical_gate

logger = logging.getLogger(__name__)

LocalLayer = tuple[np.ndarray, np.ndarray]
Factor = Union[np.ndarray, LocalLayer]

CNOT_INVARIANTS = (0j, 1.0)


@dataclass(frozen=True, eq=False)
class CircuitExpr:
    """Ordered factors, leftmost applied last (matrix-product order)."""
    factors: tuple[Factor, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("CircuitExpr needs at least one factor")
        normalized = []
        for factor in self.factors:
            if isinstance(factor, tuple):
                a, b = factor
                normalized.append((np.asarray(a, dtype=np.complex128),
                                   np.asarray(b, dtype=np.complex128)))
            else:
                normalized.append(np.asarray(factor, dtype=np.complex128))
        object.__setattr__(self, "factors", tuple(normalized))

    @classmethod
    def sandwich(cls, gate, layer: LocalLayer) -> "CircuitExpr":
        """gate · (a ⊗ b) · gate"""
        return cls((gate, layer, gate))

    @property
    def nonlocal_count(self) -> int:
        return sum(1 for f in self.factors if not isinstance(f, tuple))


def _factor_matrix(factor: Factor, tol: float) -> np.ndarray:
    if isinstance(factor, tuple):
        a, b = factor
        return kron(assert_unitary(a, tol), assert_unitary(b, tol))
    return assert_unitary(factor, tol)


def evaluate(expr: CircuitExpr, tol: float | None = None) -> np.ndarray:
    """Multiply out the factors.

    Raises:
        NotUnitaryError: a factor (or a local-layer component) is not unitary
    """
    if tol is None:
        tol = get_settings().tolerances.unitary
    return matmul(*(_factor_matrix(f, tol) for f in expr.factors))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a CNOT-class check, with the measured invariants."""
    equivalent: bool
    g1: complex
    g2: float

    def __str__(self) -> str:
        state = "equivalent" if self.equivalent else "not equivalent"
        return f"{state} (G1={self.g1.real:+.3e}{self.g1.imag:+.3e}i, G2={self.g2:+.12g})"


def verify_cnot_class(expr: CircuitExpr, tol: float | None = None) -> Verdict:
    """Check local equivalence of the evaluated circuit to CNOT."""
    if tol is None:
        tol = get_settings().tolerances.cnot
    invariants = local_invariants(evaluate(expr))
    equivalent = abs(invariants.g1) <= tol and abs(invariants.g2 - 1.0) <= tol
    return Verdict(equivalent, invariants.g1, invariants.g2)


def pauli_layer(label: str) -> LocalLayer:
    """Local layer from a two-letter label such as "XZ"."""
    a, b = label
    return (PAULIS[a], PAULIS[b])


@dataclass(frozen=True)
class Construction:
    """A two-entangler sandwich around a fixed Pauli layer."""
    name: str
    edge: str | None
    layer: str
    gate_fn: Callable[[float], np.ndarray] = field(repr=False)

    @property
    def param_range(self) -> tuple[float, float] | None:
        return get_family(self.edge).param_range if self.edge else None

    def expr(self, t: float = 0.0) -> CircuitExpr:
        return CircuitExpr.sandwich(self.gate_fn(t), pauli_layer(self.layer))

    def grid(self, size: int) -> np.ndarray:
        if self.edge is None:
            return np.array([0.0])
        return get_family(self.edge).grid(size)


def _edge_gate(edge: str) -> Callable[[float], np.ndarray]:
    return lambda t: canonical_gate(edge_point(edge, t))


def _sqrt_swap_inv(_t: float) -> np.ndarray:
    return swap_alpha(0.5, inverse=True)


CONSTRUCTIONS: dict[str, Construction] = {c.name: c for c in (
    Construction("SWAP^-1/2 XY", None, "XY", _sqrt_swap_inv),
    Construction("SWAP^-1/2 XZ", None, "XZ", _sqrt_swap_inv),
    Construction("QP IX", "QP", "IX", _edge_gate("QP")),
    Construction("QP IY", "QP", "IY", _edge_gate("QP")),
    Construction("MN XZ", "MN", "XZ", _edge_gate("MN")),
    Construction("MN YZ", "MN", "YZ", _edge_gate("MN")),
    Construction("PN XZ", "PN", "XZ", _edge_gate("PN")),
)}


@dataclass(frozen=True)
class ConstructionReport:
    """Sweep result for one construction."""
    name: str
    params: tuple[float, ...]
    verdicts: tuple[Verdict, ...]

    @property
    def passed(self) -> bool:
        return all(v.equivalent for v in self.verdicts)

    @property
    def failures(self) -> list[float]:
        return [t for t, v in zip(self.params, self.verdicts) if not v.equivalent]

    @property
    def max_abs_g1(self) -> float:
        return max(abs(v.g1) for v in self.verdicts)

    @property
    def max_g2_deviation(self) -> float:
        return max(abs(v.g2 - 1.0) for v in self.verdicts)


@dataclass(frozen=True)
class VerificationReport:
    reports: tuple[ConstructionReport, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def failures(self) -> list[tuple[str, float]]:
        return [(r.name, t) for r in self.reports for t in r.failures]


def _check_construction(construction: Construction, grid_size: int) -> ConstructionReport:
    params = construction.grid(grid_size)
    verdicts = tuple(verify_cnot_class(construction.expr(t)) for t in params)
    report = ConstructionReport(construction.name, tuple(float(t) for t in params), verdicts)
    if not report.passed:
        logger.warning("%s fails at %d of %d grid points", construction.name,
                       len(report.failures), len(params))
    return report


def verify_all_constructions(grid_size: int = 21, workers: int | None = None) -> VerificationReport:
    """Sweep every registered construction over its edge parameter.

    Report order follows CONSTRUCTIONS regardless of ``workers``.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    workers = workers or get_settings().workers
    constructions = list(CONSTRUCTIONS.values())

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda c: _check_construction(c, grid_size), constructions))
    else:
        reports = [_check_construction(c, grid_size) for c in constructions]
    return VerificationReport(tuple(reports))


def probe_pauli_layers(edge: str, grid: int = 21) -> list[str]:
    """Pauli ⊗ Pauli layers that turn the edge sandwich into CNOT at every
    grid point. Labels are two letters, qubit 1 first."""
    family = get_family(edge)
    gates = [canonical_gate(edge_point(family, t)) for t in family.grid(grid)]
    verified = []
    for a, b in itertools.product("IXYZ", repeat=2):
        layer = pauli_layer(a + b)
        if all(verify_cnot_class(CircuitExpr.sandwich(g, layer)).equivalent for g in gates):
            verified.append(a + b)
    logger.debug("Pauli layers verifying on %s: %s", family.label, verified)
    return verified
