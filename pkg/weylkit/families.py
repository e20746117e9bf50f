#!/usr/bin/env python3
"""
Named gate families: fixed gates, SWAP^α / SWAP^-α, the six Weyl-chamber
edges, the nine perfect-entangler polyhedron edges and the special
perfect-entangler line LA2.

Each edge carries its coordinate parametrization and the closed-form
entangling power and invariants as tabulated. The closed forms are checked
against the gate -> invariants pipeline; on disagreement the pipeline wins.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from shared.config import get_settings
from shared.errors import ParamOutOfRangeError, UnknownFamilyError

from .epower import entangling_power_closed
from .invariants import local_invariants
from .linalg import I4, dagger
from .weyl import WeylPoint, canonical_gate

logger = logging.getLogger(__name__)

PI = np.pi

IDENTITY = I4
CNOT = np.array([[1, 0, 0, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1],
                 [0, 0, 1, 0]], dtype=np.complex128)
SWAP = np.array([[1, 0, 0, 0],
                 [0, 0, 1, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1]], dtype=np.complex128)
CNOT.flags.writeable = False
SWAP.flags.writeable = False

RANGE_SLACK = 1e-12


def swap_alpha(alpha: float, inverse: bool = False) -> np.ndarray:
    """SWAP^-α (inverse=True) or its adjoint SWAP^α, 0 <= α <= 1."""
    if not -RANGE_SLACK <= alpha <= 1 + RANGE_SLACK:
        raise ParamOutOfRangeError("alpha must lie in [0, 1]", {"alpha": alpha})
    phase = np.exp(-1j * PI * alpha)
    plus, minus = (1 + phase) / 2, (1 - phase) / 2
    gate = np.array([[1, 0, 0, 0],
                     [0, plus, minus, 0],
                     [0, minus, plus, 0],
                     [0, 0, 0, 1]], dtype=np.complex128)
    return gate if inverse else dagger(gate)


class EdgeValues(NamedTuple):
    """Entangling power and local invariants at one parameter value."""
    e_p: float
    g1: complex
    g2: float

    def discrepancy(self, other: "EdgeValues") -> float:
        return max(abs(self.e_p - other.e_p), abs(self.g1 - other.g1), abs(self.g2 - other.g2))


@dataclass(frozen=True)
class EdgeFamily:
    """A single-parameter family of chamber points."""
    label: str
    table: str                      # "I", "II" or "SPE"
    param_symbol: str
    param_range: tuple[float, float]
    point_fn: Callable[[float], tuple[float, float, float]]
    closed_fn: Callable[[float], tuple[float, complex, float]]
    endpoints: tuple[str, str] = ("", "")

    def check_param(self, t: float) -> float:
        lo, hi = self.param_range
        if not lo - RANGE_SLACK <= t <= hi + RANGE_SLACK:
            raise ParamOutOfRangeError(
                f"{self.param_symbol}={t} outside the range of {self.label}",
                {"family": self.label, "value": t, "range": self.param_range})
        return float(min(max(t, lo), hi))

    def grid(self, size: int) -> np.ndarray:
        if size < 2:
            raise ValueError("grid size must be at least 2")
        return np.linspace(*self.param_range, size)


def _family(label, table, symbol, hi, point_fn, closed_fn, endpoints=("", "")):
    return EdgeFamily(label, table, symbol, (0.0, hi), point_fn, closed_fn, endpoints)


def _e(x):
    return np.exp(1j * x)


_FAMILY_LIST = [
    # Weyl-chamber edges
    _family("OA1", "I", "θ", PI,
            lambda t: (t, 0.0, 0.0),
            lambda t: ((1 - np.cos(2 * t)) / 9, np.cos(t) ** 2, 2 * np.cos(t) ** 2 + 1),
            ("O", "A1")),
    _family("OA2", "I", "θ", PI / 2,
            lambda t: (t, t, 0.0),
            lambda t: ((3 - np.cos(2 * t) ** 2 - 2 * np.cos(2 * t)) / 18,
                       (1 + np.cos(2 * t)) ** 2 / 4, 1 + 2 * np.cos(2 * t)),
            ("O", "A2")),
    _family("A2A1", "I", "φ", PI / 2,
            lambda t: (PI / 2 + t, PI / 2 - t, 0.0),
            lambda t: ((3 - np.cos(2 * t) ** 2 + 2 * np.cos(2 * t)) / 18,
                       (np.cos(2 * t) - 1) ** 2 / 4, 1 - 2 * np.cos(2 * t)),
            ("A2", "A1")),
    _family("A2A3", "I", "φ", PI / 2,
            lambda t: (PI / 2, PI / 2, t),
            lambda t: ((1 + np.cos(2 * t)) / 9, -np.sin(t) ** 2, np.cos(2 * t) - 2),
            ("A2", "A3")),
    _family("OA3", "I", "α", 1.0,
            lambda t: (PI * t / 2, PI * t / 2, PI * t / 2),
            lambda t: ((1 - np.cos(2 * PI * t)) / 12,
                       (9 * _e(-PI * t) + _e(3 * PI * t) + 6 * _e(PI * t)) / 16,
                       3 * np.cos(PI * t)),
            ("O", "A3")),
    _family("A1A3", "I", "α", 1.0,
            lambda t: (PI - PI * t / 2, PI * t / 2, PI * t / 2),
            lambda t: ((1 - np.cos(2 * PI * t)) / 12,
                       (9 * _e(PI * t) + _e(-3 * PI * t) + 6 * _e(-PI * t)) / 16,
                       3 * np.cos(PI * t)),
            ("A1", "A3")),
    # perfect-entangler polyhedron edges
    _family("LQ", "II", "θ", PI / 4,
            lambda t: (PI / 2 - t, t, 0.0),
            lambda t: ((3 + np.cos(2 * t) ** 2) / 18, np.sin(2 * t) ** 2 / 4, 1.0),
            ("L", "Q")),
    _family("LM", "II", "θ", PI / 4,
            lambda t: (PI / 2 + t, t, 0.0),
            lambda t: ((3 + np.cos(2 * t) ** 2) / 18, np.sin(2 * t) ** 2 / 4, 1.0),
            ("L", "M")),
    _family("A2M", "II", "φ", PI / 4,
            lambda t: (PI / 2 + t, PI / 2 - t, 0.0),
            lambda t: ((3 - np.cos(2 * t) ** 2 + 2 * np.cos(2 * t)) / 18,
                       (1 - np.cos(2 * t)) ** 2 / 4, 1 - 2 * np.cos(2 * t)),
            ("A2", "M")),
    _family("A2Q", "II", "φ", PI / 4,
            lambda t: (PI / 2 - t, PI / 2 - t, 0.0),
            lambda t: ((3 - np.cos(2 * t) ** 2 + 2 * np.cos(2 * t)) / 18,
                       (1 - np.cos(2 * t)) ** 2 / 4, 1 - 2 * np.cos(2 * t)),
            ("A2", "Q")),
    _family("QP", "II", "η", PI / 4,
            lambda t: (PI / 4, PI / 4, t),
            lambda t: (1 / 6, _e(-2 * t) / 4, np.cos(2 * t)),
            ("Q", "P")),
    _family("MN", "II", "η", PI / 4,
            lambda t: (3 * PI / 4, PI / 4, t),
            lambda t: (1 / 6, _e(2 * t) / 4, np.cos(2 * t)),
            ("M", "N")),
    _family("PN", "II", "η", PI / 2,
            lambda t: (PI / 4 + t, PI / 4, PI / 4),
            lambda t: (1 / 6, -0.25j * _e(-2 * t), -np.sin(2 * t)),
            ("P", "N")),
    _family("LN", "II", "θ", PI / 4,
            lambda t: (PI / 2 + t, t, t),
            lambda t: ((3 + np.cos(2 * t) ** 2) / 18, (_e(t) * np.sin(2 * t)) ** 2 / 4,
                       np.cos(2 * t)),
            ("L", "N")),
    _family("A2P", "II", "θ", PI / 4,
            lambda t: (PI / 2 - t, PI / 2 - t, t),
            lambda t: ((3 + np.cos(2 * t) ** 2) / 18, -(_e(t) * np.sin(2 * t)) ** 2 / 4,
                       -np.cos(2 * t)),
            ("A2", "P")),
    # special perfect entanglers
    _family("SPE", "SPE", "θ", PI / 2,
            lambda t: (PI / 2, t, 0.0),
            lambda t: (2 / 9, 0.0, np.cos(2 * t)),
            ("L", "A2")),
    # the controlled-unitary half of OA1
    _family("OL", "I", "θ", PI / 2,
            lambda t: (t, 0.0, 0.0),
            lambda t: ((1 - np.cos(2 * t)) / 9, np.cos(t) ** 2, 2 * np.cos(t) ** 2 + 1),
            ("O", "L")),
]

FAMILIES: dict[str, EdgeFamily] = {f.label: f for f in _FAMILY_LIST}
CHAMBER_EDGES = ("OA1", "OA2", "A2A1", "A2A3", "OA3", "A1A3")
POLYHEDRON_EDGES = ("LQ", "LM", "A2M", "A2Q", "QP", "MN", "PN", "LN", "A2P")
MONOTONE_EDGES = ("OL", "OA2", "A2A1", "A2A3", "LQ", "A2M")


def get_family(label: str | EdgeFamily) -> EdgeFamily:
    """Look up a family by label.

    Raises:
        UnknownFamilyError: label is not registered
    """
    if isinstance(label, EdgeFamily):
        return label
    try:
        return FAMILIES[label]
    except KeyError:
        raise UnknownFamilyError(f"Unknown family '{label}'", {"known": list(FAMILIES)})


def spe_family() -> EdgeFamily:
    return FAMILIES["SPE"]


def edge_point(family, t: float) -> WeylPoint:
    """Chamber point of a family at parameter t."""
    family = get_family(family)
    return WeylPoint.of(family.point_fn(family.check_param(t)))


def edge_invariants_closed(family, t: float) -> EdgeValues:
    """Tabulated closed-form (e_p, G1, G2) at parameter t."""
    family = get_family(family)
    e_p, g1, g2 = family.closed_fn(family.check_param(t))
    return EdgeValues(float(e_p), complex(g1), float(g2))


def family_gate(family, t: float) -> np.ndarray:
    """Standard-representative gate of a family point."""
    return canonical_gate(edge_point(family, t))


def edge_invariants_pipeline(family, t: float) -> EdgeValues:
    """(e_p, G1, G2) recomputed from the gate matrix."""
    point = edge_point(family, t)
    invariants = local_invariants(canonical_gate(point))
    return EdgeValues(entangling_power_closed(point), invariants.g1, invariants.g2)


class RowCheck(NamedTuple):
    family: str
    param: float
    closed: EdgeValues
    pipeline: EdgeValues

    @property
    def discrepancy(self) -> float:
        return self.closed.discrepancy(self.pipeline)


def edge_values(family, t: float, tol: float | None = None) -> EdgeValues:
    """Resolved (e_p, G1, G2): the closed form unless it disagrees with the
    pipeline, in which case the pipeline value is returned and the row logged."""
    if tol is None:
        tol = get_settings().tolerances.equivalence
    closed = edge_invariants_closed(family, t)
    pipeline = edge_invariants_pipeline(family, t)
    if closed.discrepancy(pipeline) > tol:
        logger.warning("Closed form of %s disagrees with the pipeline at t=%.12g (%.3g)",
                       get_family(family).label, t, closed.discrepancy(pipeline))
        return pipeline
    return closed


def cross_check_family(family, grid: int = 21,
                       tol: float | None = None) -> tuple[list[RowCheck], list[RowCheck]]:
    """Compare closed forms and pipeline on an even grid.

    Returns:
        Tuple of (all rows, mismatching rows)
    """
    if tol is None:
        tol = get_settings().tolerances.equivalence
    family = get_family(family)
    rows = [RowCheck(family.label, float(t), edge_invariants_closed(family, t),
                     edge_invariants_pipeline(family, t))
            for t in family.grid(grid)]
    mismatches = [row for row in rows if row.discrepancy > tol]
    for row in mismatches:
        logger.warning("Table row %s at %s=%.12g: closed %s vs pipeline %s",
                       row.family, family.param_symbol, row.param, row.closed, row.pipeline)
    return rows, mismatches


def is_monotone(family, grid: int = 100, slack: float = 1e-15) -> bool:
    """Finite-difference check that e_p is monotone along the family."""
    family = get_family(family)
    values = np.array([entangling_power_closed(edge_point(family, t)) for t in family.grid(grid)])
    steps = np.diff(values)
    return bool(np.all(steps >= -slack) or np.all(steps <= slack))


def edges_of_table(which: str) -> tuple[str, ...]:
    """Family labels of the chamber edges ('weyl') or the polyhedron edges ('polyhedron')."""
    if which == "weyl":
        return CHAMBER_EDGES
    if which == "polyhedron":
        return POLYHEDRON_EDGES
    raise UnknownFamilyError(f"Unknown table '{which}'", {"known": ["weyl", "polyhedron"]})
