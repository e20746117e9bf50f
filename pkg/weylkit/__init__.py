#!/usr/bin/env python3
"""
WeylKit - geometry of nonlocal two-qubit gates.

Local invariants, Weyl-chamber coordinates, perfect-entangler tests,
entangling power, the Weyl-chamber and polyhedron edge families, and
invariant-level verification of CNOT constructions.
"""

__version__ = "1.0.1"
