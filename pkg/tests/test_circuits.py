#!/usr/bin/env python3
"""
Tests for gate sequences and CNOT-class constructions.
"""

import sys
import unittest
from pathlib import Path

import numpy as np

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from shared.errors import NotUnitaryError
from weylkit.circuits import (CONSTRUCTIONS, CircuitExpr, evaluate, pauli_layer,
                              probe_pauli_layers, verify_all_constructions, verify_cnot_class)
from weylkit.families import CNOT, SWAP, edge_point, swap_alpha
from weylkit.invariants import local_invariants, random_su2
from weylkit.linalg import I2, I4, SX, SY, SZ
from weylkit.weyl import PI, canonical_gate, named_point


class TestEvaluate(unittest.TestCase):
    """Test cases for multiplying out circuits."""

    def test_single_identity(self):
        """Test a lone identity factor."""
        np.testing.assert_array_equal(evaluate(CircuitExpr((I4,))), I4)

    def test_cnot_involution(self):
        """Test CNOT twice is the identity."""
        np.testing.assert_allclose(evaluate(CircuitExpr((CNOT, CNOT))), I4, atol=1e-15)

    def test_local_layer_factor(self):
        """Test a pair factor is the Kronecker product."""
        np.testing.assert_array_equal(evaluate(CircuitExpr(((SX, SZ),))), np.kron(SX, SZ))

    def test_order(self):
        """Test the leftmost factor is applied last."""
        expr = CircuitExpr(((SX, I2), CNOT))
        np.testing.assert_allclose(evaluate(expr), np.kron(SX, I2) @ CNOT)

    def test_sqrt_swap_sandwich(self):
        """Test SWAP^-1/2 (X⊗Y) SWAP^-1/2 has G1 = 0, G2 = 1."""
        gate = swap_alpha(0.5, inverse=True)
        inv = local_invariants(evaluate(CircuitExpr((gate, (SX, SY), gate))))
        self.assertLessEqual(abs(inv.g1), 1e-9)
        self.assertLessEqual(abs(inv.g2 - 1), 1e-9)

    def test_non_unitary_factor(self):
        """Test a non-unitary factor raises NotUnitaryError."""
        with self.assertRaises(NotUnitaryError):
            evaluate(CircuitExpr((CNOT, 2 * I4)))
        with self.assertRaises(NotUnitaryError):
            evaluate(CircuitExpr(((SX, 2 * I2),)))

    def test_empty(self):
        """Test a circuit needs at least one factor."""
        with self.assertRaises(ValueError):
            CircuitExpr(())


class TestVerdict(unittest.TestCase):
    """Test cases for CNOT-class verdicts."""

    def test_sqrt_swap_variants(self):
        """Test both SWAP^-1/2 sandwiches are CNOT class."""
        for name in ("SWAP^-1/2 XY", "SWAP^-1/2 XZ"):
            self.assertTrue(verify_cnot_class(CONSTRUCTIONS[name].expr()).equivalent, name)

    def test_swap_is_not_cnot(self):
        """Test bare SWAP fails and reports its invariants."""
        verdict = verify_cnot_class(CircuitExpr((SWAP,)))
        self.assertFalse(verdict.equivalent)
        self.assertAlmostEqual(verdict.g1, -1, delta=1e-12)
        self.assertAlmostEqual(verdict.g2, -3, delta=1e-12)

    def test_qp_sweep(self):
        """Test A_QP (I⊗X) A_QP and (I⊗Y) verify along QP."""
        for eta in np.linspace(0, PI / 4, 9):
            gate = canonical_gate((PI / 4, PI / 4, eta))
            for layer in ((I2, SX), (I2, SY)):
                self.assertTrue(verify_cnot_class(CircuitExpr.sandwich(gate, layer)).equivalent)

    def test_mn_end_is_sqrt_swap_class(self):
        """Test MN at η = π/4 is the SWAP^-1/2 class and still verifies."""
        gate = canonical_gate(edge_point("MN", PI / 4))
        inv = local_invariants(gate)
        self.assertTrue(inv.is_close(local_invariants(swap_alpha(0.5, inverse=True))))
        self.assertTrue(verify_cnot_class(CONSTRUCTIONS["MN XZ"].expr(PI / 4)).equivalent)

    def test_outer_local_dressing(self):
        """Test local gates around the whole sandwich keep the verdict."""
        rng = np.random.default_rng(3)
        gate = canonical_gate(edge_point("PN", 0.3))
        expr = CircuitExpr(((random_su2(rng), random_su2(rng)), gate, (SX, SZ), gate,
                            (random_su2(rng), random_su2(rng))))
        self.assertTrue(verify_cnot_class(expr).equivalent)


class TestConstructions(unittest.TestCase):
    """Test cases for the registered constructions."""

    def test_registry(self):
        """Test seven constructions, each with two nonlocal factors."""
        self.assertEqual(len(CONSTRUCTIONS), 7)
        for construction in CONSTRUCTIONS.values():
            self.assertEqual(construction.expr(0.0).nonlocal_count, 2, construction.name)

    def test_all_verify(self):
        """Test all constructions verify on a 21-point grid."""
        report = verify_all_constructions(21)
        self.assertTrue(report.ok)
        self.assertEqual(report.failures, [])
        self.assertEqual([r.name for r in report.reports], list(CONSTRUCTIONS))
        for r in report.reports:
            self.assertLessEqual(r.max_abs_g1, 1e-9)
            self.assertLessEqual(r.max_g2_deviation, 1e-9)

    def test_grid_sizes(self):
        """Test parameter grids cover the edges."""
        report = verify_all_constructions(2)
        self.assertTrue(report.ok)
        by_name = {r.name: r for r in report.reports}
        self.assertEqual(len(by_name["SWAP^-1/2 XY"].params), 1)
        self.assertAlmostEqual(by_name["PN XZ"].params[-1], PI / 2)
        self.assertAlmostEqual(by_name["QP IX"].params[-1], PI / 4)
        with self.assertRaises(ValueError):
            verify_all_constructions(1)

    def test_workers_keep_order(self):
        """Test a threaded sweep gives the same report."""
        serial = verify_all_constructions(5, workers=1)
        threaded = verify_all_constructions(5, workers=3)
        self.assertEqual(serial, threaded)

    def test_qp_endpoint_is_q(self):
        """Test the QP sweep starts at Q."""
        start = edge_point(CONSTRUCTIONS["QP IX"].edge, 0.0)
        self.assertLess(start.distance(named_point("Q")), 1e-15)


class TestPauliProbe(unittest.TestCase):
    """Test cases for probing all Pauli layers."""

    def test_pn_layers(self):
        """Test the layers that work along PN."""
        layers = probe_pauli_layers("PN", 21)
        self.assertIn("XZ", layers)
        self.assertEqual(layers, ["IY", "IZ", "XY", "XZ", "YI", "YX", "ZI", "ZX"])

    def test_qp_layers(self):
        """Test the layers that work along QP include I⊗X and I⊗Y."""
        layers = probe_pauli_layers("QP", 11)
        self.assertEqual(layers, ["IX", "IY", "XI", "XZ", "YI", "YZ", "ZX", "ZY"])

    def test_pauli_layer_labels(self):
        """Test two-letter labels map to Pauli pairs."""
        a, b = pauli_layer("YZ")
        np.testing.assert_array_equal(a, SY)
        np.testing.assert_array_equal(b, SZ)


if __name__ == "__main__":
    unittest.main()
