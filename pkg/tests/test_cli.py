#!/usr/bin/env python3
"""
Tests for weyl_gates.py command-line tool.

Tests the CLI functionality including:
- Gate file writing and parsing
- analyze / tables / sweep / verify / pe-volume / probe commands
- Exit codes for malformed and non-unitary input
"""

import io
import json
import os
import shutil
import sys
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import numpy as np

# Add project root and scripts directory to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))
sys.path.insert(0, str(project_root / "scripts"))

from shared.config import CONFIG_ENV_VAR, Tolerances, get_settings  # noqa: E402
from shared.errors import FileOperationError, GateFileError  # noqa: E402


def run_cli(*argv):
    """Run main() and capture stdout and stderr."""
    from weyl_gates import main

    out, err = io.StringIO(), io.StringIO()
    with patch("sys.stdout", out), patch("sys.stderr", err):
        code = main(["--no-color", *argv])
    return code, out.getvalue(), err.getvalue()


class TestGateFiles(unittest.TestCase):
    """Test cases for gate file I/O."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up test fixtures."""
        if os.path.exists(self.temp_dir):
            shutil.rmtree(self.temp_dir)

    def test_round_trip(self):
        """Test a written gate reads back bit-exactly."""
        from weyl_gates import build_gate, read_gate_file, write_gate_file

        path = Path(self.temp_dir) / "gate.json"
        gate = build_gate("canonical", coords=(1.1, 0.7, 0.3))
        write_gate_file(path, gate, "test gate")
        matrix, name = read_gate_file(path)
        np.testing.assert_array_equal(matrix, gate)
        self.assertEqual(name, "test gate")

    def test_malformed(self):
        """Test malformed documents raise GateFileError."""
        from weyl_gates import read_gate_file

        path = Path(self.temp_dir) / "bad.json"
        for text in ("not json", '{"name": "x"}', '{"matrix": [[1, 2]]}',
                     '{"matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}'):
            path.write_text(text, encoding="utf-8")
            with self.assertRaises(GateFileError, msg=text):
                read_gate_file(path)

    def test_build_gate_needs_param(self):
        """Test parametrized gates require their parameter."""
        from weyl_gates import build_gate

        with self.assertRaises(ValueError):
            build_gate("swap_alpha")
        with self.assertRaises(ValueError):
            build_gate("canonical")


class TestCommands(unittest.TestCase):
    """Test cases for CLI commands."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up test fixtures."""
        if os.path.exists(self.temp_dir):
            shutil.rmtree(self.temp_dir)

    def _gate(self, name, *extra):
        path = str(Path(self.temp_dir) / f"{name}.json")
        code, _, _ = run_cli("gates", name, *extra, "--out", path)
        self.assertEqual(code, 0)
        return path

    def _analyze(self, path, *extra):
        code, out, _ = run_cli("analyze", path, "--json", *extra)
        self.assertEqual(code, 0)
        return json.loads(out)

    def test_analyze_cnot(self):
        """Test CNOT analysis: invariants, point L, perfect entangler, 2/9."""
        report = self._analyze(self._gate("cnot"))
        self.assertAlmostEqual(report["g1"][0], 0, delta=1e-10)
        self.assertAlmostEqual(report["g2"], 1, delta=1e-10)
        np.testing.assert_allclose(report["coordinates_pi"], [0.5, 0, 0], atol=1e-8)
        self.assertEqual(report["named_point"], "L")
        self.assertTrue(report["perfect_entangler"]["coordinates"])
        self.assertTrue(report["perfect_entangler"]["convex_hull"])
        self.assertAlmostEqual(report["entangling_power"], 2 / 9, delta=1e-12)

    def test_analyze_identity(self):
        """Test identity analysis."""
        report = self._analyze(self._gate("identity"))
        self.assertAlmostEqual(report["g1"][0], 1, delta=1e-10)
        self.assertAlmostEqual(report["g2"], 3, delta=1e-10)
        self.assertFalse(report["perfect_entangler"]["coordinates"])
        self.assertEqual(report["region"], "W0")
        self.assertAlmostEqual(report["entangling_power"], 0, delta=1e-12)

    def test_analyze_sqrt_swap_inverse(self):
        """Test SWAP^-1/2 analysis at N with e_p = 1/6."""
        report = self._analyze(self._gate("swap_alpha_inv", "--param", "0.5"))
        np.testing.assert_allclose(report["coordinates_pi"], [0.75, 0.25, 0.25], atol=1e-8)
        self.assertEqual(report["named_point"], "N")
        self.assertTrue(report["perfect_entangler"]["coordinates"])
        self.assertAlmostEqual(report["entangling_power"], 1 / 6, delta=1e-12)

    def test_analyze_with_monte_carlo(self):
        """Test the optional Monte-Carlo estimate is reproducible."""
        path = self._gate("cnot")
        first = self._analyze(path, "--mc", "20000", "--seed", "5")
        second = self._analyze(path, "--mc", "20000", "--seed", "5")
        self.assertEqual(first["entangling_power_mc"], second["entangling_power_mc"])
        mc = first["entangling_power_mc"]
        self.assertLess(abs(mc["mean"] - 2 / 9), 5 * mc["std_error"])

    def test_analyze_text_output(self):
        """Test the human-readable report shows angles in units of π."""
        code, out, _ = run_cli("analyze", self._gate("cnot"))
        self.assertEqual(code, 0)
        self.assertIn("0.5π", out)
        self.assertIn("Perfect entangler", out)

    def test_analyze_missing_file(self):
        """Test a missing file exits with 2."""
        code, _, err = run_cli("analyze", str(Path(self.temp_dir) / "missing.json"))
        self.assertEqual(code, 2)
        self.assertIn("Failed to read", err)

    def test_analyze_malformed(self):
        """Test a malformed file exits with 2."""
        path = Path(self.temp_dir) / "bad.json"
        path.write_text("{", encoding="utf-8")
        code, _, _ = run_cli("analyze", str(path))
        self.assertEqual(code, 2)

    def test_analyze_not_unitary(self):
        """Test a non-unitary matrix exits with 1 and reports the deviation."""
        from weyl_gates import write_gate_file

        path = Path(self.temp_dir) / "scaled.json"
        write_gate_file(path, 2 * np.eye(4), "scaled")
        code, _, err = run_cli("analyze", str(path))
        self.assertEqual(code, 1)
        self.assertIn("deviation", err)

    def test_tables(self):
        """Test both tables print every edge without mismatches."""
        code, out, _ = run_cli("tables", "weyl", "--grid", "5")
        self.assertEqual(code, 0)
        for label in ("OA1", "OA2", "A2A1", "A2A3", "OA3", "A1A3"):
            self.assertIn(label, out)
        self.assertIn("All rows agree", out)

        code, out, _ = run_cli("tables", "polyhedron", "--grid", "2")
        self.assertEqual(code, 0)
        self.assertIn("A2P", out)

    def test_sweep_csv(self):
        """Test the sweep CSV layout and round trip."""
        from weyl_gates import SWEEP_HEADER, read_sweep_csv, sweep_records

        path = Path(self.temp_dir) / "oa2.csv"
        code, _, _ = run_cli("sweep", "OA2", "--grid", "11", "--out", str(path))
        self.assertEqual(code, 0)

        lines = path.read_text(encoding="utf-8").split("\n")
        self.assertEqual(lines[0], ",".join(SWEEP_HEADER))
        self.assertEqual(lines[-1], "")
        self.assertEqual(len(lines), 13)

        records = read_sweep_csv(path)
        expected = sweep_records("OA2", 11)
        for got, want in zip(records, expected):
            self.assertEqual(got.family_label, "OA2")
            self.assertEqual(got.is_pe, want.is_pe)
            self.assertAlmostEqual(got.e_p, want.e_p, delta=1e-12)
            self.assertAlmostEqual(got.g2, want.g2, delta=1e-11)
        self.assertAlmostEqual(records[0].e_p, 0, delta=1e-12)
        self.assertAlmostEqual(records[-1].e_p, 2 / 9, delta=1e-12)

    def test_sweep_deterministic(self):
        """Test identical sweeps produce byte-identical files."""
        first = Path(self.temp_dir) / "a.csv"
        second = Path(self.temp_dir) / "b.csv"
        run_cli("sweep", "LQ", "--grid", "7", "--out", str(first))
        run_cli("sweep", "LQ", "--grid", "7", "--out", str(second))
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_sweep_unknown_family(self):
        """Test an unknown family exits nonzero."""
        code, _, err = run_cli("sweep", "XYZ", "--out", str(Path(self.temp_dir) / "x.csv"))
        self.assertEqual(code, 1)
        self.assertIn("Unknown family", err)

    def test_verify(self):
        """Test all constructions verify."""
        code, out, _ = run_cli("verify", "--grid", "5")
        self.assertEqual(code, 0)
        self.assertIn("7/7 constructions verify", out)

    def test_pe_volume(self):
        """Test the fraction is close to one half and reproducible."""
        code, out, _ = run_cli("pe-volume", "--n", "20000", "--seed", "3")
        self.assertEqual(code, 0)
        code, again, _ = run_cli("pe-volume", "--n", "20000", "--seed", "3")
        self.assertEqual(out, again)
        fraction = float(out.split("Fraction:")[1].split("±")[0])
        self.assertAlmostEqual(fraction, 0.5, delta=0.02)

    def test_pe_volume_too_small(self):
        """Test fewer than 10^4 samples is rejected."""
        code, _, _ = run_cli("pe-volume", "--n", "100")
        self.assertEqual(code, 1)

    def test_probe(self):
        """Test the PN probe lists X⊗Z."""
        code, out, _ = run_cli("probe", "PN", "--grid", "5")
        self.assertEqual(code, 0)
        self.assertIn("X⊗Z", out)

    def test_config_option(self):
        """Test a bad --config exits with 2 without touching the environment."""
        config = Path(self.temp_dir) / "weylkit.yaml"
        config.write_text("tolerances:\n  unitary: -1\n", encoding="utf-8")
        with patch.dict(os.environ, {}):
            os.environ.pop(CONFIG_ENV_VAR, None)
            code, _, err = run_cli("--config", str(config), "verify", "--grid", "2")
            self.assertNotIn(CONFIG_ENV_VAR, os.environ)
        self.assertEqual(code, 2)
        self.assertIn("must be positive", err)

    def test_config_applies_to_one_call(self):
        """Test --config settings apply to that call only."""
        from weyl_gates import write_gate_file
        from weylkit.families import CNOT

        path = Path(self.temp_dir) / "near_cnot.json"
        write_gate_file(path, (1 + 1e-6) * CNOT, "near cnot")
        config = Path(self.temp_dir) / "loose.yaml"
        config.write_text("tolerances:\n  unitary: 1.0e-4\n", encoding="utf-8")

        with patch.dict(os.environ, {}):
            os.environ.pop(CONFIG_ENV_VAR, None)
            code, _, _ = run_cli("--config", str(config), "analyze", str(path), "--json")
            self.assertEqual(code, 0)
            self.assertNotIn(CONFIG_ENV_VAR, os.environ)

            code, _, err = run_cli("analyze", str(path))
            self.assertEqual(code, 1)
            self.assertIn("deviation", err)
        self.assertEqual(get_settings().tolerances.unitary, Tolerances().unitary)

    def test_analyze_mc_too_small(self):
        """Test --mc below 1000 samples is rejected, including zero."""
        path = self._gate("cnot")
        for n in ("0", "999"):
            code, _, err = run_cli("analyze", path, "--mc", n)
            self.assertEqual(code, 1, n)
            self.assertIn("at least 1000", err)

    def test_read_sweep_bad_header(self):
        """Test a sweep file with the wrong header raises FileOperationError."""
        from weyl_gates import read_sweep_csv

        path = Path(self.temp_dir) / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n", encoding="utf-8")
        with self.assertRaises(FileOperationError):
            read_sweep_csv(path)
        path.write_text("", encoding="utf-8")
        with self.assertRaises(FileOperationError):
            read_sweep_csv(path)
        with self.assertRaises(FileOperationError):
            read_sweep_csv(Path(self.temp_dir) / "missing.csv")


if __name__ == "__main__":
    unittest.main()
