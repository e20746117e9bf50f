"""Tests for Global Claude Rules System."""
