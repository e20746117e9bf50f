#!/usr/bin/env python3
"""
WeylKit - Two-Qubit Gate Geometry

Command-line front end for the weylkit library:
- analyze: local invariants, chamber point, perfect-entangler verdicts and
  entangling power of a gate read from a JSON gate file
- tables: chamber-edge and polyhedron-edge tables, closed form vs recomputed
- sweep: one family over a parameter grid, written as CSV
- verify: the CNOT-class constructions over their parameter grids
- pe-volume: fraction of perfect entanglers among uniform chamber samples
- gates: write built-in gates as gate files
- probe: which Pauli layers turn an edge sandwich into CNOT

Usage:
    python scripts/weyl_gates.py gates cnot --out cnot.json
    python scripts/weyl_gates.py analyze cnot.json --mc 100000 --seed 7
    python scripts/weyl_gates.py tables weyl --grid 5
    python scripts/weyl_gates.py sweep OA2 --grid 101 --out oa2.csv
    python scripts/weyl_gates.py verify --grid 21
    python scripts/weyl_gates.py pe-volume --n 1000000 --seed 1
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from dataclasses import astuple, dataclass, fields
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent))

from shared.config import CONFIG_ENV_VAR, configure_settings, reset_settings  # noqa: E402
from shared.console import (Colors, print_error, print_field, print_header,  # noqa: E402
                            print_info, print_success, print_warning, setup_colors)
from shared.errors import (ConfigurationError, FileOperationError, GateFileError,  # noqa: E402
                           WeylKitError)
from weylkit.circuits import CONSTRUCTIONS, probe_pauli_layers, verify_all_constructions  # noqa: E402
from weylkit.epower import entangling_power_closed, entangling_power_mc  # noqa: E402
from weylkit.families import (CNOT, FAMILIES, IDENTITY, SWAP, cross_check_family,  # noqa: E402
                              edge_point, edges_of_table, get_family, swap_alpha)
from weylkit.invariants import local_invariants  # noqa: E402
from weylkit.linalg import assert_unitary  # noqa: E402
from weylkit.weyl import (PI, WeylPoint, canonical_gate, coordinates_of,  # noqa: E402
                          is_perfect_entangler_coords, is_perfect_entangler_hull,
                          nearest_named_point, pe_region, perfect_entangler_mask,
                          sample_chamber)

logger = logging.getLogger("weyl_gates")

GATE_NAMES = ("identity", "cnot", "swap", "swap_alpha", "swap_alpha_inv", "canonical")
MIN_PE_SAMPLES = 10_000


# =============================================================================
# Formatting helpers
# =============================================================================

def format_angle(x: float) -> str:
    """Angle in units of π alongside radians, e.g. '0.75π (2.35619 rad)'."""
    return f"{x / PI:.6g}π ({x:.6g} rad)"


def format_point(c: WeylPoint) -> str:
    return f"{c}  = [{c.c1:.10g}, {c.c2:.10g}, {c.c3:.10g}] rad"


def format_complex(z: complex) -> str:
    return f"{z.real:+.10g}{z.imag:+.10g}i"


def _num(x: float) -> str:
    return f"{x:.12g}"


# =============================================================================
# Gate files
# =============================================================================

def write_gate_file(path: str | Path, matrix, name: str = "") -> None:
    """Write a gate as JSON: {"name": ..., "matrix": 4 rows of [re, im]}.

    Floats are written with 17 significant digits so the matrix round-trips
    bit-exactly.

    Raises:
        FileOperationError: the file cannot be written
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    document = {
        "name": name,
        "matrix": [[[float(f"{z.real:.17g}"), float(f"{z.imag:.17g}")] for z in row]
                   for row in matrix],
    }
    try:
        Path(path).write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise FileOperationError(f"Failed to write gate file: {e}", {"path": str(path)})


def read_gate_file(path: str | Path) -> tuple[np.ndarray, str]:
    """Parse a gate file.

    Raises:
        FileOperationError: file missing or unreadable
        GateFileError: malformed document
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FileOperationError(f"Failed to read gate file: {e}", {"path": str(path)})

    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise GateFileError(f"Invalid JSON: {e}", {"path": str(path)})
    if not isinstance(document, dict) or "matrix" not in document:
        raise GateFileError("Gate file needs a 'matrix' key", {"path": str(path)})

    rows = document["matrix"]
    try:
        matrix = np.array([[complex(float(re), float(im)) for re, im in row] for row in rows],
                          dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise GateFileError(f"Matrix entries must be [re, im] pairs: {e}", {"path": str(path)})
    if matrix.shape != (4, 4):
        raise GateFileError("Matrix must be 4x4", {"path": str(path), "shape": matrix.shape})
    return matrix, str(document.get("name") or path.stem)


def build_gate(name: str, param: float | None = None, coords=None) -> np.ndarray:
    """Built-in gate by name (see GATE_NAMES)."""
    if name == "identity":
        return np.array(IDENTITY)
    if name == "cnot":
        return np.array(CNOT)
    if name == "swap":
        return np.array(SWAP)
    if name in ("swap_alpha", "swap_alpha_inv"):
        if param is None:
            raise ValueError(f"{name} needs --param")
        return swap_alpha(param, inverse=name == "swap_alpha_inv")
    if name == "canonical":
        if coords is None:
            raise ValueError("canonical needs --c c1 c2 c3")
        return canonical_gate(coords)
    raise ValueError(f"Unknown gate '{name}'")


# =============================================================================
# Analysis
# =============================================================================

def analyze_gate(u, name: str = "", mc: int | None = None, seed: int = 0) -> dict:
    """Analysis report of one gate as a JSON-ready dict.

    Raises:
        NotUnitaryError: u is not unitary
    """
    u = assert_unitary(u)
    invariants = local_invariants(u)
    c = coordinates_of(u)
    named = nearest_named_point(c)
    pe_coords = is_perfect_entangler_coords(c)
    pe_hull = is_perfect_entangler_hull(u)
    if pe_coords != pe_hull:
        logger.warning("Perfect-entangler tests disagree for %s at %s", name or "gate", c)

    report = {
        "name": name,
        "g1": [invariants.g1.real, invariants.g1.imag],
        "g2": invariants.g2,
        "coordinates": list(c),
        "coordinates_pi": list(c.in_pi_units()),
        "named_point": named.label if named else None,
        "perfect_entangler": {"coordinates": pe_coords, "convex_hull": pe_hull},
        "region": pe_region(c),
        "entangling_power": entangling_power_closed(c),
    }
    if mc is not None:
        estimate = entangling_power_mc(u, mc, seed)
        report["entangling_power_mc"] = {
            "mean": estimate.mean, "std_error": estimate.std_error,
            "n_samples": estimate.n_samples, "seed": seed,
        }
    return report


def print_analysis(report: dict):
    """Human-readable analysis report."""
    print_header(f"Gate: {report['name'] or '(unnamed)'}")
    c = WeylPoint.of(report["coordinates"])
    print_field("G1", format_complex(complex(*report["g1"])))
    print_field("G2", f"{report['g2']:+.10g}")
    print_field("Weyl point", format_point(c))
    if report["named_point"]:
        print_field("Named point", report["named_point"])
    pe = report["perfect_entangler"]
    verdict = "yes" if pe["coordinates"] else "no"
    print_field("Perfect entangler", f"{verdict} (convex hull: {'yes' if pe['convex_hull'] else 'no'})")
    print_field("Region", report["region"])
    print_field("Entangling power", f"{report['entangling_power']:.10g}")
    if "entangling_power_mc" in report:
        mc = report["entangling_power_mc"]
        print_field("Monte Carlo", f"{mc['mean']:.6f} ± {mc['std_error']:.2g} "
                                   f"(n={mc['n_samples']}, seed={mc['seed']})")
    if pe["coordinates"] != pe["convex_hull"]:
        print_warning("Perfect-entangler tests disagree")


# =============================================================================
# Sweeps
# =============================================================================

@dataclass(frozen=True)
class SweepRecord:
    """One grid point of a family sweep."""
    family_label: str
    param_value: float
    c1: float
    c2: float
    c3: float
    e_p: float
    g1_re: float
    g1_im: float
    g2: float
    is_pe: bool

    def as_row(self) -> list[str]:
        return [self.family_label, *(_num(x) for x in astuple(self)[1:9]),
                "true" if self.is_pe else "false"]

    @classmethod
    def from_row(cls, row: list[str]) -> "SweepRecord":
        return cls(row[0], *(float(x) for x in row[1:9]), row[9] == "true")


SWEEP_HEADER = [f.name for f in fields(SweepRecord)]


def sweep_records(family, grid: int) -> list[SweepRecord]:
    """Recomputed coordinates, entangling power and invariants along a family."""
    family = get_family(family)
    records = []
    for t in family.grid(grid):
        c = edge_point(family, t)
        invariants = local_invariants(canonical_gate(c))
        records.append(SweepRecord(
            family.label, float(t), c.c1, c.c2, c.c3, entangling_power_closed(c),
            invariants.g1.real, invariants.g1.imag, invariants.g2,
            is_perfect_entangler_coords(c)))
    return records


def write_sweep_csv(path: str | Path, records: list[SweepRecord]) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(SWEEP_HEADER)
            writer.writerows(r.as_row() for r in records)
    except OSError as e:
        raise FileOperationError(f"Failed to write sweep: {e}", {"path": str(path)})


def read_sweep_csv(path: str | Path) -> list[SweepRecord]:
    """Read a sweep CSV written by write_sweep_csv.

    Raises:
        FileOperationError: unreadable file or unexpected header
    """
    try:
        with open(path, encoding="utf-8", newline="") as f:
            reader = csv.reader(f)
            header = next(reader, None)
            if header != SWEEP_HEADER:
                raise FileOperationError("Unexpected sweep header",
                                         {"path": str(path), "header": header})
            return [SweepRecord.from_row(row) for row in reader]
    except OSError as e:
        raise FileOperationError(f"Failed to read sweep: {e}", {"path": str(path)})


# =============================================================================
# Commands
# =============================================================================

def cmd_analyze(args) -> int:
    matrix, name = read_gate_file(args.file)
    report = analyze_gate(matrix, name, mc=args.mc, seed=args.seed)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print_analysis(report)
    return 0


def cmd_tables(args) -> int:
    labels = edges_of_table(args.which)
    title = "Weyl chamber edges" if args.which == "weyl" else "Perfect-entangler polyhedron edges"
    print_header(title)

    total_mismatches = 0
    for label in labels:
        family = get_family(label)
        rows, mismatches = cross_check_family(family, args.grid)
        total_mismatches += len(mismatches)
        start, end = family.endpoints
        print(f"{Colors.BOLD}{label}{Colors.ENDC}  ({start} -> {end}, "
              f"{family.param_symbol} in [0, {family.param_range[1] / PI:.4g}π])")
        print(f"  {family.param_symbol:>8}  {'e_p':>12}  {'G1 (closed)':>26}  "
              f"{'G2':>12}  {'e_p*':>12}  {'G1*':>26}  {'G2*':>12}  {'max diff':>9}")
        for row in rows:
            closed, pipe = row.closed, row.pipeline
            print(f"  {row.param / PI:>7.4g}π  {closed.e_p:>12.8f}  {format_complex(closed.g1):>26}  "
                  f"{closed.g2:>+12.8f}  {pipe.e_p:>12.8f}  {format_complex(pipe.g1):>26}  "
                  f"{pipe.g2:>+12.8f}  {row.discrepancy:>9.1e}")
        print()

    print_info("Starred columns are recomputed from the gate matrix")
    if total_mismatches:
        print_warning(f"{total_mismatches} row(s) disagree with the closed forms; "
                      "recomputed values apply")
    else:
        print_success("All rows agree with the closed forms")
    return 0


def cmd_sweep(args) -> int:
    records = sweep_records(args.family, args.grid)
    write_sweep_csv(args.out, records)
    print_success(f"Wrote {len(records)} rows for {records[0].family_label} to {args.out}")
    return 0


def cmd_verify(args) -> int:
    report = verify_all_constructions(args.grid)
    print_header("CNOT-class constructions")
    for r in report.reports:
        construction = CONSTRUCTIONS[r.name]
        line = (f"{r.name:<14} layer {construction.layer[0]}⊗{construction.layer[1]}  "
                f"points {len(r.params):>3}  max|G1| {r.max_abs_g1:.2e}  "
                f"max|G2-1| {r.max_g2_deviation:.2e}")
        if r.passed:
            print_success(line)
        else:
            print_error(line)
            for t in r.failures:
                print_error(f"  fails at {format_angle(t)}")

    passed = sum(r.passed for r in report.reports)
    print(f"\n{passed}/{len(report.reports)} constructions verify")
    return 0 if report.ok else 1


def cmd_pe_volume(args) -> int:
    if args.n < MIN_PE_SAMPLES:
        print_error(f"--n must be at least {MIN_PE_SAMPLES}")
        return 1
    points = sample_chamber(args.n, args.seed)
    fraction = float(np.mean(perfect_entangler_mask(points)))
    std_error = math.sqrt(fraction * (1.0 - fraction) / args.n)
    print_header("Perfect-entangler volume")
    print_field("Samples", f"{args.n} (seed {args.seed})")
    print_field("Fraction", f"{fraction:.6f} ± {std_error:.6f}")
    return 0


def cmd_gates(args) -> int:
    matrix = build_gate(args.name, args.param, args.c)
    label = args.name if args.param is None else f"{args.name}({args.param:g})"
    write_gate_file(args.out, matrix, label)
    print_success(f"Wrote {label} to {args.out}")
    return 0


def cmd_probe(args) -> int:
    family = get_family(args.edge)
    layers = probe_pauli_layers(family, args.grid)
    print_header(f"Pauli layers on {family.label}")
    if not layers:
        print_warning("No Pauli layer gives the CNOT class on the whole edge")
    for layer in layers:
        print_success(f"{layer[0]}⊗{layer[1]}")
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "tables": cmd_tables,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "pe-volume": cmd_pe_volume,
    "gates": cmd_gates,
    "probe": cmd_probe,
}


def _grid(value: str) -> int:
    grid = int(value)
    if grid < 2:
        raise argparse.ArgumentTypeError("grid must be at least 2")
    return grid


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Two-qubit gate geometry: invariants, Weyl chamber, entangling power",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Configuration:
  Tolerances are read from --config, ${CONFIG_ENV_VAR}, or templates/weylkit.yaml.

Exit codes:
  0: Success
  1: Analysis or verification failed
  2: File not found, unreadable or malformed
        """
    )
    parser.add_argument("--config", help=f"Path to a YAML config (overrides ${CONFIG_ENV_VAR})")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")
    parser.add_argument("--no-color", action="store_true", help="Disable colored output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Analyze a gate file")
    p.add_argument("file", help="JSON gate file")
    p.add_argument("--mc", type=int, default=None, metavar="N",
                   help="Add a Monte-Carlo entangling power estimate with N samples")
    p.add_argument("--seed", type=int, default=0, help="Monte-Carlo seed (default: 0)")
    p.add_argument("--json", action="store_true", help="Print the report as JSON")

    p = sub.add_parser("tables", help="Edge tables, closed form vs recomputed")
    p.add_argument("which", choices=["weyl", "polyhedron"])
    p.add_argument("--grid", type=_grid, default=5, help="Grid points per edge (default: 5)")

    p = sub.add_parser("sweep", help="Sweep one family and write CSV")
    p.add_argument("family", help=f"Family label ({', '.join(FAMILIES)})")
    p.add_argument("--grid", type=_grid, default=101, help="Grid points (default: 101)")
    p.add_argument("--out", required=True, help="Output CSV path")

    p = sub.add_parser("verify", help="Verify the CNOT-class constructions")
    p.add_argument("--grid", type=_grid, default=21, help="Grid points per edge (default: 21)")

    p = sub.add_parser("pe-volume", help="Perfect-entangler fraction of the chamber")
    p.add_argument("--n", type=int, default=1_000_000, help="Samples (default: 1000000)")
    p.add_argument("--seed", type=int, default=0, help="Sampling seed (default: 0)")

    p = sub.add_parser("gates", help="Write a built-in gate file")
    p.add_argument("name", choices=GATE_NAMES)
    p.add_argument("--param", type=float, default=None, help="α for swap_alpha / swap_alpha_inv")
    p.add_argument("--c", type=float, nargs=3, default=None, metavar=("C1", "C2", "C3"),
                   help="Coordinates (radians) for canonical")
    p.add_argument("--out", required=True, help="Output gate file path")

    p = sub.add_parser("probe", help="Probe Pauli layers on a polyhedron edge")
    p.add_argument("edge", help="Family label, e.g. PN")
    p.add_argument("--grid", type=_grid, default=21, help="Grid points (default: 21)")

    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = configure_settings(args.config)
    except ConfigurationError as e:
        print_error(str(e))
        return 2

    setup_colors(settings.color and not args.no_color)
    logging.basicConfig(level=logging.DEBUG if args.verbose else settings.log_level,
                        format="%(levelname)s %(name)s: %(message)s")

    try:
        return COMMANDS[args.command](args)
    except (FileOperationError, GateFileError) as e:
        print_error(str(e))
        return 2
    except WeylKitError as e:
        print_error(str(e))
        return 1
    except ValueError as e:
        print_error(str(e))
        return 1
    finally:
        reset_settings()


if __name__ == "__main__":
    sys.exit(main())
