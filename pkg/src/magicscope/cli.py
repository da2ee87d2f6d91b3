"""Command-line front end.

Subcommands:
  polytope   measurement file -> vertex file (json or txt)
  rom        measurement file + expectations -> robustness verdict
  scan       spin-chain parameter sweep -> CSV
  oracle     brute-force cross-checks at small qubit counts

Exit codes: 0 success, 1 usage, 2 parse, 3 infeasible/inconsistent
data, 4 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import oracle as oracle_mod
from .fgraph import build_frustration_graph, enumerate_maximal_independent_sets
from .pauli import MeasurementSet, PauliError, format_pauli, read_measurement_file
from .polytope import v_representation
from .rom import DECISION_TOLERANCE, ExpectationVector, reduced_rom, sample_complexity
from .spinchain import (
    SpinChainSpec,
    hamiltonian_measurement_set,
    sweep,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_SOLVER = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _default_threads() -> int:
    env = os.environ.get("MAGICSCOPE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="magicscope")
    parser.add_argument("--threads", type=int, default=_default_threads())
    parser.add_argument("--lp-tol", type=float, default=1e-9)
    parser.add_argument("--decision-tol", type=float, default=DECISION_TOLERANCE)
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p_poly = sub.add_parser("polytope", help="vertex file from a measurement file")
    p_poly.add_argument("measurements")
    p_poly.add_argument("--out", default="-")
    p_poly.add_argument("--format", choices=("json", "txt"), default="json")

    p_rom = sub.add_parser("rom", help="robustness verdict from expectations")
    p_rom.add_argument("measurements")
    p_rom.add_argument("expectations")

    p_scan = sub.add_parser("scan", help="spin-chain parameter sweep")
    p_scan.add_argument("--model", required=True, choices=("tfim", "annni", "xxz"))
    p_scan.add_argument("--n", required=True, type=int)
    p_scan.add_argument("--grid", required=True, help="param=start:stop:steps[,...]")
    p_scan.add_argument("--measurements", default="first-cell",
                        help="first-cell, all-terms, or a measurement file path")
    p_scan.add_argument("--boundary", choices=("periodic", "open"), default="periodic")
    p_scan.add_argument("--out", required=True)
    p_scan.add_argument("--resume", action="store_true")

    p_oracle = sub.add_parser("oracle", help="brute-force cross checks")
    p_oracle.add_argument("--check", required=True,
                          choices=("hulls", "counts", "rom-bound", "lemma1"))
    p_oracle.add_argument("--n", type=int, default=2)
    p_oracle.add_argument("--trials", type=int, default=20)
    return parser


def _load_measurements(path: str) -> MeasurementSet:
    try:
        return read_measurement_file(path)
    except OSError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    except PauliError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None


def _read_expectations(path: str, measurements: MeasurementSet) -> ExpectationVector:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    stripped = text.lstrip()
    if stripped.startswith("{"):
        payload = json.loads(text)
        values = payload["expectations"]
    else:
        values = [float(line) for line in text.splitlines() if line.strip()]
    if len(values) != len(measurements):
        raise CliError(
            f"{len(values)} expectations for {len(measurements)} measurements",
            EXIT_PARSE,
        )
    try:
        return ExpectationVector.of(values)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None


def _cmd_polytope(args) -> int:
    measurements = _load_measurements(args.measurements)
    start = time.perf_counter()
    graph = build_frustration_graph(measurements)
    independent_sets = list(enumerate_maximal_independent_sets(graph))
    vset = v_representation(measurements)
    elapsed = time.perf_counter() - start
    body = vset.to_json() if args.format == "json" else vset.to_txt()
    if args.out == "-":
        sys.stdout.write(body)
        if not body.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    print(
        f"|stab(M)| = {len(vset.vertices)}  |I_max| = {len(independent_sets)}  "
        f"elapsed = {elapsed:.3f}s",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_rom(args) -> int:
    measurements = _load_measurements(args.measurements)
    expectations = _read_expectations(args.expectations, measurements)
    vset = v_representation(measurements)
    result = reduced_rom(vset, expectations, decision_tolerance=args.decision_tol)
    if result.status == "infeasible":
        raise CliError("expectations lie outside the affine hull", EXIT_INFEASIBLE)
    if result.status != "optimal":
        raise CliError("LP solver failed", EXIT_SOLVER)
    payload = result.to_json_dict()
    payload["witnessed"] = not result.member
    payload["sample_bound"] = sample_complexity(max(1.0, result.rom), 0.1, 0.05)
    print(json.dumps(payload, indent=1))
    return EXIT_OK


def _parse_grid(spec: str) -> List[Dict[str, float]]:
    axes = []
    for part in spec.split(","):
        try:
            name, rng = part.split("=")
            start, stop, steps = rng.split(":")
            count = int(steps)
            if count < 1:
                raise ValueError
            values = np.linspace(float(start), float(stop), count)
        except ValueError:
            raise CliError(f"bad grid axis {part!r}", EXIT_USAGE) from None
        axes.append((name.strip(), values))
    grid: List[Dict[str, float]] = [{}]
    for name, values in axes:
        grid = [{**point, name: float(v)} for point in grid for v in values]
    return grid


def _cmd_scan(args) -> int:
    spec = SpinChainSpec(args.model, args.n, {}, args.boundary)
    grid = _parse_grid(args.grid)
    if args.measurements in ("first-cell", "all-terms"):
        measurements = hamiltonian_measurement_set(spec, args.measurements)
    else:
        measurements = _load_measurements(args.measurements)
    vset = v_representation(measurements)
    param_names = sorted(grid[0].keys())
    columns = (
        ["model", "n", "boundary"]
        + param_names
        + ["energy", "gap_estimate"]
        + [format_pauli(p) for p in measurements]
        + ["rom", "degenerate_flag", "solver_status"]
    )

    done = set()
    if args.resume and os.path.exists(args.out):
        with open(args.out, newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                done.add(tuple(row[name] for name in param_names))

    def key(point: Dict[str, float]):
        return tuple(repr(point[name]) for name in param_names)

    pending = [p for p in grid if key(p) not in done]
    records = sweep(spec, pending, measurements, vset, threads=args.threads)

    mode = "a" if (args.resume and done) else "w"
    failed = 0
    with open(args.out, mode, newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        if mode == "w":
            writer.writerow(columns)
        for record in records:
            if record.solver_status.startswith("error"):
                failed += 1
            row = [args.model, args.n, args.boundary]
            row += [repr(record.params[name]) for name in param_names]
            row += [record.energy, record.gap_estimate]
            row += list(record.expectations) if record.expectations else [""] * len(measurements)
            row += [record.rom, record.degenerate_flag, record.solver_status]
            writer.writerow(row)
    if failed:
        print(f"{failed} grid points failed", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def _random_measurement_set(n: int, m: int, rng: np.random.Generator) -> MeasurementSet:
    from .pauli import PauliString

    chosen = {}
    while len(chosen) < m:
        x = int(rng.integers(0, 1 << n))
        z = int(rng.integers(0, 1 << n))
        if x == 0 and z == 0:
            continue
        sign = int(rng.integers(0, 2))
        k = ((x & z).bit_count() + 2 * sign) % 4
        chosen[(k, x, z)] = PauliString(n, k, x, z)
    return MeasurementSet(tuple(chosen.values()))


def _cmd_oracle(args) -> int:
    rng = np.random.default_rng(args.seed)
    failures = []
    if args.check == "counts":
        expected = oracle_mod.stabilizer_group_count(args.n)
        actual = len(oracle_mod.enumerate_stabilizer_groups(args.n))
        ok = expected == actual
        print(json.dumps({"check": "counts", "n": args.n, "expected": expected,
                          "actual": actual, "pass": ok}))
        return EXIT_OK if ok else EXIT_INFEASIBLE
    if args.n > 3:
        raise CliError("oracle checks capped at n <= 3", EXIT_USAGE)
    for trial in range(args.trials):
        m = int(rng.integers(2, 7))
        measurements = _random_measurement_set(args.n, m, rng)
        if args.check == "hulls":
            bottom = [v.coords for v in v_representation(measurements).vertices]
            top = list(oracle_mod.topdown_vertices(measurements))
            if not oracle_mod.hull_equal(bottom, top):
                failures.append([format_pauli(p) for p in measurements])
        elif args.check == "lemma1":
            base = v_representation(measurements).to_txt()
            padded = v_representation(measurements.padded(measurements.n + 2)).to_txt()
            if base != padded:
                failures.append([format_pauli(p) for p in measurements])
        else:  # rom-bound
            state = oracle_mod.random_pure_state(args.n, rng)
            table = oracle_mod.full_pauli_table(state)
            full = oracle_mod.full_rom(table, args.n)
            vset = v_representation(measurements)
            b = ExpectationVector.of(oracle_mod.measurement_expectations(table, measurements))
            reduced = reduced_rom(vset, b).rom
            if reduced > full + 1e-6:
                failures.append([format_pauli(p) for p in measurements])
    report = {
        "check": args.check,
        "n": args.n,
        "trials": args.trials,
        "failures": failures,
        "pass": not failures,
    }
    print(json.dumps(report))
    return EXIT_OK if not failures else EXIT_INFEASIBLE


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    for tol in (args.lp_tol, args.decision_tol):
        if tol <= 0:
            print("tolerances must be positive", file=sys.stderr)
            return EXIT_USAGE
    handlers = {
        "polytope": _cmd_polytope,
        "rom": _cmd_rom,
        "scan": _cmd_scan,
        "oracle": _cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
