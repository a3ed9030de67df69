"""Command-line experiment runner.

    tune --config cfg.json [--seed N] [--out DIR]   full experiment
    tune verify-tables [--plant plant.json]          deterministic check of
                                                     the stored reference designs
    tune eig [--plant plant.json] [--kc K --t1 T1 --t2 T2]
                                                     one-shot spectrum + zeta_min

Exit codes: 0 success, 1 configuration error, 2 numerical failure,
3 verification mismatch.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .control import (
    LeadLagParams,
    closed_loop_spectrum,
    damping_ratio,
    load_plant,
    min_damping_ratio,
    reference_plant,
)
from .exceptions import (
    ConfigError,
    ConvergenceFailure,
    ExperimentFailure,
    InvalidParamsError,
    ObjectiveEvaluationError,
    ZeroEigenvalueError,
)
from .experiment import config_from_file, run_experiment, verify_reference_tables
from .linalg import eigenvalues

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_MISMATCH = 3

_NUMERICAL_ERRORS = (
    ConvergenceFailure,
    ZeroEigenvalueError,
    ObjectiveEvaluationError,
    ExperimentFailure,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tune",
        description="Tune a lead-lag damping controller with seeded population optimizers.",
    )
    parser.add_argument("--config", help="experiment config JSON (runs the full experiment)")
    parser.add_argument("--seed", type=int, help="override: run only this seed")
    parser.add_argument("--out", help="override: output directory")
    sub = parser.add_subparsers(dest="command")

    verify = sub.add_parser(
        "verify-tables", help="recompute the stored reference designs and report pass/fail"
    )
    verify.add_argument("--plant", help="plant JSON file (default: bundled reference plant)")

    eig = sub.add_parser("eig", help="print the spectrum and minimum damping ratio")
    eig.add_argument("--plant", help="plant JSON file (default: bundled reference plant)")
    eig.add_argument("--kc", type=float, help="controller gain (with --t1/--t2: closed loop)")
    eig.add_argument("--t1", type=float, help="lead time constant")
    eig.add_argument("--t2", type=float, help="lag time constant")
    return parser


def _load(plant_path):
    if plant_path is None:
        return reference_plant()
    return load_plant(plant_path)


def _cmd_experiment(args) -> int:
    if not args.config:
        print("error: --config is required to run an experiment", file=sys.stderr)
        return EXIT_CONFIG
    config = config_from_file(args.config)
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError(f"--seed must be nonnegative, got {args.seed}")
        config = replace(config, seeds=(args.seed,))
    if args.out is not None:
        config = replace(config, output_dir=Path(args.out))
    report = run_experiment(config)
    print(report.to_text(), end="")
    print(f"wrote report.json, report.txt and convergence CSVs to {config.output_dir}")
    return EXIT_OK


def _cmd_verify_tables(args) -> int:
    plant = _load(args.plant)
    results = verify_reference_tables(plant)
    failed = 0
    for check in results:
        status = "PASS" if check.passed else "FAIL"
        if isinstance(check.expected, complex):
            detail = f"expected {check.expected:.4f}, got {check.actual:.4f}"
        else:
            detail = f"expected {check.expected:.4f}, got {check.actual:.6f}"
        print(f"[{status}] {check.name}: {detail} (tol {check.tolerance:g})")
        failed += 0 if check.passed else 1
    total = len(results)
    print(f"{total - failed}/{total} checks passed")
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


def _cmd_eig(args) -> int:
    plant = _load(args.plant)
    given = [v is not None for v in (args.kc, args.t1, args.t2)]
    if any(given) and not all(given):
        raise ConfigError("provide all of --kc, --t1, --t2 or none of them")
    if all(given):
        params = LeadLagParams(args.kc, args.t1, args.t2)
        spectrum = closed_loop_spectrum(plant, params)
        print(f"closed-loop spectrum for kc={args.kc} t1={args.t1} t2={args.t2}:")
    else:
        spectrum = eigenvalues(plant.a)
        print("open-loop spectrum:")
    for lam in spectrum:
        print(f"  {lam.real:>12.6f} {lam.imag:>+12.6f}j   zeta={damping_ratio(lam):.6f}")
    print(f"zeta_min = {min_damping_ratio(spectrum):.6f}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify-tables":
            return _cmd_verify_tables(args)
        if args.command == "eig":
            return _cmd_eig(args)
        return _cmd_experiment(args)
    except (ConfigError, InvalidParamsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
