"""Command-line surface: steady points, sweeps, cuts, dynamics, regression.

Exit codes: 0 on success, 1 for bad arguments or config, 2 when the steady
solver fails on a single-point run.  Sweep runs always exit 0 and record
per-point failures in the CSV status column.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict

import numpy as np

from .liouvillian import SystemParams
from .phasespace import QuadratureSpec
from .sweep import (
    arnold_sweep,
    balanced_cut_scan,
    dynamics_trace,
    evaluate_point,
    linear_regression,
    write_dynamics_csv,
    write_sweep_csv,
)

PARAM_KEYS = ("gamma_g_a", "gamma_d_a", "gamma_g_b", "gamma_d_b",
              "epsilon", "delta", "omega_ref")
QUAD_KEYS = ("n_theta", "n_phi", "n_phi_out")


class ConfigError(ValueError):
    """Config file missing, unparsable, or semantically invalid."""


def load_config(path: str) -> tuple[SystemParams, QuadratureSpec]:
    """Read the flat JSON config; all keys optional, unknown keys rejected."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")

    unknown = sorted(set(raw) - set(PARAM_KEYS) - set(QUAD_KEYS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    for key, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"config key {key} must be a number, got {value!r}")
    try:
        params = SystemParams(
            **{k: float(raw[k]) for k in PARAM_KEYS if k in raw}
        )
        quad = QuadratureSpec(**{k: int(raw[k]) for k in QUAD_KEYS if k in raw})
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return params, quad


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinsync",
        description="Coupled spin-1 limit cycles: synchronization and "
                    "entanglement measures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    steady = sub.add_parser("steady", help="solve one steady state")
    steady.add_argument("--config", required=True)
    steady.add_argument("--out", help="write record and state as JSON here")

    sweep = sub.add_parser("sweep", help="coupling-detuning grid sweep")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--eps-min", type=float, default=0.0)
    sweep.add_argument("--eps-max", type=float, default=0.1)
    sweep.add_argument("--eps-steps", type=int, default=101)
    sweep.add_argument("--delta-min", type=float, default=-1.0)
    sweep.add_argument("--delta-max", type=float, default=1.0)
    sweep.add_argument("--delta-steps", type=int, default=101)
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--jobs", type=int, default=None)

    scan = sub.add_parser("scan-balanced", help="scan spin-B damping on a cut")
    scan.add_argument("--config", required=True)
    scan.add_argument("--gdb-min", type=float, default=1.0)
    scan.add_argument("--gdb-max", type=float, default=199.0)
    scan.add_argument("--steps", type=int, default=101)
    scan.add_argument("--out", required=True)

    dynamics = sub.add_parser("dynamics", help="integrate from the resting state")
    dynamics.add_argument("--config", required=True)
    dynamics.add_argument("--t-max", type=float, required=True)
    dynamics.add_argument("--samples", type=int, default=11)
    dynamics.add_argument("--out", required=True)

    regress = sub.add_parser("regress", help="least-squares fit of CSV columns")
    regress.add_argument("--in", dest="infile", required=True)
    regress.add_argument("--x", required=True)
    regress.add_argument("--y", required=True)
    return parser


def _cmd_steady(args) -> int:
    params, quad = load_config(args.config)
    record, rho = evaluate_point(params, quad)
    if record.status != "ok" or rho is None:
        print(f"steady solve failed: {record.status}", file=sys.stderr)
        return 2
    payload = {
        "record": asdict(record),
        "state": [[float(z.real), float(z.imag)] for z in rho.reshape(-1)],
    }
    text = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _cmd_sweep(args) -> int:
    params, quad = load_config(args.config)
    records = arnold_sweep(
        params,
        eps_range=(args.eps_min, args.eps_max),
        delta_range=(args.delta_min, args.delta_max),
        steps=(args.eps_steps, args.delta_steps),
        quad=quad,
        jobs=args.jobs,
    )
    write_sweep_csv(records, args.out)
    return 0


def _cmd_scan_balanced(args) -> int:
    params, quad = load_config(args.config)
    records = balanced_cut_scan(
        params, ratio_range=(args.gdb_min, args.gdb_max), steps=args.steps,
        quad=quad,
    )
    write_sweep_csv(records, args.out)
    return 0


def _cmd_dynamics(args) -> int:
    params, quad = load_config(args.config)
    rows = dynamics_trace(params, t_max=args.t_max, samples=args.samples,
                          quad=quad)
    write_dynamics_csv(rows, args.out)
    return 0


def _cmd_regress(args) -> int:
    try:
        with open(args.infile) as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or args.x not in reader.fieldnames \
                    or args.y not in reader.fieldnames:
                print(f"columns {args.x!r}/{args.y!r} not found in "
                      f"{args.infile}", file=sys.stderr)
                return 1
            xs, ys = [], []
            for row in reader:
                xs.append(float(row[args.x]))
                ys.append(float(row[args.y]))
    except OSError as exc:
        print(f"cannot read {args.infile}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"non-numeric data in requested columns: {exc}", file=sys.stderr)
        return 1
    result = linear_regression(np.array(xs), np.array(ys))
    print(json.dumps(asdict(result), indent=2))
    return 0


COMMANDS = {
    "steady": _cmd_steady,
    "sweep": _cmd_sweep,
    "scan-balanced": _cmd_scan_balanced,
    "dynamics": _cmd_dynamics,
    "regress": _cmd_regress,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors; fold the
        # latter into the documented bad-arguments code.
        return 0 if exc.code == 0 else 1
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
