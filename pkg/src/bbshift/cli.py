"""Command-line front end: sweep, convert, check, rydberg.

Exit codes: 0 ok, 1 self-check failure, 2 usage/domain error, 3 evaluation
budget exhausted. Output files are written in one shot after all numbers
exist, so a nonzero exit never leaves a partial file behind.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import __version__
from .acceptance import run_all
from .energies import rydberg_frequency_shift
from .model import (
    G_MAX,
    NU_MAX,
    CODATA2018,
    PhysicalInput,
    ValidityError,
    reduce,
)
from .quadrature import DEFAULT_BUDGET, QuadratureBudgetError
from .sweep import GridSpec, run_sweep
from .svgplot import render_loglog

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _usage_error(msg: str) -> int:
    print(f"bbshift: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def cmd_sweep(args) -> int:
    try:
        grid = GridSpec.parse(args.theta)
    except ValueError as e:
        return _usage_error(str(e))
    if not 0.0 < args.g < G_MAX:
        return _usage_error(
            f"--g {args.g:g} outside the weak-coupling domain (0, {G_MAX:g})"
        )
    if not 0.0 <= args.nu < NU_MAX:
        return _usage_error(
            f"--nu {args.nu:g} outside the dilute-medium domain [0, {NU_MAX:g})"
        )
    try:
        table = run_sweep(
            args.g, grid, nu=args.nu, rel_tol=args.tol, budget=args.budget
        )
    except ValidityError as e:
        return _usage_error(str(e))
    except ValueError as e:
        return _usage_error(str(e))
    except QuadratureBudgetError as e:
        print(f"bbshift: numerical budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    text = table.to_csv() if args.format == "csv" else table.to_json()
    _write(args.out, text)
    if args.plot:
        thetas = [r.theta for r in table.rows]
        svg = render_loglog(
            thetas,
            [
                ("delta_e", [r.delta_e for r in table.rows]),
                ("delta_f", [r.delta_f for r in table.rows]),
            ],
            title=f"energy shifts, g={table.g:g}",
            x_label="theta (kT/(hbar omega0))",
            y_label="|shift| (hbar omega0); dashed = negative",
        )
        _write(args.plot, svg)
    return EXIT_OK


def cmd_convert(args) -> int:
    cutoff = args.cutoff if args.cutoff is not None else 100.0 * args.omega0
    try:
        inp = PhysicalInput(temperature=args.temperature, omega0=args.omega0)
        params = reduce(inp, args.density, cutoff, args.volume)
    except ValidityError as e:
        return _usage_error(str(e))
    print(f"theta      = {params.theta:.12g}")
    print(f"g          = {params.g:.12g}")
    print(f"nu         = {params.nu:.12g}")
    print(f"lambda_cut = {params.lambda_cut:.12g}")
    print(f"v_tilde    = {params.v_tilde:.12g}")
    print(f"NV         = {params.particle_count:.12g}")
    return EXIT_OK


def cmd_check(args) -> int:
    faults = frozenset({args.fault}) if args.fault else frozenset()
    try:
        results = run_all(fast=args.fast, faults=faults)
    except ValueError as e:
        return _usage_error(str(e))
    for r in results:
        print(r.line())
    n_fail = sum(1 for r in results if not r.passed)
    n_skip = sum(1 for r in results if r.skipped)
    print(
        f"{len(results) - n_fail - n_skip} passed, {n_fail} failed, "
        f"{n_skip} skipped"
    )
    return EXIT_OK if n_fail == 0 else EXIT_CHECK_FAILED


def cmd_rydberg(args) -> int:
    if args.temperature <= 0.0:
        return _usage_error(
            f"--temperature must be positive, got {args.temperature:g}"
        )
    dnu = rydberg_frequency_shift(args.temperature, CODATA2018)
    print(
        f"transition-frequency convention (+T^2): delta_nu    = {dnu:+.6e} Hz"
    )
    print(
        f"oscillator-energy convention    (-T^2): delta_omega = "
        f"{-2.0 * math.pi * dnu:+.6e} rad/s"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bbshift",
        description="blackbody radiation energy and frequency shifts of a "
        "charged harmonic oscillator",
    )
    p.add_argument("--version", action="version", version=f"bbshift {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep", help="tabulate energy shifts over a theta grid")
    sp.add_argument("--g", type=float, required=True, help="reduced linewidth")
    sp.add_argument(
        "--theta", required=True, help="grid min:max:count[:log|lin], log default"
    )
    sp.add_argument(
        "--nu", type=float, default=0.0,
        help="medium density parameter, metadata only (default 0)",
    )
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--plot", default=None, metavar="PATH.svg")
    sp.add_argument("--tol", type=float, default=1e-8, help="relative tolerance")
    sp.add_argument("--out", default="-", help="output path, '-' for stdout")
    sp.add_argument(
        "--budget", type=int, default=DEFAULT_BUDGET, help=argparse.SUPPRESS
    )
    sp.set_defaults(fn=cmd_sweep)

    cp = sub.add_parser("convert", help="reduce lab units to model parameters")
    cp.add_argument("--omega0", type=float, required=True, help="rad/s")
    cp.add_argument("--temperature", type=float, required=True, help="kelvin")
    cp.add_argument("--density", type=float, default=0.0, help="cm^-3 (default 0)")
    cp.add_argument("--volume", type=float, default=1.0, help="cm^3 (default 1)")
    cp.add_argument(
        "--cutoff", type=float, default=None,
        help="rad/s (default 100*omega0)",
    )
    cp.set_defaults(fn=cmd_convert)

    kp = sub.add_parser("check", help="run the acceptance self-checks")
    kp.add_argument(
        "--fast", action="store_true", help="skip the multi-second checks"
    )
    kp.add_argument("--fault", default=None, help=argparse.SUPPRESS)
    kp.set_defaults(fn=cmd_check)

    rp = sub.add_parser("rydberg", help="room-temperature frequency shift")
    rp.add_argument("--temperature", type=float, required=True, help="kelvin")
    rp.set_defaults(fn=cmd_rydberg)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
