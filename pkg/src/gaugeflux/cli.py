"""Command-line scenario runner.

Subcommands:

    gaugeflux run <scenario.json> [--csv PATH] [--json PATH] [--quiet]
    gaugeflux list-configs
    gaugeflux fringe --variant magnetic|electric <setup flags>

Exit status is 0 iff every verification task passed.  All computation is
deterministic; a ``--seed`` flag is rejected on purpose.
"""

from __future__ import annotations

import argparse
import sys

from ._version import __version__
from .errors import GaugeFluxError, ScenarioError
from .fields import PhysicalConstants, builtin_configs
from .scenario import emit_csv, emit_json, format_table, run_scenario
from .semiclassical import (FringeSetupElectric, FringeSetupMagnetic,
                            electric_fringe, magnetic_fringe)

__all__ = ["main", "run_scenario", "emit_csv"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaugeflux",
        description="Evaluate generalized gauge functions over field "
                    "configurations and verify their identities.")
    parser.add_argument("--version", action="version",
                        version=f"gaugeflux {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a scenario file")
    run_p.add_argument("scenario", help="path to a scenario JSON file")
    run_p.add_argument("--csv", metavar="PATH", help="write per-frame rows as CSV")
    run_p.add_argument("--json", metavar="PATH", help="write the full JSON report")
    run_p.add_argument("--quiet", action="store_true", help="suppress the table")

    sub.add_parser("list-configs", help="list built-in field configurations")

    fr = sub.add_parser("fringe", help="closed-form fringe-shift calculator")
    fr.add_argument("--variant", choices=("magnetic", "electric"), required=True)
    fr.add_argument("--q-over-e", type=float, default=-1.0)
    fr.add_argument("--B", type=float, help="magnetic amplitude (magnetic variant)")
    fr.add_argument("--E", type=float, help="electric amplitude (electric variant)")
    fr.add_argument("--W", type=float, help="strip width (magnetic variant)")
    fr.add_argument("--T", type=float, help="pulse duration (electric variant)")
    fr.add_argument("--d", type=float, required=True, help="slit separation")
    fr.add_argument("--L", type=float, required=True, help="slit-screen distance")
    fr.add_argument("--lambda-dB", type=float, required=True,
                    help="de Broglie wavelength")
    fr.add_argument("--v", type=float, help="particle speed (electric variant)")
    fr.add_argument("--flux-quantum", type=float, default=1.0)
    fr.add_argument("--c", type=float, default=1.0)
    return parser


def _reject_seed(argv: list[str]) -> None:
    if any(a == "--seed" or a.startswith("--seed=") for a in argv):
        raise ScenarioError("--seed rejected: all computation is deterministic")


def _cmd_run(args) -> int:
    report = run_scenario(args.scenario)
    if args.csv:
        emit_csv(report, args.csv)
    if args.json:
        emit_json(report, args.json)
    if not args.quiet:
        print(format_table(report))
    return 0 if report.passed else 1


def _cmd_list_configs() -> int:
    for name, factory in sorted(builtin_configs().items()):
        doc = (factory.__doc__ or "").strip().splitlines()
        summary = doc[0] if doc else ""
        print(f"{name:18s} {summary}")
    return 0


def _cmd_fringe(args) -> int:
    constants = PhysicalConstants(c=args.c, flux_quantum=args.flux_quantum)
    if args.variant == "magnetic":
        missing = [n for n in ("B", "W") if getattr(args, n) is None]
        if missing:
            raise ScenarioError(f"fringe --variant magnetic needs --{missing[0]}")
        result = magnetic_fringe(FringeSetupMagnetic(
            q_over_e=args.q_over_e, B=args.B, W=args.W, d=args.d, L=args.L,
            lambda_dB=args.lambda_dB, constants=constants))
    else:
        missing = [n for n in ("E", "T", "v") if getattr(args, n) is None]
        if missing:
            raise ScenarioError(f"fringe --variant electric needs --{missing[0]}")
        result = electric_fringe(FringeSetupElectric(
            q_over_e=args.q_over_e, E=args.E, T=args.T, d=args.d, L=args.L,
            lambda_dB=args.lambda_dB, v=args.v, constants=constants))
    print(f"phi_ab   = {result.phi_ab:+.9g}")
    print(f"x_c      = {result.x_c:+.9g}")
    print(f"phi_semi = {result.phi_semi:+.9g}")
    print(f"sum      = {result.sum:+.3e}")
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        _reject_seed(argv)
        args = _build_parser().parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "list-configs":
            return _cmd_list_configs()
        return _cmd_fringe(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GaugeFluxError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
