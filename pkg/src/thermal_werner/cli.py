"""Command-line front end: ``thermal-werner {evolve,steady,figure,sweep}``.

Exit codes: 0 success, 2 usage or parse error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from .errors import NumericalFailure, SpecSyntaxError, ThermalWernerError
from .runs import (
    FIGURES,
    SWEEP_PARAMS,
    RunConfig,
    default_figure_grid,
    evolve_table,
    figure_table,
    steady_report,
    sweep_table,
)
from .specs import parse_range, parse_state_spec

EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _state(text: str):
    try:
        return parse_state_spec(text)
    except (SpecSyntaxError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--state", type=_state, help="initial state, e.g. 'a' or 'maxent:0.5,3.14159,0'")
    parser.add_argument("--g", dest="G", type=_float, default=1.0, help="collective factor G in [0, 1] (default 1)")
    temp = parser.add_mutually_exclusive_group()
    temp.add_argument("--temp", type=_float, help="reservoir temperature T/omega (0 = vacuum)")
    temp.add_argument("--beta-omega", type=_float, help="beta*omega (default 1)")
    parser.add_argument("--omega", type=_float, default=1.0)
    parser.add_argument("--gamma0", type=_float, default=1.0)
    parser.add_argument("--cap-omega", dest="Omega", type=_float, default=0.0, help="dipole-dipole coupling")
    parser.add_argument("--t-max", type=_float, default=10.0, help="final time in units of 1/gamma0")
    parser.add_argument("--dt-out", type=_float, default=0.1, help="output interval in units of 1/gamma0")
    parser.add_argument("--out", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermal-werner",
        description="Two atoms in a common thermal reservoir: dynamics, stationary states, asymptotic entanglement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="time trace of collective matrix elements as CSV")
    _common(p)

    p = sub.add_parser("steady", help="stationary state report")
    _common(p)

    p = sub.add_parser("figure", help="CSV data behind one of the figure curves fig1..fig5")
    p.add_argument("id", choices=FIGURES)
    p.add_argument("--start", type=_float)
    p.add_argument("--stop", type=_float)
    p.add_argument("--step", type=_float)
    p.add_argument("--out")

    p = sub.add_parser("sweep", help="derived quantities over a parameter grid")
    p.add_argument("param", choices=SWEEP_PARAMS)
    p.add_argument("range", help="start:stop:step")
    _common(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.temp is not None:
        if args.temp < 0:
            raise argparse.ArgumentTypeError("--temp must be >= 0")
        beta_omega = math.inf if args.temp == 0 else 1.0 / args.temp
    elif args.beta_omega is not None:
        beta_omega = args.beta_omega
    else:
        beta_omega = 1.0
    return RunConfig(
        state=args.state, G=args.G, beta_omega=beta_omega, omega=args.omega,
        gamma0=args.gamma0, Omega=args.Omega, t_max=args.t_max, dt_out=args.dt_out, out=args.out,
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", newline="\n") as fh:
        fh.write(text)


def run(args: argparse.Namespace) -> None:
    if args.command == "figure":
        start, stop, step = default_figure_grid(args.id)
        spec = f"{args.start if args.start is not None else start}:" \
               f"{args.stop if args.stop is not None else stop}:" \
               f"{args.step if args.step is not None else step}"
        _emit(figure_table(args.id, parse_range(spec)).to_csv(), args.out)
        return
    cfg = config_from_args(args)
    if args.command == "evolve":
        _emit(evolve_table(cfg).to_csv(), cfg.out)
    elif args.command == "steady":
        report = steady_report(cfg)
        sys.stdout.write(report.text())
        if cfg.out is not None:
            _emit(report.table().to_csv(), cfg.out)
    elif args.command == "sweep":
        _emit(sweep_table(args.param, parse_range(args.range), cfg).to_csv(), cfg.out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run(args)
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ThermalWernerError, argparse.ArgumentTypeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
