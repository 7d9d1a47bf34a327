"""Command-line front end.

Subcommands: point, sweep, fig2, fig3, compare. Exit codes: 0 success,
2 invalid arguments, 3 convergence/cutoff failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import closed_form as cf
from .density import ConvergenceError
from .kinematics import ModeSpec
from .sweep import (
    DEFAULT_NUMERIC_CAP,
    NumericCapError,
    SweepConfig,
    compare_closed_vs_numeric,
    csv_lines,
    emit_csv,
    emit_json,
    run_point,
    run_sweep,
)

FIG_PRESET = dict(r_min=0.0, r_max=6.0, steps=121)


def _add_cutoff_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--nmax", type=int, help="explicit series/state cutoff N_max")
    g.add_argument("--tail-tol", type=float, help="series tail tolerance (default 1e-10)")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_methods_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--methods",
        default="closed,numeric",
        help="comma-separated subset of closed,numeric (default both)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hawkpair",
        description="Entanglement degradation of a bosonic pair outside a Schwarzschild horizon",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="evaluate a single parameter point")
    p_point.add_argument("--r", type=float, help="squeezing parameter (symmetric pair)")
    p_point.add_argument("--mass", type=float, help="black-hole mass in geometric units")
    p_point.add_argument("--omega", type=float, help="mode frequency in geometric units")
    p_point.add_argument("--omega-prime", type=float, help="Bob's mode frequency (default: omega)")
    _add_cutoff_flags(p_point)
    _add_methods_flag(p_point)
    _add_output_flags(p_point)

    p_sweep = sub.add_parser("sweep", help="sweep the squeezing parameter")
    p_sweep.add_argument("--r-min", type=float, required=True)
    p_sweep.add_argument("--r-max", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--omega-ratio", type=float, default=1.0, help="omega'/omega (default 1)")
    _add_cutoff_flags(p_sweep)
    _add_methods_flag(p_sweep)
    _add_output_flags(p_sweep)

    for name, help_text in (
        ("fig2", "preset sweep: entanglement-measure columns, r in [0, 6], 121 steps"),
        ("fig3", "preset sweep: entropy/mutual-information columns, r in [0, 6], 121 steps"),
    ):
        p_fig = sub.add_parser(name, help=help_text)
        _add_output_flags(p_fig)

    p_cmp = sub.add_parser("compare", help="closed-form vs numeric differences at one point")
    p_cmp.add_argument("--r", type=float, required=True)
    _add_cutoff_flags(p_cmp)
    p_cmp.add_argument("--warn-threshold", type=float, default=1e-2)
    p_cmp.add_argument("--out", help="output path (default: stdout)")
    return parser


def _cutoff_from(args) -> cf.SeriesConfig:
    if args.nmax is not None:
        return cf.SeriesConfig(n_max=args.nmax)
    return cf.SeriesConfig(tail_tol=args.tail_tol if args.tail_tol is not None else 1e-10)


def _methods_from(args) -> tuple:
    methods = tuple(m for m in args.methods.split(",") if m)
    bad = set(methods) - {"closed", "numeric"}
    if bad or not methods:
        raise ValueError(f"--methods must name a subset of closed,numeric; got {args.methods!r}")
    return methods


def _write_rows(rows, args) -> None:
    if args.out is None:
        if args.format == "csv":
            sys.stdout.write("\n".join(csv_lines(rows)) + "\n")
        else:
            payload = [dataclasses.asdict(r) for r in rows]
            json.dump(payload, sys.stdout, indent=2)
            sys.stdout.write("\n")
        return
    if args.format == "csv":
        emit_csv(rows, args.out)
    else:
        emit_json(rows, args.out)


def _cmd_point(args) -> None:
    cutoff = _cutoff_from(args)
    methods = _methods_from(args)
    if args.r is not None:
        if args.mass is not None or args.omega is not None:
            raise ValueError("give either --r or --mass/--omega, not both")
        report = run_point(r_a=args.r, cutoff=cutoff, methods=methods)
    else:
        if args.mass is None or args.omega is None:
            raise ValueError("need --r, or --mass together with --omega")
        mode = ModeSpec(mass=args.mass, omega=args.omega)
        report = run_point(mode=mode, omega_prime=args.omega_prime, cutoff=cutoff, methods=methods)
    _write_rows([report], args)


def _cmd_sweep(args) -> None:
    cfg = SweepConfig(
        r_min=args.r_min,
        r_max=args.r_max,
        steps=args.steps,
        omega_ratio=args.omega_ratio,
        cutoff=_cutoff_from(args),
        methods=_methods_from(args),
    )
    _write_rows(run_sweep(cfg), args)


def _cmd_fig(args, methods) -> None:
    cfg = SweepConfig(cutoff=cf.SeriesConfig(tail_tol=1e-10), methods=methods, **FIG_PRESET)
    _write_rows(run_sweep(cfg), args)


def _cmd_compare(args) -> None:
    cutoff = _cutoff_from(args)
    report = run_point(r_a=args.r, cutoff=cutoff, methods=("closed", "numeric"))
    cmp_report = compare_closed_vs_numeric(report, warn_threshold=args.warn_threshold)
    payload = dataclasses.asdict(cmp_report)
    payload["warnings"] = list(payload["warnings"])
    text = json.dumps(payload, indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"failed to write {args.out}: {exc}") from exc


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "point":
            _cmd_point(args)
        elif args.command == "sweep":
            _cmd_sweep(args)
        elif args.command == "fig2":
            args.__dict__.setdefault("format", "csv")
            _cmd_fig(args, methods=("closed", "numeric"))
        elif args.command == "fig3":
            args.__dict__.setdefault("format", "csv")
            _cmd_fig(args, methods=("closed",))
        elif args.command == "compare":
            _cmd_compare(args)
    except (ConvergenceError, NumericCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
