"""Sweep command-line interface.

Five subcommands map onto the sweep drivers: probability, squeezing,
wigner, hz, qcrb.  Angles accept either raw radians or pi-suffix notation
("0.8pi").  Repeatable --sweep flags override the per-command default
axes; declaration order sets the outer-to-inner nesting of emitted rows.

Exit codes: 0 success; 2 configuration or argument validation error;
3 numerical failure (displacement out of validated range, unstable
finite-difference step); 4 degenerate post-selection on a single-point
invocation.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import __version__
from .config import RangeSpec, WeakMeasurementConfig
from .errors import DegeneratePostSelectionError, NumericalRangeError
from .fock import FockCutoff
from .measurement import CouplingParams, EcsParams, WeakValueParams
from .sweep import SweepResult, cmd_hz, cmd_probability, cmd_qcrb, cmd_squeezing, cmd_wigner

_HALF_PI = 0.5 * math.pi


def parse_angle(text: str) -> float:
    """Radians from either a float literal or a pi-multiple like '0.8pi'."""
    t = str(text).strip().lower()
    try:
        if t.endswith("pi"):
            head = t[:-2].strip()
            if head in ("", "+"):
                return math.pi
            if head == "-":
                return -math.pi
            return float(head) * math.pi
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None


def parse_cutoff(text: str) -> FockCutoff:
    """FockCutoff from 'N' (both modes) or 'N_a,N_b'."""
    try:
        parts = [int(p) for p in str(text).split(",")]
        if len(parts) == 1:
            return FockCutoff(parts[0], parts[0])
        if len(parts) == 2:
            return FockCutoff(parts[0], parts[1])
        raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse cutoff {text!r}") from None


def parse_sweep(text: str) -> tuple[str, RangeSpec]:
    """(axis name, RangeSpec) from 'name=min:max:points'."""
    try:
        name, _, spec = str(text).partition("=")
        name = name.strip()
        if not name:
            raise ValueError("empty axis name")
        lo, hi, pts = spec.split(":")
        return name, RangeSpec(parse_angle(lo), parse_angle(hi), int(pts))
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise argparse.ArgumentTypeError(
            f"cannot parse sweep {text!r} (expected name=min:max:points): {exc}"
        ) from None


# Per-command canonical axis order (also the CSV leading columns) and the
# built-in default ranges used when an axis is not overridden.
_COMMANDS = {
    "probability": {
        "axes": ("s", "theta"),
        "defaults": {
            "s": RangeSpec(0.0, 3.0, 31),
            "theta": RangeSpec(0.2 * math.pi, 0.8 * math.pi, 4),
        },
        "runner": cmd_probability,
        "help": "post-selection success probability over (s, theta)",
    },
    "squeezing": {
        "axes": ("s1", "s2"),
        "defaults": {"s1": RangeSpec(0.0, 3.0, 16), "s2": RangeSpec(0.0, 3.0, 16)},
        "runner": cmd_squeezing,
        "help": "sum squeezing of the post-selected state over (s1, s2)",
    },
    "wigner": {
        "axes": ("re_gamma", "re_beta"),
        "defaults": {
            "re_gamma": RangeSpec(-2.0, 2.0, 51),
            "re_beta": RangeSpec(-2.0, 2.0, 51),
        },
        "runner": cmd_wigner,
        "help": "joint-parity Wigner cross-section at the configured coupling",
    },
    "hz": {
        "axes": ("s1", "s2"),
        "defaults": {"s1": RangeSpec(0.0, 3.0, 16), "s2": RangeSpec(0.0, 3.0, 16)},
        "runner": cmd_hz,
        "help": "intensity-correlation entanglement witness over (s1, s2)",
    },
    "qcrb": {
        "axes": ("r", "s"),
        "defaults": {"r": RangeSpec(0.05, 0.5, 10), "s": RangeSpec(0.0, 2.0, 5)},
        "runner": cmd_qcrb,
        "help": "quantum Fisher information and phase bound over (r, s)",
    },
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecsim",
        description="Deterministic parameter sweeps for post-selected weak "
        "measurements on entangled coherent states.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, info in _COMMANDS.items():
        p = sub.add_parser(name, help=info["help"])
        p.add_argument("--r", type=float, default=0.1, help="coherent amplitude r >= 0")
        p.add_argument("--mu", type=parse_angle, default=_HALF_PI, help="phase of alpha (radians or e.g. 0.5pi)")
        p.add_argument("--varphi", type=parse_angle, default=_HALF_PI, help="mode-b phase shift")
        p.add_argument("--theta1", type=parse_angle, default=0.8 * math.pi, help="meter-1 polar angle in [0, pi)")
        p.add_argument("--delta1", type=parse_angle, default=_HALF_PI, help="meter-1 azimuth in [0, 2pi]")
        p.add_argument("--theta2", type=parse_angle, default=0.8 * math.pi, help="meter-2 polar angle in [0, pi)")
        p.add_argument("--delta2", type=parse_angle, default=_HALF_PI, help="meter-2 azimuth in [0, 2pi]")
        p.add_argument("--s1", type=float, default=0.0, help="mode-a coupling strength")
        p.add_argument("--s2", type=float, default=0.0, help="mode-b coupling strength")
        p.add_argument("--theta-big", type=parse_angle, default=_HALF_PI, help="squeezing phase angle")
        p.add_argument("--cutoff", type=parse_cutoff, default=FockCutoff(40, 40), help="Fock cutoff: N or N_a,N_b")
        p.add_argument("--tail-tol", type=float, default=1e-10, help="truncation tail warning tolerance")
        p.add_argument("--displacement-convention", choices=("half", "full"), default="half",
                       help="branch displacement arms: +-s/2 (half) or +-s (full)")
        p.add_argument("--qfi-gauge", choices=("fixed-kappa", "renormalized"), default="fixed-kappa",
                       help="QFI evaluation gauge")
        p.add_argument("--sweep", action="append", default=[], metavar="NAME=MIN:MAX:POINTS",
                       help=f"override a sweep axis (allowed: {', '.join(info['axes'])}); repeatable")
        p.add_argument("--out", default=None, help="CSV output path (default: stdout)")
        p.add_argument("--meta", default=None, help="JSON metadata output path")
    return parser


def _config_from_args(args: argparse.Namespace) -> WeakMeasurementConfig:
    return WeakMeasurementConfig(
        ecs=EcsParams(r=args.r, mu=args.mu, varphi=args.varphi),
        wv=WeakValueParams(
            theta1=args.theta1, delta1=args.delta1, theta2=args.theta2, delta2=args.delta2
        ),
        coupling=CouplingParams(s1=args.s1, s2=args.s2),
        theta_big=args.theta_big,
        cutoff=args.cutoff,
        tail_tolerance=args.tail_tol,
        displacement_convention=args.displacement_convention,
        qfi_gauge=args.qfi_gauge,
    )


def _resolve_axes(
    command: str, sweep_flags: list[str]
) -> tuple[dict[str, RangeSpec], list[str]]:
    """Axis ranges plus the outer-to-inner emission order.

    Declared sweeps come first in declaration order; unspecified axes keep
    their built-in defaults and follow in canonical order.
    """
    info = _COMMANDS[command]
    axes = info["axes"]
    ranges = dict(info["defaults"])
    declared: list[str] = []
    for flag in sweep_flags:
        name, spec = parse_sweep(flag)
        if name not in axes:
            raise ValueError(
                f"unknown sweep axis {name!r} for {command} (allowed: {', '.join(axes)})"
            )
        if name in declared:
            raise ValueError(f"sweep axis {name!r} declared twice")
        declared.append(name)
        ranges[name] = spec
    order = declared + [ax for ax in axes if ax not in declared]
    return ranges, order


def _reorder_rows(
    result: SweepResult, axes: tuple[str, ...], order: list[str], ranges: dict[str, RangeSpec]
) -> SweepResult:
    """Re-nest rows to the declared outer-to-inner order without touching columns."""
    if order == list(axes):
        return result
    col_of = {name: i for i, name in enumerate(axes)}
    index_of = {
        name: {float(v): k for k, v in enumerate(ranges[name].values())} for name in axes
    }
    rows = sorted(
        result.rows,
        key=lambda row: tuple(index_of[name][row[col_of[name]]] for name in order),
    )
    return SweepResult(header=result.header, rows=tuple(rows), metadata=result.metadata)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    info = _COMMANDS[args.command]

    try:
        config = _config_from_args(args)
        ranges, order = _resolve_axes(args.command, args.sweep)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"ecsim: {exc}", file=sys.stderr)
        return 2

    axis_ranges = [ranges[name] for name in info["axes"]]
    try:
        result = info["runner"](config, *axis_ranges)
    except DegeneratePostSelectionError as exc:
        print(f"ecsim: {exc}", file=sys.stderr)
        return 4
    except NumericalRangeError as exc:
        print(f"ecsim: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"ecsim: {exc}", file=sys.stderr)
        return 2

    result = _reorder_rows(result, info["axes"], order, ranges)

    if args.out is None:
        sys.stdout.write(result.csv_text())
    else:
        result.write_csv(args.out)
    if args.meta is not None:
        result.write_metadata(args.meta)

    single_point = all(ranges[name].is_single for name in info["axes"])
    if single_point and result.has_na():
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
