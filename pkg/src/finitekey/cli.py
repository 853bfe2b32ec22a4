"""Command-line front end: single evaluations, sweeps, threshold location,
and the asymptotic reference, emitted as CSV/TSV tables.

Decimal parameters are parsed into exact rationals, so 0.02 on the command
line is the fraction 1/50 all the way through the kernel.  Domain failures
(invalid beta0, epsilon out of range, ...) become per-row ERROR cells with
exit status 1; malformed flags exit 2 before any output.
"""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction
from typing import Optional

from .asymptotic import asymptotic_rate
from .kernel import rational_from_decimal
from .keyrate import SweepSpec, key_length, sweep, threshold_error_rate
from .spectra import ProtocolParams

HEADER = [
    "d", "n", "beta0", "error_rate", "epsilon", "epsilon_prime",
    "S2", "S0", "H0", "ell",
    "rate", "rate_clamped", "effective_rate", "asymptotic_rate",
]
THRESHOLD_HEADER = ["d", "n", "epsilon", "threshold_error_rate"]


def _g(x: float) -> str:
    return f"{x:.12g}"


def _frac(x: Optional[Fraction]) -> str:
    return "" if x is None else _g(float(x))


def _decimal(text: str) -> Fraction:
    try:
        return rational_from_decimal(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _decimal_list(text: str) -> list[Fraction]:
    return [_decimal(part) for part in text.split(",") if part]


def _n_grid(text: str) -> list[int]:
    """a:b:step for linear grids, a:b:ratio:log for geometric ones."""
    parts = text.split(":")
    try:
        if len(parts) == 3:
            a, b, step = int(parts[0]), int(parts[1]), int(parts[2])
            if step <= 0 or a > b:
                raise ValueError
            return list(range(a, b + 1, step))
        if len(parts) == 4 and parts[3] == "log":
            a, b, ratio = int(parts[0]), int(parts[1]), float(parts[2])
            if a < 1 or a > b or ratio <= 1:
                raise ValueError
            out = []
            x = float(a)
            while x <= b + 0.5:
                v = round(x)
                if not out or v > out[-1]:
                    out.append(v)
                x *= ratio
            return out
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(
        f"expected a:b:step or a:b:ratio:log, got {text!r}"
    )


def _decimal_grid(text: str) -> list[Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected a:b:step, got {text!r}")
    a, b, step = (_decimal(p) for p in parts)
    if step <= 0 or a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    out = []
    v = a
    while v <= b:
        out.append(v)
        v += step
    return out


def _result_row(res) -> list[str]:
    p = res.params
    return [
        str(p.d), str(p.n), _frac(p.beta0), _frac(1 - p.beta0),
        _frac(p.epsilon), _frac(p.epsilon_prime),
        _g(res.s2_bits), _g(res.s0_bits), _g(res.h0_bits), _g(res.ell_bits),
        _g(res.rate), _g(res.rate_clamped), _g(res.effective_rate),
        _g(res.asymptotic_rate),
    ]


def _error_row(d, n, beta0, epsilon, message: str) -> list[str]:
    eps_p = (Fraction(epsilon) / 8) ** 2 if epsilon is not None else None
    return [
        "" if d is None else str(d),
        "" if n is None else str(n),
        _frac(beta0),
        _frac(1 - beta0) if beta0 is not None else "",
        _frac(epsilon),
        _frac(eps_p),
        f"ERROR:{message}",
    ] + [""] * 7


def _beta0_of(args) -> Optional[Fraction]:
    if getattr(args, "beta0", None) is not None:
        return args.beta0
    if getattr(args, "error_rate", None) is not None:
        return 1 - args.error_rate
    return None


def _run_compute(args) -> tuple[list[list[str]], int]:
    beta0 = _beta0_of(args)
    try:
        params = ProtocolParams(d=args.d, n=args.n, beta0=beta0, epsilon=args.epsilon)
        return [_result_row(key_length(params))], 0
    except ValueError as exc:
        return [_error_row(args.d, args.n, beta0, args.epsilon, str(exc))], 1


def _run_sweep(args, parser) -> tuple[list[list[str]], int]:
    beta0 = _beta0_of(args)
    if args.sweep_n is not None:
        axis, grid = "n", args.sweep_n
        if args.n is not None:
            parser.error("--n conflicts with --sweep-n")
        if args.fixed_ntilde is not None:
            parser.error("--fixed-ntilde conflicts with --sweep-n")
    elif args.sweep_error is not None:
        axis, grid = "error_rate", args.sweep_error
        if beta0 is not None:
            parser.error("--beta0/--error-rate conflict with --sweep-error")
    elif args.sweep_epsilon is not None:
        axis, grid = "epsilon", args.sweep_epsilon
        if args.epsilon is not None:
            parser.error("--epsilon conflicts with --sweep-epsilon")
    else:
        axis, grid = "dimension", args.sweep_d
        if args.d is not None:
            parser.error("--d conflicts with --sweep-d")
    d = args.d if args.d is not None else 2
    if axis != "n" and args.n is None and args.fixed_ntilde is None:
        parser.error("need --n or --fixed-ntilde")
    spec = SweepSpec(
        axis=axis, grid=grid, d=d, n=args.n, beta0=beta0,
        epsilon=args.epsilon, fixed_ntilde=args.fixed_ntilde,
    )
    rows = []
    status = 0
    for pt in sweep(spec, workers=args.workers):
        if pt.error is None:
            rows.append(_result_row(pt.result))
        else:
            rows.append(_error_row(pt.d, pt.n, pt.beta0, pt.epsilon, pt.error))
            status = 1
    return rows, status


def _run_threshold(args, parser) -> tuple[list[list[str]], int]:
    if (args.n is None) == (args.fixed_ntilde is None):
        parser.error("need exactly one of --n or --fixed-ntilde")
    dims = args.sweep_d if args.sweep_d is not None else [args.d if args.d is not None else 2]
    rows = []
    status = 0
    for d in dims:
        n = args.fixed_ntilde // (d * (d + 1)) if args.fixed_ntilde is not None else args.n
        try:
            thr = threshold_error_rate(d, n, args.epsilon)
            rows.append([str(d), str(n), _frac(args.epsilon), f"{thr:.4f}"])
        except ValueError as exc:
            rows.append([str(d), str(n), _frac(args.epsilon), f"ERROR:{exc}"])
            status = 1
    return rows, status


def _run_asymptotic(args) -> tuple[list[list[str]], int]:
    beta0 = _beta0_of(args)
    d = args.d if args.d is not None else 2
    try:
        ar = asymptotic_rate(d, beta0)
    except ValueError as exc:
        return [_error_row(d, None, beta0, None, str(exc))], 1
    row = [
        str(d), "", _frac(beta0), _frac(1 - beta0), "", "",
        _g(ar.s_xe), _g(ar.s_e), _g(ar.h_xy), "",
        _g(ar.rate), _g(max(ar.rate, 0.0)), _g(ar.rate / (d * (d + 1))),
        _g(ar.rate),
    ]
    return [row], 0


def _add_output_flags(sp) -> None:
    sp.add_argument("--out", help="output path (default: stdout)")
    sp.add_argument("--format", choices=("csv", "tsv"), default="csv")


def _add_beta_flags(sp, required: bool) -> None:
    grp = sp.add_mutually_exclusive_group(required=required)
    grp.add_argument("--beta0", type=_decimal, help="agreement probability")
    grp.add_argument("--error-rate", type=_decimal, help="error rate 1 - beta0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finitekey",
        description="Finite-key rates for d-dimensional tomographic QKD, "
        "computed in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)

    c = sub.add_parser("compute", help="evaluate one parameter point")
    c.add_argument("--d", type=int, default=2, help="signal dimension")
    c.add_argument("--n", type=int, required=True, help="sifted-key length")
    _add_beta_flags(c, required=True)
    c.add_argument("--epsilon", type=_decimal, required=True, help="security parameter")
    _add_output_flags(c)

    s = sub.add_parser("sweep", help="evaluate a one-axis parameter grid")
    s.add_argument("--d", type=int, default=None, help="signal dimension (default 2)")
    s.add_argument("--n", type=int, default=None, help="sifted-key length")
    _add_beta_flags(s, required=False)
    s.add_argument("--epsilon", type=_decimal, default=None)
    axis = s.add_mutually_exclusive_group(required=True)
    axis.add_argument("--sweep-n", type=_n_grid, metavar="a:b:step[:log]",
                      help="n grid; with :log the third field is the ratio")
    axis.add_argument("--sweep-error", type=_decimal_grid, metavar="a:b:step")
    axis.add_argument("--sweep-epsilon", type=_decimal_list, metavar="v1,v2,...")
    axis.add_argument("--sweep-d", type=_int_list, metavar="d1,d2,...")
    s.add_argument("--fixed-ntilde", type=int, default=None,
                   help="hold n*(d+1)*d fixed; n = floor(ntilde / (d*(d+1)))")
    s.add_argument("--workers", type=int, default=1)
    _add_output_flags(s)

    t = sub.add_parser("threshold", help="bisect the zero of the raw key length")
    t.add_argument("--d", type=int, default=None)
    t.add_argument("--sweep-d", type=_int_list, metavar="d1,d2,...")
    t.add_argument("--n", type=int, default=None)
    t.add_argument("--fixed-ntilde", type=int, default=None)
    t.add_argument("--epsilon", type=_decimal, required=True)
    _add_output_flags(t)

    a = sub.add_parser("asymptotic", help="n -> infinity reference rate")
    a.add_argument("--d", type=int, default=None)
    _add_beta_flags(a, required=True)
    _add_output_flags(a)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.mode == "compute":
        header, (rows, status) = HEADER, _run_compute(args)
    elif args.mode == "sweep":
        if args.workers < 1:
            parser.error("--workers must be >= 1")
        header, (rows, status) = HEADER, _run_sweep(args, parser)
    elif args.mode == "threshold":
        header, (rows, status) = THRESHOLD_HEADER, _run_threshold(args, parser)
    else:
        header, (rows, status) = HEADER, _run_asymptotic(args)

    delim = "," if args.format == "csv" else "\t"
    if args.out:
        handle = open(args.out, "w", newline="", encoding="utf-8")
    else:
        handle = sys.stdout
    try:
        writer = csv.writer(handle, delimiter=delim, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if args.out:
            handle.close()
    return status


if __name__ == "__main__":
    raise SystemExit(main())
