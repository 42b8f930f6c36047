"""Command-line interface: ``schatten <command> [options]``.

Exit codes are 0 on success, 2 for usage errors and 3 for numerical
failures (optimizer non-convergence, Monte-Carlo runs without hits, failed
acceptance checks).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings

import numpy as np

from . import asymptotics as asy
from .errors import SchattenError
from .fekete import delta_sequence, maximize
from .mcvol import DegenerateEstimateWarning, singular_value_quadrature, volume_ratio_mc
from .rng import stream
from .ullman import Ullman

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class UsageError(Exception):
    pass


# -- argument types ----------------------------------------------------------


def p_value(text: str) -> float:
    t = text.strip().lower()
    if t in ("inf", "infinity", "+inf"):
        return math.inf
    try:
        v = float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a valid p: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"p must be positive or 'inf', got {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer seed: {text!r}") from None
    if not -(2**63) <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _default_threads() -> int:
    raw = os.environ.get("SCHATTEN_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# -- output ------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        # JSON has no infinities; keep the CSV spelling
        return v if math.isfinite(v) else _fmt(v)
    return v


def _table(rows, columns) -> str:
    cells = [[c for c in columns]]
    for r in rows:
        cells.append([format(r[c], ".10g") if isinstance(r[c], (float, np.floating))
                      else _fmt(r[c]) for c in columns])
    widths = [max(len(row[k]) for row in cells) for k in range(len(columns))]
    lines = ["  ".join(s.rjust(w) for s, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def render(rows: list[dict], fmt: str) -> str:
    columns = list(rows[0].keys()) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_fmt(r[c]) for c in columns])
        return buf.getvalue()
    if fmt == "json":
        data = [{c: _json_value(r[c]) for c in columns} for r in rows]
        return json.dumps(data, indent=2) + "\n"
    return _table(rows, columns)


def emit(rows, args) -> None:
    text = render(rows, args.format)
    if args.out:
        with open(args.out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ----------------------------------------------------------------


def cmd_delta(args) -> int:
    rows = []
    for p in args.p:
        d = asy.delta(p)
        # the supremum tends to -2 log 2 as p grows
        sj = -2.0 * math.log(2.0) if math.isinf(p) else asy.sup_J(p)
        rows.append({"p": p, "delta": d, "sup_J": sj, "residual": abs(math.log(d) - sj)})
    emit(rows, args)
    return EXIT_OK


def _single(values, flag):
    if len(values) != 1:
        raise UsageError(f"{flag} takes a single value for this command")
    return values[0]


def cmd_fekete(args) -> int:
    p = _single(args.p, "--p")
    if math.isinf(p):
        raise UsageError("fekete needs a finite p")
    n = _single(args.n, "--n")
    if n < 2:
        raise UsageError("fekete needs n >= 2")
    sol = maximize(n, p, tol=args.tol, max_iters=args.max_iters,
                   restarts=args.restarts, seed=args.seed)
    rows = [{"n": sol.n, "p": sol.p, "log_delta_n": sol.log_delta_n, "delta_n": sol.delta_n,
             "iterations": sol.iterations, "converged": sol.converged, "i": i + 1, "t": t}
            for i, t in enumerate(sol.points)]
    emit(rows, args)
    return EXIT_OK if sol.converged else EXIT_NUMERIC


def cmd_delta_seq(args) -> int:
    p = _single(args.p, "--p")
    if math.isinf(p):
        raise UsageError("delta-seq needs a finite p")
    if args.n_max < 3:
        raise UsageError("--n-max must be at least 3")
    seq = delta_sequence(p, args.n_max, tol=args.tol, restarts=args.restarts, seed=args.seed)
    target = asy.delta(p)
    rows = [{"kind": "sequence", "n": int(n), "delta_n": float(d), "gap_to_limit": float(d) - target,
             "converged": bool(c)}
            for n, d, c in zip(seq.ns, seq.deltas, seq.converged)]
    rows.append({"kind": "extrapolated", "n": "inf", "delta_n": seq.limit,
                 "gap_to_limit": seq.limit - target, "converged": True})
    rows.append({"kind": "closed_form", "n": "inf", "delta_n": target, "gap_to_limit": 0.0,
                 "converged": True})
    emit(rows, args)
    return EXIT_OK if bool(np.all(seq.converged)) else EXIT_NUMERIC


def cmd_ullman(args) -> int:
    p = _single(args.p, "--p")
    if math.isinf(p):
        raise UsageError("ullman needs a finite p")
    dist = Ullman(p)
    if args.what in ("density", "cdf"):
        if args.grid < 2:
            raise UsageError("--grid needs at least 2 points")
        x = np.linspace(-1.0, 1.0, args.grid)
        # exact zero at the midpoint of odd grids
        x[np.abs(x) < 1e-15] = 0.0
        vals = dist.density(x) if args.what == "density" else np.array([dist.cdf(v) for v in x])
        rows = [{"x": float(a), args.what: float(b)} for a, b in zip(x, vals)]
    elif args.what == "sample":
        draws = dist.sample(stream(args.seed, 0), args.count)
        rows = [{"draw": float(v)} for v in draws]
    else:
        mean, se = dist.log_distance_mc(stream(args.seed, 1), args.pairs)
        rows = [
            {"quantity": "E|U|^p", "closed_form": dist.abs_moment(),
             "numeric": dist.abs_moment_quadrature(), "stderr": 0.0},
            {"quantity": "E log|U-V|", "closed_form": dist.log_distance_expectation(),
             "numeric": mean, "stderr": se},
        ]
    emit(rows, args)
    return EXIT_OK


def cmd_vr(args) -> int:
    rows = []
    for p in args.p:
        if p < 1:
            raise UsageError("vr needs p >= 1")
        for n in args.n:
            a = asy.volume_ratio_asymptote(n, p, args.field, check=False)
            g = asy.volume_ratio_gamma_form(n, p)
            rows.append({"n": n, "p": p, "field": args.field, "asymptote": a,
                         "gamma_form": g, "residual": abs(a - g)})
    emit(rows, args)
    return EXIT_OK


def cmd_mc_volume(args) -> int:
    p = _single(args.p, "--p")
    n = _single(args.n, "--n")
    if n > 4:
        raise UsageError("mc-volume supports n <= 4")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateEstimateWarning)
        est = volume_ratio_mc(n, p, args.field, args.samples, args.seed, args.threads)
    row = {"n": n, "p": p, "field": args.field, "value": est.value, "stderr": est.stderr,
           "samples": est.samples, "seed": est.seed, "hits": est.hits}
    if n in (2, 3):
        quad = singular_value_quadrature(n, p, args.field)
        row["quadrature"] = quad
        row["z"] = (est.value - quad) / est.stderr if est.stderr > 0 else math.nan
    emit([row], args)
    if est.degenerate:
        print("error: no Monte-Carlo sample landed in the ball", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_verify(args) -> int:
    from .acceptance import run_all

    results = run_all(report=lambda line: print(line, flush=True))
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_OK if not failed else EXIT_NUMERIC


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--out", metavar="PATH", default=None)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--threads", type=_positive_int, default=_default_threads())
    common.add_argument("--tol", type=_positive_float, default=1e-11)

    parser = argparse.ArgumentParser(prog="schatten", description="Schatten-ball volume constants.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("delta", parents=[common], help="closed-form Delta(p)")
    s.add_argument("--p", type=p_value, nargs="+", required=True)
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("fekete", parents=[common], help="maximize the n-point objective")
    s.add_argument("--n", type=_positive_int, nargs="+", required=True)
    s.add_argument("--p", type=p_value, nargs="+", required=True)
    s.add_argument("--restarts", type=_positive_int, default=3)
    s.add_argument("--max-iters", type=_positive_int, default=10_000)
    s.set_defaults(func=cmd_fekete)

    s = sub.add_parser("delta-seq", parents=[common], help="Delta_n(p) for n = 2..n_max")
    s.add_argument("--p", type=p_value, nargs="+", required=True)
    s.add_argument("--n-max", type=_positive_int, required=True)
    s.add_argument("--restarts", type=_positive_int, default=3)
    s.set_defaults(func=cmd_delta_seq)

    s = sub.add_parser("ullman", parents=[common], help="Ullman distribution")
    s.add_argument("what", choices=("density", "cdf", "sample", "moments"))
    s.add_argument("--p", type=p_value, nargs="+", required=True)
    s.add_argument("--grid", type=_positive_int, default=101)
    s.add_argument("--count", type=_positive_int, default=1000)
    s.add_argument("--pairs", type=_positive_int, default=1_000_000)
    s.set_defaults(func=cmd_ullman)

    s = sub.add_parser("vr", parents=[common], help="volume-ratio asymptote")
    s.add_argument("--p", type=p_value, nargs="+", required=True)
    s.add_argument("--n", type=_positive_int, nargs="+", default=[1])
    s.add_argument("--field", choices=("real", "complex"), default="real")
    s.set_defaults(func=cmd_vr)

    s = sub.add_parser("mc-volume", parents=[common], help="Monte-Carlo volume ratio")
    s.add_argument("--n", type=_positive_int, nargs="+", required=True)
    s.add_argument("--p", type=p_value, nargs="+", required=True)
    s.add_argument("--field", choices=("real", "complex"), default="real")
    s.add_argument("--samples", type=_positive_int, default=1_000_000)
    s.set_defaults(func=cmd_mc_volume)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    s.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, SchattenError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
