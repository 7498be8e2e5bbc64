"""Command-line front end.

Conventions:

* every numeric field is serialized with 17 significant digits, so emitted
  values re-parse bit-for-bit;
* every command accepts ``--format {csv,json}`` carrying identical values;
* stochastic commands require an explicit ``--seed`` (no wall-clock default);
* exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

import argparse
import json
import math
import sys

import numpy as np

from .baselines import make_baseline
from .core import RandomSource, WeibullRDist
from .errors import NumericalError
from .expectation import QuadratureSpec, moment, shannon_entropy
from .fit import fit_mle, fit_spec_from_text
from .records import RecordQuery, joint_record_pdf, record_marginal_pdf_closed, \
    record_marginal_pdf_series, sample_records
from .reliability import ReliabilityQuery, reliability, reliability_quadrature, \
    reliability_series

_WHATS = ("pdf", "cdf", "survival", "hazard", "quantile")


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % float(v)


def _emit_table(args, columns, rows):
    if args.format == "json":
        payload = [
            {c: (int(v) if isinstance(v, (int, np.integer)) else float(v))
             for c, v in zip(columns, row)}
            for row in rows
        ]
        print(json.dumps(payload))
    else:
        print(",".join(columns))
        for row in rows:
            print(",".join(_fmt(v) for v in row))


def _emit_scalars(args, pairs):
    if args.format == "json":
        payload = {
            k: (int(v) if isinstance(v, (int, np.integer)) else float(v))
            for k, v in pairs
        }
        print(json.dumps(payload))
    else:
        print("name,value")
        for k, v in pairs:
            print(f"{k},{_fmt(v)}")


def _grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from exc
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi or n < 1:
        raise argparse.ArgumentTypeError(f"grid must satisfy lo < hi and n >= 1, got {text!r}")
    return np.linspace(lo, hi, n)


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return v


def _add_dist_args(sub):
    sub.add_argument("--c", type=float, required=True, help="outer shape c > 0")
    sub.add_argument("--gamma", type=float, required=True, help="outer scale gamma > 0")
    sub.add_argument(
        "--baseline", nargs="+", required=True, metavar=("FAMILY", "PARAM"),
        help="baseline family and parameters, e.g. 'lomax 1 1' "
             "(pareto k theta | lomax k theta | cauchy delta | "
             "normal mu sigma | weibull k lambda | exponential lambda)",
    )


def _add_format_arg(sub):
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def _dist_from_args(args) -> WeibullRDist:
    family = args.baseline[0]
    try:
        params = [float(tok) for tok in args.baseline[1:]]
    except ValueError:
        raise ValueError(f"baseline parameters must be numbers, got {args.baseline[1:]}")
    return WeibullRDist(args.c, args.gamma, make_baseline(family, params))


def _eval_points(args, parser):
    if (args.grid is None) == (args.points is None):
        parser.error("exactly one of --grid and --points is required")
    return args.grid if args.grid is not None else np.asarray(args.points, dtype=float)


def cmd_eval(args, parser):
    d = _dist_from_args(args)
    xs = _eval_points(args, parser)
    fn = getattr(d, args.what)
    vals = [fn(float(x)) for x in xs]
    _emit_table(args, ["x", args.what], list(zip(xs.tolist(), vals)))
    return 0


def cmd_sample(args, parser):
    d = _dist_from_args(args)
    draws = d.sample(args.n, RandomSource(args.seed))
    _emit_table(args, ["x"], [(float(v),) for v in draws])
    return 0


def cmd_moments(args, parser):
    d = _dist_from_args(args)
    q = QuadratureSpec(adaptive_tol=args.tol)
    pairs = []
    for r in args.r:
        res = moment(d, r, q)
        pairs.append((f"moment_{r}", res.value))
    _emit_scalars(args, pairs)
    return 0


def cmd_entropy(args, parser):
    d = _dist_from_args(args)
    res = shannon_entropy(d, QuadratureSpec(adaptive_tol=args.tol))
    _emit_scalars(args, [("entropy", res.value)])
    return 0


def cmd_reliability(args, parser):
    q = ReliabilityQuery(args.c1, args.c2)
    if args.method == "series":
        r = reliability_series(q)
    elif args.method == "quadrature":
        r = reliability_quadrature(q)
    else:
        r = reliability(q)
    _emit_scalars(args, [("R", r)])
    return 0


def cmd_records(args, parser):
    d = _dist_from_args(args)
    actions = [args.pdf_at is not None, args.joint_at is not None, args.sample is not None]
    if sum(actions) != 1:
        parser.error("records needs exactly one of --pdf-at, --joint-at, --sample")
    if args.pdf_at is not None:
        xs = np.asarray(args.pdf_at, dtype=float)
        if args.series:
            if args.n is None:
                parser.error("--series requires --n")
            q = RecordQuery(args.m, args.n)
            vals = [record_marginal_pdf_series(d, q, float(x)) for x in xs]
        else:
            vals = [record_marginal_pdf_closed(d, args.m, float(x)) for x in xs]
        _emit_table(args, ["x", "record_pdf"], list(zip(xs.tolist(), vals)))
    elif args.joint_at is not None:
        if args.n is None:
            parser.error("--joint-at requires --n")
        q = RecordQuery(args.m, args.n)
        x, y = args.joint_at
        val = joint_record_pdf(d, q, x, y)
        _emit_table(args, ["x", "y", "joint_record_pdf"], [(x, y, val)])
    else:
        if args.seed is None:
            parser.error("--sample requires --seed")
        draws = sample_records(d, args.m, args.sample, RandomSource(args.seed))
        _emit_table(args, ["x"], [(float(v),) for v in draws])
    return 0


def cmd_fit(args, parser):
    try:
        with open(args.spec, "r", encoding="utf-8") as fh:
            spec = fit_spec_from_text(fh.read())
    except OSError as exc:
        raise ValueError(f"cannot read fit spec {args.spec!r}: {exc}")
    data = _read_data(args.input)
    result = fit_mle(data, spec, RandomSource(args.seed))
    pairs = [(name, v) for name, v in result.params.items()]
    pairs.append(("log_likelihood", result.log_likelihood))
    pairs.append(("converged", int(result.converged)))
    pairs.append(("iterations", int(result.iterations)))
    _emit_scalars(args, pairs)
    return 0


def cmd_plotdata(args, parser):
    d = _dist_from_args(args)
    xs = args.grid
    pdf = d.pdf(xs)
    with np.errstate(all="ignore"):
        hazard = np.where(pdf > 0.0, pdf / d.survival(xs), 0.0)
    rows = list(zip(xs.tolist(), pdf.tolist(), hazard.tolist()))
    _emit_table(args, ["x", "pdf", "hazard"], rows)
    return 0


def _read_data(path):
    """One value per line; a single non-numeric first line is treated as a header."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise ValueError(f"cannot read data file {path!r}: {exc}")
    if not lines:
        raise ValueError(f"data file {path!r} is empty")
    start = 0
    try:
        float(lines[0])
    except ValueError:
        start = 1
    try:
        return np.array([float(ln) for ln in lines[start:]])
    except ValueError as exc:
        raise ValueError(f"data file {path!r}: {exc}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="weibull-r",
        description="Evaluate, sample, and fit Weibull-R composed distributions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate pdf/cdf/survival/hazard/quantile on points")
    _add_dist_args(p)
    p.add_argument("--what", choices=_WHATS, required=True)
    p.add_argument("--grid", type=_grid, help="lo:hi:n")
    p.add_argument("--points", nargs="+", type=float)
    _add_format_arg(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sample", help="draw seeded i.i.d. samples")
    _add_dist_args(p)
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_format_arg(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("moments", help="raw moments E[X^r]")
    _add_dist_args(p)
    p.add_argument("--r", nargs="+", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    _add_format_arg(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("entropy", help="Shannon entropy")
    _add_dist_args(p)
    p.add_argument("--tol", type=float, default=1e-8)
    _add_format_arg(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("reliability", help="stress-strength P(X > Y) from outer shapes")
    p.add_argument("--c1", type=float, required=True)
    p.add_argument("--c2", type=float, required=True)
    p.add_argument("--method", choices=("auto", "series", "quadrature"), default="auto")
    _add_format_arg(p)
    p.set_defaults(func=cmd_reliability)

    p = sub.add_parser("records", help="record-value densities and record sampling")
    _add_dist_args(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--pdf-at", nargs="+", type=float)
    p.add_argument("--series", action="store_true",
                   help="use the series marginal (requires --n)")
    p.add_argument("--joint-at", nargs=2, type=float, metavar=("X", "Y"))
    p.add_argument("--sample", type=_nonneg_int)
    p.add_argument("--seed", type=int)
    _add_format_arg(p)
    p.set_defaults(func=cmd_records)

    p = sub.add_parser("fit", help="maximum-likelihood fit from a data file")
    p.add_argument("--input", required=True, help="one value per line (optional header)")
    p.add_argument("--spec", required=True, help="flat key=value fit spec file")
    p.add_argument("--seed", type=int, required=True)
    _add_format_arg(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("plotdata", help="pdf and hazard curves on a grid")
    _add_dist_args(p)
    p.add_argument("--grid", type=_grid, required=True, help="lo:hi:n")
    _add_format_arg(p)
    p.set_defaults(func=cmd_plotdata)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
