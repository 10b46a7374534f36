"""Command-line entry point: ``lacunary-ldp <subcommand> [flags]``.

Tabular results go to stdout as CSV with a header row, structured objects as
JSON, exact rationals as "p/q" strings.  Failures print one line
``error: <kind>: <message>`` to stderr and exit with 2 (invalid arguments),
3 (work bound), 4 (internal consistency) or 1 (numerical failure).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import InvalidArgument, LDPError

TILDE = "tilde"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidArgument(message)


def _q_arg(text):
    if text == TILDE:
        return TILDE
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"q must be an integer >= 2 or '{TILDE}', got {text!r}")
    if q < 2:
        raise argparse.ArgumentTypeError(f"q must be >= 2, got {q}")
    return q


def _int_q(text):
    q = _q_arg(text)
    if q == TILDE:
        raise argparse.ArgumentTypeError("this subcommand needs an integer q")
    return q


def _pos_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _finite(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return v


def _number(text):
    """Exact Fraction for decimal or p/q input, so exact paths stay exact."""
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    return v


def _load_seq(text):
    from .sequences import LacunarySequence, parse_inline
    path = Path(text)
    if text.endswith(".json") or path.is_file():
        try:
            return LacunarySequence.from_json(path.read_text())
        except OSError as exc:
            raise InvalidArgument(f"cannot read {text}: {exc.strerror}")
    return parse_inline(text)


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["inf" if isinstance(x, float) and math.isinf(x) else x for x in r])
    return buf.getvalue()


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


# -- subcommands --------------------------------------------------------------

def cmd_seq(args):
    from .sequences import gap_ratios, hadamard_check
    seq = _load_seq(args.seq)
    data = seq.to_dict()
    if args.ratios:
        data["ratios"] = [str(r) for r in gap_ratios(seq)]
    if args.hadamard is not None:
        data["hadamard"] = {"q": str(args.hadamard), "holds": hadamard_check(seq, args.hadamard)}
    return json.dumps(data, indent=2) + "\n"


def cmd_count(args):
    from .diophantine import (bridge_count, count_geometric_dp, count_laurent,
                              brute_force_count, recurrence_total)
    engines = {"dp": count_geometric_dp, "recurrence": recurrence_total,
               "laurent": lambda q, m, n: count_laurent(q, m, n, args.workbound),
               "brute": lambda q, m, n: brute_force_count(q, m, n, args.workbound)}
    a = engines[args.engine](args.q, args.m, args.n)
    b = bridge_count(args.m, args.n)
    return _csv([[args.q, args.m, args.n, a, b, _fmt(Fraction(a, 2 ** args.m))]],
                ["q", "m", "n", "A_m", "B_m", "moment"])


def cmd_ampoly(args):
    from .diophantine import am_polynomial
    return json.dumps(am_polynomial(args.q, args.m).to_dict(), indent=2) + "\n"


def cmd_moments(args):
    from .moments import independent_moment, moment
    rows = [[j, _fmt(moment(args.q, j, args.n)), _fmt(independent_moment(j, args.n))]
            for j in range(1, args.m + 1)]
    return _csv(rows, ["m", "moment", "independent_moment"])


def cmd_cumulants(args):
    from .moments import cumulant_affine
    rows = []
    for j in range(1, args.m + 1):
        c = cumulant_affine(args.q, j)
        s, i = c.per_factorial()
        rows.append([j, _fmt(c.slope), _fmt(c.intercept), c.valid_from, _fmt(s), _fmt(i)])
    return _csv(rows, ["m", "slope", "intercept", "valid_from", "slope_per_factorial",
                       "intercept_per_factorial"])


def _lambda_series(q, order):
    from .moments import lambda_taylor, tilde_lambda_taylor
    return tilde_lambda_taylor(order) if q == TILDE else lambda_taylor(q, order)


def cmd_lambda_taylor(args):
    return json.dumps(_lambda_series(args.q, args.order).to_strings()) + "\n"


def cmd_rate_taylor(args):
    from .ratefn import rate_taylor
    series = rate_taylor(_lambda_series(args.q, args.order))
    # c_0 = c_1 = 0 always; the array starts at the z^2 coefficient
    return json.dumps(series.to_strings()[2:]) + "\n"


def _theta_grid(text):
    try:
        a, b, step = (Fraction(t) for t in text.split(":"))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a:b:step, got {text!r}")
    if step <= 0 or b < a:
        raise argparse.ArgumentTypeError("theta grid needs a <= b and step > 0")
    count = int((b - a) / step) + 1
    if count > 100_000:
        raise argparse.ArgumentTypeError("theta grid has more than 100000 points")
    return [float(a + i * step) for i in range(count)]


def cmd_lambda(args):
    from .spectral import lambda_spec, lambda_tilde
    if (args.theta is None) == (args.theta_grid is None):
        raise InvalidArgument("give exactly one of --theta and --theta-grid")
    thetas = [args.theta] if args.theta is not None else args.theta_grid
    M = 1 << args.grid_log2
    rows, starts = [], {}
    for t in thetas:
        lq = lambda_spec(t, args.q, M, starts=starts)
        lt = lambda_tilde(t)
        rows.append([repr(t), repr(lq), repr(lt), repr(lq - lt)])
    return _csv(rows, ["theta", "lambda_q", "lambda_tilde", "gap"])


def cmd_rate(args):
    from .ratefn import is_infinite, rate_q, rate_tilde
    res = rate_tilde(args.x) if args.q == TILDE else rate_q(args.q, args.x, 1 << args.grid_log2)
    if is_infinite(res):
        row = [args.q, repr(args.x), "inf", "", ""]
    else:
        row = [args.q, repr(args.x), repr(res.value), repr(res.theta), int(res.lower_bound)]
    return _csv([row], ["q", "x", "I", "theta_x", "lower_bound"])


def cmd_figure1(args):
    from .figure import curves_csv, curves_svg
    from .ratefn import figure1_curves
    if args.points < 3:
        raise InvalidArgument("--points must be >= 3")
    lim = args.xmax
    if not 0 < lim < 1:
        raise InvalidArgument("--xmax must lie in (0, 1)")
    xs = [-lim + 2 * lim * i / (args.points - 1) for i in range(args.points)]
    curves = figure1_curves(xs, threads=args.threads)
    table = curves_csv(curves)
    Path(args.out or "fig1.svg").write_text(curves_svg(curves, title="Rate functions I~, I_2, I_3, I_4"))
    if args.csv:
        Path(args.csv).write_text(table)
        return ""
    return table


def cmd_simulate(args):
    from . import empirical
    M = 1 << args.grid_log2
    mode = args.mode
    if mode == "sublacunary":
        z = 0.5 if args.x is None else args.x
        vals = empirical.sublacunary_demo(args.n, z, M, threads=args.threads)
        return _csv([[n, repr(v)] for n, v in enumerate(vals, 1)], ["n", "rate_estimate"])
    if args.seq is None:
        raise InvalidArgument(f"--seq is required for mode {mode}")
    seq = _load_seq(args.seq)
    n = args.n if args.n is not None else len(seq)
    if mode in ("mgf", "increments", "polyexact") and args.theta is None:
        raise InvalidArgument(f"--theta is required for mode {mode}")
    if mode == "mgf":
        v = empirical.mgf_grid(seq, n, float(args.theta), M, threads=args.threads)
        return _csv([[n, _fmt(float(args.theta)), repr(float(v)), v.M, repr(v.delta)]],
                    ["n", "theta", "mgf", "M", "doubling_delta"])
    if mode == "increments":
        incs = empirical.ldp_increment(seq, float(args.theta), n - 1, M, threads=args.threads)
        return _csv([[k, repr(float(d)), d.M, repr(d.delta)] for k, d in enumerate(incs, 1)],
                    ["n", "increment", "M", "doubling_delta"])
    if mode == "levelset":
        if args.x is None:
            raise InvalidArgument("--x is required for mode levelset")
        p = empirical.levelset_prob(seq, n, args.x, M, threads=args.threads)
        rate = -math.log(p) / n if p > 0 else math.inf
        return _csv([[n, repr(args.x), repr(float(p)), repr(rate), p.M, repr(p.delta)]],
                    ["n", "x", "probability", "rate_estimate", "M", "doubling_delta"])
    # polyexact
    v = empirical.mgf_poly_exact(seq, n, args.theta, args.d, args.workbound)
    return _csv([[n, _fmt(args.theta), args.d, _fmt(v), repr(float(v))]],
                ["n", "theta", "d", "value", "value_float"])


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lacunary-ldp", description="Large deviations for lacunary trigonometric sums.")
    p.add_argument("--version", action="version", version=f"lacunary-ldp {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=_pos_int, default=os.cpu_count() or 1,
                        help="worker threads (output does not depend on this)")
    common.add_argument("--workbound", type=_pos_int, default=None,
                        help="override the work bound (also LDP_WORKBOUND)")
    common.add_argument("--out", default=None, help="write output to this file")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("seq", parents=[common], help="build and describe a sequence")
    s.add_argument("--seq", required=True, help="inline spec (geometric:2:10, ...) or JSON file")
    s.add_argument("--ratios", action="store_true")
    s.add_argument("--hadamard", type=_number, default=None)
    s.set_defaults(func=cmd_seq)

    s = sub.add_parser("count", parents=[common], help="A_m(n) and B_m(n)")
    s.add_argument("--q", type=_int_q, required=True)
    s.add_argument("--m", type=_pos_int, required=True)
    s.add_argument("--n", type=_pos_int, required=True)
    s.add_argument("--engine", choices=["dp", "recurrence", "laurent", "brute"], default="dp")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("ampoly", parents=[common], help="closed-form polynomial for A_m(n)")
    s.add_argument("--q", type=_int_q, required=True)
    s.add_argument("--m", type=_pos_int, required=True)
    s.set_defaults(func=cmd_ampoly)

    s = sub.add_parser("moments", parents=[common], help="exact moments of S_n")
    s.add_argument("--q", type=_int_q, required=True)
    s.add_argument("--m", type=_pos_int, required=True)
    s.add_argument("--n", type=_pos_int, required=True)
    s.set_defaults(func=cmd_moments)

    s = sub.add_parser("cumulants", parents=[common], help="affine cumulant formulas")
    s.add_argument("--q", type=_int_q, required=True)
    s.add_argument("--max-order", "--m", dest="m", type=_pos_int, required=True)
    s.set_defaults(func=cmd_cumulants)

    for name, func, help_ in (("lambda-taylor", cmd_lambda_taylor, "Taylor coefficients of Lambda"),
                              ("rate-taylor", cmd_rate_taylor, "Taylor coefficients of I")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--q", type=_q_arg, required=True)
        s.add_argument("--order", type=_pos_int, required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("lambda", parents=[common], help="Lambda_q(theta) numerically")
    s.add_argument("--q", type=_int_q, required=True)
    s.add_argument("--theta", type=_finite, default=None)
    s.add_argument("--theta-grid", type=_theta_grid, default=None, metavar="A:B:STEP")
    s.add_argument("--grid-log2", type=_pos_int, default=16)
    s.set_defaults(func=cmd_lambda)

    s = sub.add_parser("rate", parents=[common], help="I_q(x) numerically")
    s.add_argument("--q", type=_q_arg, required=True)
    s.add_argument("--x", type=_finite, required=True)
    s.add_argument("--grid-log2", type=_pos_int, default=16)
    s.set_defaults(func=cmd_rate)

    s = sub.add_parser("figure1", parents=[common], help="rate-function curves as SVG and CSV")
    s.add_argument("--csv", default=None)
    s.add_argument("--points", type=_pos_int, default=21)
    s.add_argument("--xmax", type=_finite, default=0.9)
    s.set_defaults(func=cmd_figure1)

    s = sub.add_parser("simulate", parents=[common], help="grid integrals for a sequence")
    s.add_argument("--seq", default=None)
    s.add_argument("--n", type=_pos_int, default=None)
    s.add_argument("--theta", type=_number, default=None)
    s.add_argument("--x", type=_finite, default=None)
    s.add_argument("--d", type=_pos_int, default=8)
    s.add_argument("--grid-log2", type=_pos_int, default=20)
    s.add_argument("--mode", choices=["mgf", "levelset", "increments", "sublacunary", "polyexact"],
                   default="mgf")
    s.set_defaults(func=cmd_simulate)
    return p


def _run(args) -> str:
    # the override reaches nested calls via the environment, for this command only
    if args.workbound is None:
        return args.func(args)
    saved = os.environ.get("LDP_WORKBOUND")
    os.environ["LDP_WORKBOUND"] = str(args.workbound)
    try:
        return args.func(args)
    finally:
        if saved is None:
            del os.environ["LDP_WORKBOUND"]
        else:
            os.environ["LDP_WORKBOUND"] = saved


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "simulate" and args.mode == "sublacunary" and args.n is None:
            raise InvalidArgument("--n is required for mode sublacunary")
        text = _run(args)
        if args.out and args.command != "figure1":
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return 0
    except LDPError as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {exc.kind}: {msg}", file=sys.stderr)
        return exc.exit_code
    except RecursionError:
        print("error: resource-limit: recursion depth exceeded", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
