"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 failed verification, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

import numpy as np

from . import bargmann, constants, gaussians, hermite, svgplot, verify

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x) + 0.0  # drop the sign of -0.0
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _csv_text(header, rows, footer=None) -> str:
    lines = [",".join(header)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    if footer:
        lines.append(footer)
    return "\n".join(lines) + "\n"


def _pair(args) -> constants.GaussianEnvelopePair:
    if args.a is None or args.b is None:
        raise InputError("--a and --b are required")
    try:
        pair = constants.GaussianEnvelopePair(args.a, args.b)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if not pair.in_regime:
        raise InputError(
            f"a*b = {pair.product:.6g} >= 1: no decay estimate in this regime "
            "(E(a,b) = {0} for ab > 1 and C*phi_0 for ab = 1)")
    return pair


def select_function(spec: str, pair):
    """``extremal``, ``gauss:<c>`` or ``hermite:<k>``."""
    try:
        if spec == "extremal":
            return gaussians.extremal_function(pair)
        kind, _, arg = spec.partition(":")
        if kind == "gauss":
            return gaussians.ComplexGaussian(complex(arg.replace(" ", "")))
        if kind == "hermite":
            k = int(arg)
            if k < 0:
                raise ValueError("negative index")
            return hermite.HermiteExpansion.basis(k)
    except ValueError as exc:
        raise InputError(f"bad function selector {spec!r}: {exc}") from exc
    raise InputError(f"unknown function selector {spec!r}; use extremal, gauss:<c> or hermite:<k>")


# ---------------------------------------------------------------------------
# commands


def cmd_constants(args) -> int:
    pair = _pair(args)
    k = constants.solve_lemma21(pair)
    doc = {
        "a": k.a, "b": k.b, "mu": k.mu, "nu": k.nu, "A": k.A, "tau": k.tau,
        "theta0": k.theta0, "theta1": k.theta1, "m": k.m,
        "residuals": k.residuals(),
        "near_degenerate": k.near_degenerate,
    }
    if args.format == "json":
        _write(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        rows = [(key, fmt(v)) for key, v in doc.items() if key not in ("residuals", "near_degenerate")]
        rows += [(f"residual_{key}", fmt(v)) for key, v in doc["residuals"].items()]
        _write("key,value\n" + "".join(f"{a},{b}\n" for a, b in rows), args.output)
    return EXIT_OK


def coefficient_table(f, pair, n_max: int, method: str, quad_order: int | None):
    if method == "closed":
        if isinstance(f, gaussians.ComplexGaussian):
            seq = gaussians.closed_form_coefficients(f, n_max)
        elif isinstance(f, hermite.HermiteExpansion):
            c = f.coefficients
            lm = np.full(n_max + 1, -np.inf)
            ph = np.zeros(n_max + 1)
            m = min(n_max, c.n_max)
            lm[: m + 1] = c.log_magnitude[: m + 1]
            ph[: m + 1] = c.phase[: m + 1]
            seq = hermite.CoefficientSequence(lm, ph)
        else:
            raise InputError("closed form unavailable for this function")
    elif method == "quadrature":
        order = quad_order or hermite.required_order(n_max)
        try:
            seq = hermite.hermite_coefficients(f, n_max, hermite.gauss_hermite(order))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    else:
        A = constants.decay_rate(pair)
        seq = bargmann.coefficient_relation(bargmann.contour_coefficients(f, n_max, A))
    A = constants.decay_rate(pair)
    n = np.arange(n_max + 1)
    env = -0.25 * np.log10(np.maximum(n, 1)) + 0.5 * n * math.log10(A)
    return [(int(i), seq.log10_magnitude()[i], seq.phase[i], env[i]) for i in n]


def cmd_coeffs(args) -> int:
    pair = _pair(args)
    if args.n_max < 0 or (args.method == "closed" and args.n_max > 400):
        raise InputError("--n-max must be in [0, 400] for closed-form coefficients")
    f = select_function(args.function, pair)
    rows = coefficient_table(f, pair, args.n_max, args.method, args.quad_order)
    _write(_csv_text(["n", "log10_abs", "phase_rad", "log10_envelope"], rows), args.output)
    return EXIT_OK


def _resolve_theta(text: str, k: constants.DecayConstants) -> float:
    named = {"peak": k.peak_angle, "theta0": k.theta0, "theta1": k.theta1}
    if text in named:
        return named[text]
    try:
        return float(text)
    except ValueError as exc:
        raise InputError(f"bad --theta {text!r}") from exc


def cmd_ray(args) -> int:
    pair = _pair(args)
    k = constants.solve_lemma21(pair)
    f = select_function(args.function, pair)
    theta = _resolve_theta(args.theta, k)
    r_max = args.r_max if args.r_max is not None else bargmann.ray_radius_limit(k.A)
    try:
        rep = bargmann.ray_bound_check(f, pair, theta, r_max, args.samples)
    except (bargmann.PreconditionError, bargmann.AccuracyEnvelopeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    ln10 = math.log(10)
    rows = [(r, lt / ln10, lb / ln10, (lt - lb))
            for r, lt, lb in zip(rep.r_samples, rep.log_transform, rep.log_bound)]
    footer = f"# bound={rep.applicable_bound} theta={fmt(theta)} max_excess={fmt(rep.max_excess)}"
    _write(_csv_text(["r", "log10_abs_Bf", "log10_bound", "excess"], rows, footer), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    pairs = None
    if args.a is not None or args.b is not None:
        pairs = ((_pair(args).a, _pair(args).b),)
    start = time.perf_counter()
    checks = verify.run(args.suite, pairs)
    lines = [c.line() for c in checks]
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed in "
                 f"{time.perf_counter() - start:.2f} s")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def read_series(path: str):
    """Read a coefficient or ray CSV into ``(columns, x, y1, y2)``."""
    with open(path, encoding="utf-8", newline="") as fh:
        body = [ln for ln in fh.read().splitlines() if ln and not ln.startswith("#")]
    if len(body) < 2:
        raise svgplot.PlotInputError(f"{path}: no data rows")
    reader = csv.reader(io.StringIO("\n".join(body)))
    header = next(reader)
    known = {
        ("n", "log10_abs", "phase_rad", "log10_envelope"): (0, 1, 3),
        ("r", "log10_abs_Bf", "log10_bound", "excess"): (0, 1, 2),
    }
    if tuple(header) not in known:
        raise svgplot.PlotInputError(f"{path}: unrecognized header {header}")
    ix, i1, i2 = known[tuple(header)]
    xs, y1, y2 = [], [], []
    for row in reader:
        if len(row) != len(header):
            raise svgplot.PlotInputError(f"{path}: malformed row {row}")
        try:
            vals = [float(v) for v in row]
        except ValueError as exc:
            raise svgplot.PlotInputError(f"{path}: {exc}") from exc
        xs.append(vals[ix])
        y1.append(vals[i1])
        y2.append(vals[i2])
    return header, np.array(xs), np.array(y1), np.array(y2)


def cmd_plot(args) -> int:
    header, x, y1, y2 = read_series(args.input)
    if header[0] == "n":
        labels = ("n", "log10 |coefficient|", "coefficients", "envelope n^(-1/4) A^(n/2)")
    else:
        labels = ("r", "log10 |Bf|", "|Bf| on ray", "bound")
    svg = svgplot.render(x, [(labels[2], y1), (labels[3], y2)], labels[0], labels[1],
                         title=args.title or args.input.rsplit("/", 1)[-1])
    _write(svg, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hermdecay", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--a", type=float, default=None, help="Gaussian exponent of |f|")
        p.add_argument("--b", type=float, default=None, help="Gaussian exponent of |f^|")
        p.add_argument("--output", "-o", default=None, help="output file (default stdout)")

    p = sub.add_parser("constants", help="closed-form constants and identity residuals")
    common(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("coeffs", help="Hermite coefficient table as CSV")
    common(p)
    p.add_argument("--function", default="extremal", help="extremal | gauss:<c> | hermite:<k>")
    p.add_argument("--n-max", type=int, default=200)
    p.add_argument("--method", choices=("closed", "quadrature", "contour"), default="closed")
    p.add_argument("--quad-order", type=int, default=None)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("ray", aliases=["bargmann-ray"], help="Bargmann transform against its bound along one ray")
    common(p)
    p.add_argument("--function", default="extremal")
    p.add_argument("--theta", default="peak", help="radians, or peak | theta0 | theta1")
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--samples", type=int, default=64)
    p.set_defaults(func=cmd_ray)

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    p.add_argument("--suite", choices=(*verify.SUITES, "all"), default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot", help="render a coeffs/ray CSV as SVG")
    p.add_argument("input")
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--title", default=None)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, constants.OutOfRegimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (svgplot.PlotInputError, OSError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
