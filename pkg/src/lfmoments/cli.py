"""Command-line surface.

Every subcommand prints a single structured record (JSON by default,
flat CSV with ``--csv``) to stdout and exits 0.  Domain failures from the
library map to an error record and exit code 1; argparse usage errors
exit 2.  Exact quantities are serialized losslessly ("24024", "23/72");
approximate ones as decimal strings with an explicit err_estimate.
Records carry no timing by default so identical invocations produce
byte-identical output; pass ``--timing`` to add elapsed_ms.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

import mpmath as mp

from . import analytic_moments, euler_products, mollifier, self_similar
from .errors import DomainError, LfmomentsError
from .exact_moments import SymmetryClass, log_power, moment_constant, moment_factored
from .numeric_core import is_prime
from .padic_valuation import valuation, zero_valuation_window
from .precision import RealApprox

_DISPLAY_DIGITS = 25


def _sym(label: str) -> SymmetryClass:
    try:
        return SymmetryClass.parse(label)
    except LfmomentsError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive_prime(text: str) -> int:
    value = int(text)
    if not is_prime(value):
        raise argparse.ArgumentTypeError(f"{value} is not prime")
    return value


def _coeff_list(text: str):
    return [_fraction(piece) for piece in text.split(",") if piece.strip() != ""]


def _serialize(value, digits: int = _DISPLAY_DIGITS):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else str(value)
    if isinstance(value, RealApprox):
        return value.digits(digits)
    if isinstance(value, mp.mpf):
        return mp.nstr(value, digits)
    if isinstance(value, float):
        return repr(value)
    return value


def _approx_record(record: dict, result: RealApprox, digits: int = _DISPLAY_DIGITS):
    record["result"] = result.digits(digits)
    record["err_estimate"] = f"{result.err_estimate:.3e}"
    record["precision_bits"] = result.precision_bits
    return record


# --- subcommand handlers ----------------------------------------------------


def _cmd_gk(args) -> dict:
    record = {"inputs": {"sym": args.sym.value, "k": args.k}}
    if args.k == 0:
        record["result"] = "1"
        record["note"] = "k = 0 is the empty product; every class gives 1"
        return record
    record["result"] = str(moment_constant(args.sym, args.k))
    record["log_power"] = str(log_power(args.sym, args.k))
    if args.factor:
        factored = moment_factored(args.sym, args.k)
        record["factorization"] = {
            str(p): e for p, e in sorted(factored.exponents.items())
        }
    return record


def _cmd_vp(args) -> dict:
    return {
        "inputs": {"sym": args.sym.value, "p": args.p, "k": args.k},
        "result": str(valuation(args.sym, args.p, args.k)),
    }


def _cmd_cp(args) -> dict:
    record = {"inputs": {"p": args.p, "x": _serialize(args.x)}}
    if args.eps is not None:
        approx = self_similar.density_numeric(args.p, args.x, eps=args.eps)
        _approx_record(record, approx)
        record["inputs"]["eps"] = repr(args.eps)
    else:
        record["result"] = _serialize(self_similar.density_exact(args.p, args.x))
    return record


def _cmd_cp_plot(args) -> dict:
    if not (args.csv_path or args.svg_path):
        raise DomainError("nothing to write: pass --svg PATH and/or --csv PATH")
    points = self_similar.sample_density(
        args.p, args.x_min, args.x_max, args.n, eps=args.eps
    )
    written = []
    if args.csv_path:
        with open(args.csv_path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["x", "cp"])
            writer.writerows(points)
        written.append(args.csv_path)
    if args.svg_path:
        with open(args.svg_path, "w") as handle:
            handle.write(_polyline_svg(points, f"c_{args.p} on [{args.x_min}, {args.x_max}]"))
        written.append(args.svg_path)
    return {
        "inputs": {
            "p": args.p,
            "x_min": _serialize(args.x_min),
            "x_max": _serialize(args.x_max),
            "n": args.n,
        },
        "result": written,
        "points": len(points),
    }


def _cmd_classify(args) -> dict:
    record = {"inputs": {"p": args.p, "a": args.a, "b": args.b}}
    point_class = self_similar.classify_point(args.p, args.a, args.b)
    if isinstance(point_class, self_similar.SelfSimilar):
        record["result"] = "self-similar"
        record["period"] = str(point_class.period)
    elif isinstance(point_class, self_similar.Cusp):
        record["result"] = "cusp"
    else:
        record["result"] = "vertical-tangent"
    return record


def _cmd_glambda(args) -> dict:
    record = {
        "inputs": {
            "sym": args.sym.value,
            "lambda": _serialize(args.lam),
            "route": "limit" if args.limit else "closed",
        }
    }
    if args.limit:
        approx = analytic_moments.moment_by_limit(
            args.sym, args.lam, target_digits=args.digits
        )
    else:
        approx = analytic_moments.moment_closed_form(args.sym, args.lam)
    return _approx_record(record, approx, digits=args.digits + 2)


def _cmd_ghalf(args) -> dict:
    return _approx_record(
        {"inputs": {}}, analytic_moments.half_moment_unitary()
    )


def _cmd_ak(args) -> dict:
    record = {
        "inputs": {
            "family": args.family,
            "k": _serialize(args.k),
            "cutoff": args.cutoff,
        }
    }
    if args.family == "zeta":
        approx = euler_products.zeta_arithmetic_factor(
            float(args.k), prime_cutoff=args.cutoff
        )
    else:
        if args.k.denominator != 1:
            raise LfmomentsError("the quadratic-family product needs integer k")
        approx = euler_products.sp_quadratic_arithmetic_factor(
            int(args.k), prime_cutoff=args.cutoff
        )
    return _approx_record(record, approx)


def _cmd_assemble(args) -> dict:
    family = euler_products.FamilyDescriptor(
        sym=args.sym, conductor_exponent=args.conductor_exponent, label="cli"
    )
    record = {
        "inputs": {
            "sym": args.sym.value,
            "A": _serialize(args.conductor_exponent),
            "k": args.k,
        }
    }
    if args.ak is not None:
        ak = args.ak
        record["inputs"]["ak"] = _serialize(args.ak)
    elif args.sym is SymmetryClass.U:
        ak = euler_products.zeta_arithmetic_factor(args.k, prime_cutoff=args.cutoff)
        record["ak_source"] = f"zeta-family product, cutoff {args.cutoff}"
    elif args.sym is SymmetryClass.Sp:
        ak = euler_products.sp_quadratic_arithmetic_factor(
            args.k, prime_cutoff=args.cutoff
        )
        record["ak_source"] = f"quadratic-family product, cutoff {args.cutoff}"
    else:
        ak = Fraction(1)
        record["note"] = (
            "no built-in arithmetic factor for the orthogonal family; "
            "used a_k = 1 (override with --ak)"
        )
    shape = euler_products.assemble_mean_value(family, args.k, ak)
    record["result"] = shape.coefficient.digits(_DISPLAY_DIGITS)
    record["err_estimate"] = f"{shape.coefficient.err_estimate:.3e}"
    record["log_power"] = str(shape.log_power)
    record["log_argument_exponent"] = _serialize(shape.log_argument_exponent)
    return record


def _cmd_mollify(args) -> dict:
    poly = mollifier.mean_square(args.sym, args.p_coeffs, args.q_coeffs)
    record = {
        "inputs": {
            "sym": args.sym.value,
            "P": [_serialize(c) for c in args.p_coeffs],
            "Q": [_serialize(c) for c in args.q_coeffs],
        },
        "result": poly.format(),
        "theta_validity": _serialize(mollifier.THETA_VALIDITY[args.sym]),
    }
    if args.theta is not None:
        record["inputs"]["theta"] = _serialize(args.theta)
        record["value_at_theta"] = _serialize(
            mollifier.evaluate_at_theta(poly, args.theta)
        )
    return record


def _cmd_asym(args) -> dict:
    approx = analytic_moments.log_moment_asymptotic(args.sym, args.k)
    record = {
        "inputs": {"sym": args.sym.value, "k": args.k},
        "result": approx.digits(_DISPLAY_DIGITS),
        "err_estimate": f"{approx.err_estimate:.3e}",
    }
    if args.k <= 2000:
        with mp.workprec(approx.precision_bits + 16):
            exact = mp.log(mp.mpf(moment_constant(args.sym, args.k)))
            record["log_gk_exact"] = mp.nstr(exact, _DISPLAY_DIGITS)
            record["abs_error"] = mp.nstr(abs(exact - approx.value), 3)
    return record


def _cmd_poles(args) -> dict:
    order = analytic_moments.pole_order(args.sym, args.k)
    return {
        "inputs": {"sym": args.sym.value, "k": args.k, "at": _serialize(Fraction(1, 2) - args.k)},
        "result": str(order),
    }


def _cmd_window(args) -> dict:
    inside = zero_valuation_window(args.sym, args.p, args.k)
    return {
        "inputs": {"sym": args.sym.value, "p": args.p, "k": args.k},
        "result": inside,
    }


# --- plumbing ----------------------------------------------------------------


def _polyline_svg(points, title: str) -> str:
    """Minimal standalone SVG: one polyline plus a framed plot area."""
    width, height, margin = 800, 500, 45
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0

    def sx(x):
        return margin + (x - x_lo) / x_span * (width - 2 * margin)

    def sy(y):
        return height - margin - (y - y_lo) / y_span * (height - 2 * margin)

    path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in points)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f'<rect x="{margin}" y="{margin}" width="{width - 2 * margin}" '
        f'height="{height - 2 * margin}" fill="none" stroke="#888"/>\n'
        f'<text x="{width / 2:.0f}" y="{margin - 12}" text-anchor="middle" '
        f'font-family="monospace" font-size="14">{title}</text>\n'
        f'<text x="{margin}" y="{height - margin + 18}" font-family="monospace" '
        f'font-size="11">{x_lo:.6g}</text>\n'
        f'<text x="{width - margin}" y="{height - margin + 18}" text-anchor="end" '
        f'font-family="monospace" font-size="11">{x_hi:.6g}</text>\n'
        f'<text x="{margin - 4}" y="{height - margin}" text-anchor="end" '
        f'font-family="monospace" font-size="11">{y_lo:.6g}</text>\n'
        f'<text x="{margin - 4}" y="{margin + 4}" text-anchor="end" '
        f'font-family="monospace" font-size="11">{y_hi:.6g}</text>\n'
        f'<polyline fill="none" stroke="#1f4e8c" stroke-width="1" points="{path}"/>\n'
        f"</svg>\n"
    )


def _flatten(record: dict, prefix: str = "") -> dict:
    flat = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, list):
            flat[name] = ";".join(str(v) for v in value)
        else:
            flat[name] = value
    return flat


def _emit(record: dict, as_csv: bool) -> None:
    if as_csv:
        flat = _flatten(record)
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(flat.keys())
        writer.writerow(flat.values())
        sys.stdout.write(buffer.getvalue())
    else:
        json.dump(record, sys.stdout, indent=2)
        sys.stdout.write("\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    output = common.add_mutually_exclusive_group()
    output.add_argument("--json", dest="csv", action="store_false", default=False,
                        help="JSON output (default)")
    output.add_argument("--csv", dest="csv", action="store_true",
                        help="flat CSV output")
    common.add_argument("--timing", action="store_true",
                        help="include elapsed_ms in the record")

    parser = argparse.ArgumentParser(
        prog="lfmoments",
        description="Moment constants, valuations, and mean-value shapes "
        "for the three symmetry classes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gk", parents=[common], help="exact moment constant")
    p.add_argument("sym", type=_sym)
    p.add_argument("k", type=int)
    p.add_argument("--factor", action="store_true", help="include the prime factorization")
    p.set_defaults(handler=_cmd_gk)

    p = sub.add_parser("vp", parents=[common], help="p-adic valuation of a moment constant")
    p.add_argument("sym", type=_sym)
    p.add_argument("p", type=_positive_prime)
    p.add_argument("k", type=int)
    p.set_defaults(handler=_cmd_vp)

    p = sub.add_parser("window", parents=[common],
                       help="is the valuation zero by the window test")
    p.add_argument("sym", type=_sym)
    p.add_argument("p", type=_positive_prime)
    p.add_argument("k", type=int)
    p.set_defaults(handler=_cmd_window)

    p = sub.add_parser("cp", parents=[common], help="self-similar valuation density")
    p.add_argument("p", type=_positive_prime)
    p.add_argument("x", type=_fraction)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True,
                      help="exact rational evaluation (default)")
    mode.add_argument("--eps", type=float, default=None,
                      help="numeric evaluation to this tolerance instead")
    p.set_defaults(handler=_cmd_cp)

    # no [common] parent here: --csv takes a PATH for this subcommand,
    # which would collide with the global boolean output flag
    p = sub.add_parser("cp-plot",
                       help="sample the density and write CSV/SVG")
    p.add_argument("p", type=_positive_prime)
    p.add_argument("x_min", type=_fraction)
    p.add_argument("x_max", type=_fraction)
    p.add_argument("n", type=int)
    p.add_argument("--svg", dest="svg_path", default=None, metavar="PATH")
    p.add_argument("--csv", dest="csv_path", default=None, metavar="PATH")
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(handler=_cmd_cp_plot, csv=False)

    p = sub.add_parser("classify", parents=[common],
                       help="local class of the density graph at a/b")
    p.add_argument("p", type=_positive_prime)
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("glambda", parents=[common],
                       help="moment constant at real degree")
    p.add_argument("sym", type=_sym)
    p.add_argument("lam", type=_fraction, metavar="lambda")
    route = p.add_mutually_exclusive_group()
    route.add_argument("--closed", action="store_true", default=True,
                       help="closed form (default)")
    route.add_argument("--limit", action="store_true", default=False,
                       help="extrapolated defining limit instead")
    p.add_argument("--digits", type=int, default=12,
                   help="target digits for the limit route")
    p.set_defaults(handler=_cmd_glambda)

    p = sub.add_parser("ghalf", parents=[common],
                       help="the degree-1/2 unitary constant")
    p.set_defaults(handler=_cmd_ghalf)

    p = sub.add_parser("ak", parents=[common], help="arithmetic factor")
    p.add_argument("family", choices=("zeta", "spquad"))
    p.add_argument("k", type=_fraction)
    p.add_argument("--cutoff", type=int, default=100_000)
    p.set_defaults(handler=_cmd_ak)

    p = sub.add_parser("assemble", parents=[common],
                       help="leading mean-value term for a family")
    p.add_argument("sym", type=_sym)
    p.add_argument("conductor_exponent", type=_fraction, metavar="A")
    p.add_argument("k", type=int)
    p.add_argument("--ak", type=_fraction, default=None,
                   help="arithmetic factor override")
    p.add_argument("--cutoff", type=int, default=10_000,
                   help="prime cutoff when computing the built-in factor")
    p.set_defaults(handler=_cmd_assemble)

    p = sub.add_parser("mollify", parents=[common],
                       help="mollified mean-square as a Laurent polynomial")
    p.add_argument("sym", type=_sym)
    p.add_argument("--P", dest="p_coeffs", type=_coeff_list, required=True,
                   help="comma-separated coefficients, constant first")
    p.add_argument("--Q", dest="q_coeffs", type=_coeff_list, required=True)
    p.add_argument("--theta", type=_fraction, default=None,
                   help="also evaluate at this theta")
    p.set_defaults(handler=_cmd_mollify)

    p = sub.add_parser("asym", parents=[common],
                       help="large-k expansion of log g_k")
    p.add_argument("sym", type=_sym)
    p.add_argument("k", type=int)
    p.set_defaults(handler=_cmd_asym)

    p = sub.add_parser("poles", parents=[common],
                       help="numeric pole order at degree 1/2 - k")
    p.add_argument("sym", type=_sym)
    p.add_argument("k", type=int)
    p.set_defaults(handler=_cmd_poles)

    return parser


def main(argv=None) -> int:
    # the exact constants overflow CPython's default int-to-str guard well
    # before k = 100 (the order-100 unitary constant has 16154 digits)
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(2_000_000)
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        record = {"command": args.command, **args.handler(args)}
    except LfmomentsError as exc:
        error_record = {
            "command": args.command,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        _emit(error_record, args.csv)
        return 1
    if args.timing:
        record["elapsed_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    _emit(record, args.csv)
    return 0


if __name__ == "__main__":
    sys.exit(main())
