"""Command-line front end: verify, emit, qseries and list."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

import pandas as pd

from . import matq, qgroup, rmat, scalars
from .errors import QDeformError, ScalarDomainError, ShapeError, UnknownCatalogKey
from .osc import positive_q
from .registry import CHECKS, load_config, resolve, run_suite
from .report import PASS

logger = logging.getLogger(__name__)

FORMATS = ("json", "text", "csv")
REPORT_COLUMNS = ["name", "mode", "status", "residual", "witness"]


def parse_q(text):
    """'1.3', '-1', '0.5+0.8i' -> complex."""
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid q value {text!r}") from None


def parse_rational(text):
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid rational {text!r}") from None


def format_number(value):
    z = complex(value)
    if z.imag == 0:
        return "%.17g" % z.real
    return "%.17g%+.17gi" % (z.real, z.imag)


def _usage_error(message):
    print(f"qdeform: error: {message}", file=sys.stderr)
    return 2


def _write(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- verify --------------------------------------------------------------------------

def render_report(result, fmt):
    if fmt == "json":
        return json.dumps(result.to_dict(), indent=2) + "\n"
    if fmt == "text":
        return "".join(r.text_line() + "\n" for r in result.reports)
    frame = pd.DataFrame([r.as_row() for r in result.reports], columns=REPORT_COLUMNS)
    return frame.to_csv(index=False)


def cmd_verify(args):
    try:
        config = load_config(args.config)
        label, names = resolve(args.suite or args.selection or "all", config)
        params = config.params(q=args.q, d=args.d, terms=args.terms, max_order=args.max_order)
        if params.d < 2:
            raise ShapeError(f"d must be at least 2, got {params.d}")
        if params.max_order < 1:
            raise ShapeError(f"max-order must be positive, got {params.max_order}")
        if any(CHECKS[n].positive_q for n in names):
            positive_q(params.q)
    except (QDeformError, OSError, json.JSONDecodeError) as e:
        return _usage_error(str(e))
    workers = args.workers if args.workers is not None else config.workers
    result = run_suite(label, names, params, workers or None)
    _write(render_report(result, args.format), args.out)
    return 0 if result.status == PASS else 1


# -- emit ----------------------------------------------------------------------------

def _rep_object(name):
    return lambda: matq.builtin_rep(name).images


OBJECTS = {
    "R2": lambda: rmat.fundamental_R().matrix,
    "R3": lambda: rmat.universal_R(matq.builtin_rep("spin1"), matq.builtin_rep("spin1")).matrix,
    "P": lambda: matq.flip_matrix(2),
    "T-fund": lambda: matq.universal_T(matq.builtin_rep("fund")),
    "T1-spin1": qgroup.t1_spin1,
    "rep-fund": _rep_object("fund"),
    "rep-spin1": _rep_object("spin1"),
}


def render_object(obj, fmt):
    if isinstance(obj, dict):
        if fmt == "json":
            return json.dumps({g: m.to_json() for g, m in obj.items()}, indent=2) + "\n"
        rows = [(g, i + 1, j + 1, entry)
                for g, m in obj.items()
                for i, row in enumerate(m.render_grid())
                for j, entry in enumerate(row)]
        return pd.DataFrame(rows, columns=["generator", "row", "col", "entry"]).to_csv(index=False)
    if fmt == "json":
        return json.dumps(obj.to_json(), indent=2) + "\n"
    return obj.to_frame().to_csv(index=False, header=False)


def cmd_emit(args):
    if args.object not in OBJECTS:
        return _usage_error(str(UnknownCatalogKey("object", args.object, OBJECTS)))
    try:
        obj = OBJECTS[args.object]()
    except QDeformError as e:
        print(f"qdeform: {e}", file=sys.stderr)
        return 1
    _write(render_object(obj, args.format), args.out)
    return 0


# -- qseries -------------------------------------------------------------------------

def _int_arg(args, index, label):
    try:
        return int(args.args[index])
    except (IndexError, ValueError):
        raise ValueError(f"{args.fn} needs an integer {label}") from None


def evaluate_qseries(args):
    """The exact canonical text, or the numeric value when --q is given."""
    q = args.q
    fn = args.fn
    if fn == "qint":
        n = _int_arg(args, 0, "n")
        return scalars.q_int_heine(n) if q is None else scalars.q_int_heine_numeric(n, q)
    if fn == "qintsym":
        n = _int_arg(args, 0, "n")
        return scalars.q_int_sym(n) if q is None else complex(scalars.q_int_sym_numeric(n, q))
    if fn == "qfact":
        n = _int_arg(args, 0, "n")
        return scalars.q_factorial(n) if q is None else scalars.q_factorial(n, q)
    if fn == "qpoch":
        n = _int_arg(args, 1, "n")
        x = parse_rational(args.args[0]) if q is None else parse_q(args.args[0])
        return scalars.q_shifted_factorial(x, n, None if q is None else q)
    if fn == "qexp":
        z = parse_rational(args.args[0]) if q is None else parse_q(args.args[0])
        return scalars.q_exp(z, None if q is None else q, terms=args.terms)
    # phi
    z = parse_q(args.args[0])
    base = q if q is not None else load_config().defaults["q"]
    return scalars.basic_hypergeometric(args.a, args.b, base, z, args.terms)


def cmd_qseries(args):
    if not args.args:
        return _usage_error(f"{args.fn} needs an argument")
    if args.terms < 1:
        return _usage_error(f"terms must be positive, got {args.terms}")
    try:
        value = evaluate_qseries(args)
    except (ValueError, argparse.ArgumentTypeError) as e:
        return _usage_error(str(e))
    except ScalarDomainError as e:
        print(f"qdeform: {e}", file=sys.stderr)
        return 1
    text = value.render() if isinstance(value, scalars.QScalar) else format_number(value)
    print(text)
    return 0


def cmd_list(args):
    config = load_config(args.config)
    for name in config.suite_names:
        print(f"{name}: {' '.join(config.suite(name))}")
    return 0


# -- parser --------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="qdeform",
                                     description="Exact and numeric checks of q-deformed algebra identities")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a suite or a single check")
    verify.add_argument("selection", nargs="?", help="suite or check name (default: all)")
    verify.add_argument("--suite", help="suite name")
    verify.add_argument("--q", type=parse_q, help="numeric q for numeric checks, e.g. 1.3 or 0.5+0.8i")
    verify.add_argument("--d", type=int, help="Fock truncation dimension")
    verify.add_argument("--terms", type=int)
    verify.add_argument("--max-order", type=int, dest="max_order")
    verify.add_argument("--workers", type=int, help="worker threads (0: one per core)")
    verify.add_argument("--format", choices=FORMATS, default="json")
    verify.add_argument("--out", help="report path (default: standard output)")
    verify.add_argument("--config", help="alternate suites.json")
    verify.set_defaults(func=cmd_verify)

    emit = sub.add_parser("emit", help="write a catalog matrix")
    emit.add_argument("object", help="one of " + ", ".join(OBJECTS))
    emit.add_argument("--format", choices=("json", "csv"), default="json")
    emit.add_argument("--out")
    emit.set_defaults(func=cmd_emit)

    qseries = sub.add_parser("qseries", help="evaluate a q-number or q-series")
    qseries.add_argument("fn", choices=("qint", "qintsym", "qfact", "qpoch", "qexp", "phi"))
    qseries.add_argument("args", nargs="*")
    qseries.add_argument("--q", type=parse_q)
    qseries.add_argument("--terms", type=int, default=30)
    qseries.add_argument("--a", type=parse_q, nargs="*", default=[])
    qseries.add_argument("--b", type=parse_q, nargs="*", default=[])
    qseries.set_defaults(func=cmd_qseries)

    listing = sub.add_parser("list", help="list suites and their checks")
    listing.add_argument("--config")
    listing.set_defaults(func=cmd_list)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)
