"""Command-line front end: ``mtzeta eval | laurent | verify | report``.

Exit codes
    eval     0 ok, 2 domain or pole error, 3 accuracy or budget failure
    laurent  0 ok, 2 dispatch or domain error
    verify   0 all pass, 1 some identity fails, 2 bad arguments
    report   0 all criteria pass, 1 some criterion fails
Argument errors exit with 2 everywhere.
"""

import argparse
import ast
import csv
import io
import json
import math
import operator
import os
import sys
import warnings

from mtzeta import __version__
from mtzeta.errors import (
    AccuracyWarning,
    BudgetExceededError,
    DispatchError,
    DomainError,
    IllConditionedFitError,
    MTZetaError,
    QuadratureError,
    UnknownIdentityError,
)

SCHEMA_VERSION = 1
DEFAULT_EVAL_TOL = 1e-10
DEFAULT_VERIFY_TOL = 1e-8

_NAMES = {
    "pi": math.pi,
    "e": math.e,
    "gamma": 0.57721566490153286061,
    "phi": (1.0 + math.sqrt(5.0)) / 2.0,
}
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNOPS = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def parse_number(text):
    """A float from a literal or a small arithmetic expression in pi, gamma, phi, e."""
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return _UNOPS[type(node.op)](ev(node.operand))
        raise ValueError(f"unsupported expression {text!r}")

    try:
        value = ev(ast.parse(str(text).strip(), mode="eval"))
    except (SyntaxError, ZeroDivisionError, OverflowError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse number {text!r}: {exc}") from None
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return float(value)


def parse_list(text):
    return tuple(parse_number(part) for part in str(text).split(",") if part.strip())


def _positive(text):
    v = parse_number(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _int(text):
    v = parse_number(text)
    if v != int(v):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(v)


# ---------------------------------------------------------------------------
# output


def _fmt_float(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if not math.isfinite(v):
        return "null"
    out = format(v, ".17g")
    if "e" not in out and "." not in out and "n" not in out:
        out += ".0"
    return out


def dumps(obj, indent=2, _level=0):
    """JSON with floats at 17 significant digits and insertion-ordered keys."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalars
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _emit(args, text):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(message, code):
    sys.stderr.write(f"mtzeta: {message}\n")
    return code


def _tolerance(args, default):
    if args.tol is not None:
        return args.tol
    env = os.environ.get("MTZETA_TOL")
    if env:
        try:
            return _positive(env)
        except argparse.ArgumentTypeError:
            pass
    return default


# ---------------------------------------------------------------------------
# eval


def _eval_direct(r, s, t, x):
    from mtzeta.theta import ThetaPoint, theta_direct_with_error

    return theta_direct_with_error(ThetaPoint(r, s, t, x)) + ([],)


def _eval_series(r, s, t, x):
    from mtzeta.specfun import is_integer
    from mtzeta.theta import theta_series_eval

    if not (is_integer(r) and is_integer(t)):
        raise DomainError("the series method needs integer r and t")
    v = theta_series_eval(int(round(r)), s, int(round(t)), x)
    return v, 8 * 2.220446049250313e-16 * max(1.0, abs(v)), ["error estimate is a rounding bound"]


def _eval_continued(r, s, t, x, M=None):
    from mtzeta.continuation import auto_order, theta_continued_any
    from mtzeta.specfun import is_integer

    if M is None:
        M = auto_order(r, s, t)
        if is_integer(r) and r >= 1:
            M = max(M, int(round(r)) - 1)
    v = theta_continued_any(r, s, t, x, M=M)
    v2 = theta_continued_any(r, s, t, x, M=M + 2)
    diff = abs(v - v2)
    note = f"M-stability: |Theta(M={M}) - Theta(M={M + 2})| = {diff:.3e}"
    return v, max(diff, 4 * 2.220446049250313e-16 * abs(v)), [note]


def _pick_method(r, s, t, x):
    from mtzeta.specfun import is_integer
    from mtzeta.theta import ThetaPoint

    if ThetaPoint(r, s, t, x).in_domain_with_margin():
        return "direct"
    if is_integer(r) and is_integer(t) and r >= 0 and t >= 0 and r + t >= 1 and s > 2 - r - t:
        return "series"
    return "continued"


def run_eval(args):
    tol = _tolerance(args, DEFAULT_EVAL_TOL)
    r, s, t, x = args.r, args.s, args.t, args.x
    try:
        method = args.method if args.method != "auto" else _pick_method(r, s, t, x)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", AccuracyWarning)
            if method == "direct":
                value, err, notes = _eval_direct(r, s, t, x)
            elif method == "series":
                value, err, notes = _eval_series(r, s, t, x)
            else:
                value, err, notes = _eval_continued(r, s, t, x, args.M)
    except (DomainError, DispatchError) as exc:
        return _fail(str(exc), 2)
    except (BudgetExceededError, QuadratureError) as exc:
        return _fail(str(exc), 3)
    ok = bool(math.isfinite(value) and err <= tol)
    result = {
        "schema_version": SCHEMA_VERSION,
        "command": "eval",
        "r": r, "s": s, "t": t, "x": x,
        "method": method,
        "value": float(value),
        "error_estimate": float(err),
        "tolerance": tol,
        "accurate": ok,
        "notes": notes,
    }
    if args.format == "json":
        text = dumps(result)
    elif args.format == "csv":
        text = _csv([[float(value), float(err), method]], ["value", "error_estimate", "method"])
    else:
        text = f"Theta({r:g}, {s:g}, {t:g}, {x:g}) = {_fmt_float(float(value))}\n"
        text += f"error estimate {float(err):.3e} (method {method})"
        for n in notes:
            text += f"\n{n}"
    _emit(args, text)
    if not ok:
        return _fail(f"error estimate {err:.3e} exceeds tolerance {tol:.3e}", 3)
    return 0


# ---------------------------------------------------------------------------
# laurent


def _laurent_t(args):
    from mtzeta.limits import crosscheck_third, klf_third, klf_third_mixed
    from mtzeta.specfun import is_integer

    r, s, x = args.r, args.s, args.x
    if r is None or s is None:
        raise DispatchError("--var t needs --r and --s")
    if is_integer(r):
        if args.ell is None:
            raise DispatchError("--var t with integer r needs --ell")
        closed = klf_third(r, s, args.ell, x)
        check = (lambda: crosscheck_third(r, s, x, ell=args.ell))
    else:
        closed = klf_third_mixed(r, s, x)
        check = (lambda: crosscheck_third(r, s, x))
    return closed, check


def _laurent_s(args):
    from mtzeta.limits import crosscheck_second, klf_second

    if args.r is None or args.t is None:
        raise DispatchError("--var s needs --r and --t")
    closed = klf_second(args.r, args.t, args.x)
    return closed, (lambda: crosscheck_second(args.r, args.t, args.x))


def run_laurent(args):
    try:
        closed, check = _laurent_t(args) if args.var == "t" else _laurent_s(args)
        if args.center is not None and abs(args.center - closed.center) > 1e-12:
            raise DispatchError(f"--center {args.center:g} does not match the expansion point {closed.center:g}")
        residuals = []
        series = closed
        if args.source == "fit" or args.crosscheck:
            _, fitted, residuals = check()
            if args.source == "fit":
                series = fitted
    except (DomainError, DispatchError) as exc:
        return _fail(str(exc), 2)
    except (IllConditionedFitError, QuadratureError, BudgetExceededError) as exc:
        return _fail(str(exc), 3)
    result = {
        "schema_version": SCHEMA_VERSION,
        "command": "laurent",
        "variable": series.variable,
        "center": series.center,
        "min_order": series.min_order,
        "coefficients": [float(c) for c in series.coefficients],
        "source": series.source,
        "case": closed.notes[0] if closed.notes else None,
        "notes": list(closed.notes[1:]),
        "crosscheck_residuals": [float(v) for v in residuals],
    }
    if args.format == "json":
        text = dumps(result)
    elif args.format == "csv":
        rows = [[series.min_order + k, float(c)] for k, c in enumerate(series.coefficients)]
        text = _csv(rows, ["order", "coefficient"])
    else:
        lines = [f"Laurent expansion in {series.variable} around {series.center:g} ({result['case']}, {series.source})"]
        lines += [f"  c[{series.min_order + k}] = {_fmt_float(float(c))}" for k, c in enumerate(series.coefficients)]
        if residuals:
            lines.append("  crosscheck residuals: " + ", ".join(f"{v:.2e}" for v in residuals))
        text = "\n".join(lines)
    _emit(args, text)
    return 0


# ---------------------------------------------------------------------------
# verify


def run_verify(args):
    from mtzeta.herglotz import run_suite

    tol = _tolerance(args, DEFAULT_VERIFY_TOL)
    overrides = {}
    if args.grid:
        overrides["x"] = args.grid
    for key in ("r", "t", "z"):
        values = getattr(args, key)
        if values:
            if any(v != int(v) for v in values):
                return _fail(f"--{key} values must be integers", 2)
            overrides[key] = tuple(int(v) for v in values)
    try:
        reports = run_suite(args.identity, tol=tol, **overrides)
    except UnknownIdentityError as exc:
        return _fail(str(exc), 2)
    except DomainError as exc:
        return _fail(str(exc), 2)
    entries = [dict(params=params, **rep.as_dict()) for params, rep in reports]
    passed = all(rep.passed for _, rep in reports)
    if args.format == "json":
        text = dumps({"schema_version": SCHEMA_VERSION, "command": "verify", "identity": args.identity,
                      "tolerance": tol, "all_pass": passed, "reports": entries})
    elif args.format == "csv":
        rows = [[rep.name, ";".join(f"{k}={v:g}" for k, v in params.items()), rep.lhs, rep.rhs,
                 rep.residual, rep.tolerance, "pass" if rep.passed else "fail"] for params, rep in reports]
        text = _csv(rows, ["name", "params", "lhs", "rhs", "residual", "tolerance", "status"])
    else:
        lines = []
        for params, rep in reports:
            ps = ", ".join(f"{k}={v:g}" for k, v in params.items())
            lines.append(f"{'PASS' if rep.passed else 'FAIL'} {rep.name}({ps}) residual={rep.residual:.3e}")
        text = "\n".join(lines)
    _emit(args, text)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# report


def run_report(args):
    from mtzeta import kernels
    from mtzeta.acceptance import CRITERIA, run_acceptance

    numbers = None
    if args.criteria:
        numbers = sorted({int(v) for v in args.criteria})
        known = {c[0] for c in CRITERIA}
        if not set(numbers) <= known:
            return _fail(f"unknown criteria {sorted(set(numbers) - known)}", 2)
    results = run_acceptance(numbers)
    passed = all(r.passed for r in results)
    if args.format == "json":
        text = dumps({
            "schema_version": SCHEMA_VERSION,
            "command": "report",
            "suite": args.suite,
            "configuration": {"version": __version__, "backend": kernels.BACKEND,
                              "criteria": [r.number for r in results]},
            "all_pass": passed,
            "criteria": [r.as_dict() for r in results],
        })
    elif args.format == "csv":
        text = _csv([[r.number, r.status, r.residual, r.seconds] for r in results],
                    ["criterion", "status", "residual", "seconds"])
    else:
        text = "\n".join(r.line() for r in results)
    _emit(args, text)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# parser


def _common(p):
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", default=None, help="output file (default: standard output)")
    p.add_argument("--config", default=None, help="key=value file with defaults for any flag")
    p.add_argument("--tol", type=_positive, default=None,
                   help="tolerance (default from MTZETA_TOL, else the command's default)")


def build_parser():
    parser = argparse.ArgumentParser(prog="mtzeta", description="Generalized Mordell-Tornheim zeta function tools.")
    parser.add_argument("--version", action="version", version=f"mtzeta {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate Theta(r, s, t, x)")
    for name in ("r", "s", "t", "x"):
        p.add_argument(f"--{name}", type=parse_number, required=True)
    p.add_argument("--method", choices=("direct", "series", "continued", "auto"), default="auto")
    p.add_argument("--M", type=_int, default=None, help="continuation order (default: automatic)")
    _common(p)
    p.set_defaults(func=run_eval)

    p = sub.add_parser("laurent", help="Laurent expansion in s or t")
    p.add_argument("--var", choices=("t", "s"), required=True)
    p.add_argument("--r", type=parse_number, default=None)
    p.add_argument("--s", type=parse_number, default=None)
    p.add_argument("--t", type=_int, default=None)
    p.add_argument("--x", type=parse_number, default=1.0)
    p.add_argument("--ell", type=_int, default=None)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--center", type=parse_number, default=None)
    group.add_argument("--auto-center", action="store_true", help="derive the center from the arguments (default)")
    p.add_argument("--source", choices=("closed_form", "fit"), default="closed_form")
    p.add_argument("--crosscheck", action=argparse.BooleanOptionalAction, default=True,
                   help="fit the continued evaluator and report coefficient residuals")
    _common(p)
    p.set_defaults(func=run_laurent)

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("--identity", required=True,
                   help="registry name or suite alias (guinand, ramanujan, zagier, vz, mixed, all)")
    p.add_argument("--grid", type=parse_list, default=None, help="comma-separated x values")
    p.add_argument("--r", type=parse_list, default=None)
    p.add_argument("--t", type=parse_list, default=None)
    p.add_argument("--z", type=parse_list, default=None)
    _common(p)
    p.set_defaults(func=run_verify)

    p = sub.add_parser("report", help="run the acceptance suite")
    p.add_argument("--suite", choices=("acceptance",), default="acceptance")
    p.add_argument("--criteria", type=parse_list, default=None, help="subset, e.g. 1,4,6")
    _common(p)
    p.set_defaults(func=run_report)
    return parser


def read_config(path):
    """key=value pairs; blank lines and # comments ignored; keys use flag names."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.lstrip("-").replace("-", "_")] = value
    return out


def _subparser(parser, command):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices.get(command)
    return None


def _config_path(argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    return known.config


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    path = _config_path(argv)
    command = next((a for a in argv if not a.startswith("-")), None)
    sp = _subparser(parser, command)
    if path and sp is not None:
        try:
            config = read_config(path)
        except (OSError, ValueError) as exc:
            return _fail(f"config: {exc}", 2)
        dests = {a.dest: a for a in sp._actions}
        unknown = [k for k in config if k not in dests or k in ("config", "help")]
        if unknown:
            return _fail(f"config: unknown keys {unknown}", 2)
        # config values become defaults, so explicit flags still win
        for key, value in config.items():
            action = dests[key]
            if action.nargs == 0:
                value = value.lower() in ("1", "true", "yes", "on")
            action.required = False
            sp.set_defaults(**{key: value})
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MTZetaError as exc:
        return _fail(str(exc), 2)


if __name__ == "__main__":
    sys.exit(main())
