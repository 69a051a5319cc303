"""Command-line interface: ``stabmeans <subcommand> [options]``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

import mpmath

from . import analysis
from .catalog import SYMBOLIC_PARAMS, exact_coeffs, exact_coeffs_symbolic, parse_mean_spec
from .errors import MeansError, SpecSyntaxError
from .exact import parse_rational, symbols
from .expansion import (
    MeanCoeffs,
    generic_coeffs,
    resultant_coeffs,
    stabilizable_coeffs,
    stabilized_coeffs,
    stable_coeffs,
)
from .render import render

__all__ = ["main", "run", "build_parser", "resolve_coeffs"]


class UsageError(Exception):
    pass


def _a1(text: str, name: str = "a1"):
    if text == "symbolic":
        return symbols(name)
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--a1 takes a rational or 'symbolic', got {text!r}") from None


def resolve_coeffs(text: str, role: str, order: int) -> MeanCoeffs:
    """Coefficients for a ``--mean/--k/--n/--m`` value.

    Besides catalog specs this accepts ``symbolic`` (fully generic
    coefficients ``a<role>1, a<role>2, ...``), ``stable:<a1>`` with a
    rational or ``symbolic`` first coefficient, and a bare family name
    with parameters (``gini``) for coefficients in those parameters.
    """
    if text == "symbolic":
        return generic_coeffs(f"a{role}", order)
    if text.startswith("stable:"):
        return stable_coeffs(_a1(text.split(":", 1)[1], f"a{role}1"), order)
    if text in SYMBOLIC_PARAMS:
        return exact_coeffs_symbolic(text, order)
    try:
        spec = parse_mean_spec(text)
    except SpecSyntaxError as exc:
        raise UsageError(str(exc)) from None
    return exact_coeffs(spec, order)


def _spec(text: Optional[str], flag: str):
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        return parse_mean_spec(text)
    except SpecSyntaxError as exc:
        raise UsageError(str(exc)) from None


def _label(text: str) -> str:
    try:
        return parse_mean_spec(text).symbol
    except SpecSyntaxError:
        return text


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n} is required for {args.command}")


def _cmd_expand(args):
    _need(args, "mean")
    return resolve_coeffs(args.mean, "", args.order)


def _cmd_stable(args):
    _need(args, "a1")
    return stable_coeffs(_a1(args.a1), args.order)


def _cmd_stabilizable(args):
    _need(args, "k", "m")
    return stabilizable_coeffs(resolve_coeffs(args.k, "K", args.order),
                               resolve_coeffs(args.m, "M", args.order), args.order)


def _cmd_stabilized(args):
    _need(args, "k", "n")
    return stabilized_coeffs(resolve_coeffs(args.k, "K", args.order),
                             resolve_coeffs(args.n, "N", args.order), args.order)


def _cmd_resultant(args):
    _need(args, "k", "n", "m")
    return resultant_coeffs(resolve_coeffs(args.k, "K", args.order),
                            resolve_coeffs(args.n, "N", args.order),
                            resolve_coeffs(args.m, "M", args.order), args.order)


def _cmd_check_stability(args):
    _need(args, "mean")
    if args.mean in SYMBOLIC_PARAMS and args.mean != "power":
        orders = list(range(2, max(args.order, 2) + 1))
        return analysis.stability_conditions(args.mean, orders)
    check = analysis.is_stable(_spec(args.mean, "--mean"), args.order)
    return {"mean": args.mean, "order": args.order, "stable": check.stable,
            "first_failure": check.first_failure}


def _cmd_disprove(args):
    return analysis.stabilizable_disproof(_spec(args.target, "--target"), args.order)


def _cmd_substab(args):
    return analysis.substab_optimize(_spec(args.target, "--target"), args.order)


def _cmd_compare(args):
    _need(args, "target")
    target = resolve_coeffs(args.target, "", args.order)
    if args.k is not None or args.m is not None:
        _need(args, "k", "m")
        k = resolve_coeffs(args.k, "K", args.order)
        m = resolve_coeffs(args.m, "M", args.order)
        other = resultant_coeffs(k, target, m, args.order)
        t = _label(args.target)
        right = f"R({_label(args.k)},{t},{_label(args.m)})"
    else:
        _need(args, "mean")
        other = resolve_coeffs(args.mean, "", args.order)
        right = _label(args.mean)
    return analysis.asym_compare(target, other, args.order, _label(args.target), right)


def _cmd_verify(args):
    rel = args.relation
    if rel == "stable":
        _need(args, "mean")
        k = n = m = _spec(args.mean, "--mean")
    elif rel == "stabilizable":
        _need(args, "k", "m")
        k, m = _spec(args.k, "--k"), _spec(args.m, "--m")
        n = _spec(args.n or args.mean, "--n")
    else:
        _need(args, "k", "n")
        k, n = _spec(args.k, "--k"), _spec(args.n, "--n")
        m = _spec(args.m or args.mean, "--m")
    res = analysis.functional_eq_residual(k, n, m, rel, analysis.DEFAULT_GRID, args.precision)
    return {"relation": rel, "K": str(k), "N": str(n), "M": str(m),
            "precision": args.precision, "max_relative_residual": mpmath.nstr(res, 6)}


def _cmd_compound(args):
    _need(args, "k", "n")
    s = parse_rational(args.s)
    t = parse_rational(args.t)
    value = analysis.compound_mean(_spec(args.k, "--k"), _spec(args.n, "--n"), s, t,
                                   args.precision)
    digits = int(args.precision * 0.30103) - 6
    return {"K": args.k, "N": args.n, "s": args.s, "t": args.t,
            "value": mpmath.nstr(value, max(digits, 10))}


COMMANDS = {
    "expand": _cmd_expand,
    "stable": _cmd_stable,
    "stabilizable": _cmd_stabilizable,
    "stabilized": _cmd_stabilized,
    "resultant": _cmd_resultant,
    "check-stability": _cmd_check_stability,
    "disprove": _cmd_disprove,
    "substab": _cmd_substab,
    "compare": _cmd_compare,
    "verify": _cmd_verify,
    "compound": _cmd_compound,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stabmeans",
                     description="Asymptotic expansions of stable, stabilizable and stabilized means.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--mean")
        p.add_argument("--target")
        p.add_argument("--k")
        p.add_argument("--n")
        p.add_argument("--m")
        p.add_argument("--a1")
        p.add_argument("--order", type=int, default=3)
        p.add_argument("--precision", type=int, default=192)
        p.add_argument("--format", choices=("text", "json", "latex"), default="text")
        if name == "verify":
            p.add_argument("--relation", choices=("stable", "stabilizable", "stabilized"),
                           default="stable")
        if name == "compound":
            p.add_argument("--s", default="1")
            p.add_argument("--t", default="2")
    return parser


_VALUE_FLAGS = ("--mean", "--target", "--k", "--n", "--m", "--a1", "--s", "--t")


def _glue_negative_values(argv: List[str]) -> List[str]:
    # argparse reads "--a1 -1/2" as two options; glue such values on with "="
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv: List[str], out=None, err=None) -> int:
    argv = _glue_negative_values(list(argv))
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    fmt = "json" if "json" in argv else "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        if args.order < 0:
            raise UsageError("--order must be non-negative")
        result = COMMANDS[args.command](args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except MeansError as exc:
        if fmt == "json":
            err.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        else:
            err.write(f"error ({type(exc).__name__}): {exc}\n")
        return 1
    out.write(render(result, fmt) + "\n")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
