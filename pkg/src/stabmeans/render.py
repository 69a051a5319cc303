"""Text, JSON and LaTeX renderings of coefficient lists and reports.

All output is deterministic: JSON keys are sorted and polynomials print in
a fixed term order.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import List

import mpmath

from .analysis.algebra import Factorization, factor_linear
from .analysis.reports import (
    SCHEMA_VERSION,
    AsymCompareResult,
    Report,
    encode_value,
)
from .exact import Poly, _name_key, as_scalar, format_rational, format_scalar, parse_poly
from .expansion import MeanCoeffs

__all__ = ["render", "coeffs_to_dict", "coeffs_from_dict", "latex_scalar", "latex_factored"]

FORMATS = ("text", "json", "latex")


# -- coefficient lists -----------------------------------------------------


def coeffs_to_dict(a: MeanCoeffs) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "coefficients",
        "label": a.label,
        "coefficients": [format_scalar(c) for c in a.coeffs],
    }


def coeffs_from_dict(d: dict) -> MeanCoeffs:
    return MeanCoeffs(tuple(as_scalar(parse_poly(c)) for c in d["coefficients"]), d.get("label", ""))


# -- LaTeX -----------------------------------------------------------------

_VAR_RE = re.compile(r"^([A-Za-z]+?)([A-Z]?)(\d+)$")


def _latex_var(name: str) -> str:
    # a1 -> a_1, aK2 -> a^K_2, p -> p
    m = _VAR_RE.match(name)
    if not m:
        return name
    base, sup, idx = m.groups()
    return f"{base}^{sup}_{idx}" if sup else f"{base}_{idx}"


def _latex_frac(c: Fraction) -> str:
    c = abs(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\tfrac{{{c.numerator}}}{{{c.denominator}}}"


def _latex_mono(variables, mono) -> str:
    parts = []
    for v, e in sorted(zip(variables, mono), key=lambda ve: _name_key(ve[0])):
        if e:
            lv = _latex_var(v)
            if "^" in lv and e > 1:
                lv = f"({lv})"
            parts.append(lv if e == 1 else f"{lv}^{{{e}}}")
    return " ".join(parts)


def latex_poly(p, ascending: bool = False) -> str:
    p = as_scalar(p)
    if not isinstance(p, Poly):
        return ("-" if p < 0 else "") + _latex_frac(p)
    terms = p.sorted_terms()
    if ascending:
        terms = terms[::-1]
    if not terms:
        return "0"
    out = ""
    for i, (mono, c) in enumerate(terms):
        body = _latex_mono(p.variables, mono)
        mag = abs(c)
        coef = _latex_frac(mag) if (mag != 1 or not body) else ""
        text = f"{coef}{' ' if coef and body and coef.startswith(chr(92)) else ''}{body}"
        if i == 0:
            out = ("-" if c < 0 else "") + text
        else:
            out += ("-" if c < 0 else "+") + text
    return out


def latex_scalar(x) -> str:
    if isinstance(x, Poly):
        return latex_poly(x)
    if hasattr(x, "radicand"):
        if x.is_rational():
            return latex_scalar(x.a)
        root = f"\\sqrt{{{x.radicand}}}"
        b = abs(x.b)
        if b.denominator == 1:
            tail = root if b == 1 else f"{b.numerator}{root}"
        else:
            tail = f"\\tfrac{{{'' if b.numerator == 1 else b.numerator}{root}}}{{{b.denominator}}}"
        if not x.a:
            return ("-" if x.b < 0 else "") + tail
        return f"{latex_scalar(x.a)}{'-' if x.b < 0 else '+'}{tail}"
    if isinstance(x, (Fraction, int)):
        x = Fraction(x)
        return ("-" if x < 0 else "") + _latex_frac(x)
    return str(x)


def latex_factored(p) -> str:
    """``\\tfrac16 a_1(1+a_1)(1-4a_1)``-style display of a polynomial."""
    p = as_scalar(p)
    if not isinstance(p, Poly) or p.is_constant():
        return latex_scalar(p)
    f: Factorization = factor_linear(p)
    unit = f.unit
    pieces: List[str] = []
    blocks = [(g, e) for g, e in f.factors]
    if not f.cofactor.is_constant():
        blocks.append((f.cofactor, 1))
    for g, e in blocks:
        univariate = len(g.support()) == 1
        if univariate:
            # constant term first, made positive
            c0 = g.terms.get((0,) * len(g.variables), Fraction(0))
            if c0 < 0:
                g = -g
                if e % 2:
                    unit = -unit
        body = latex_poly(g, ascending=univariate)
        if len(g.terms) > 1:
            body = f"({body})"
        pieces.append(body if e == 1 else f"{body}^{{{e}}}")
    sign = "-" if unit < 0 else ""
    lead = "" if abs(unit) == 1 else _latex_frac(unit) + " "
    return f"{sign}{lead}{''.join(pieces)}"


def _latex_coeffs(a: MeanCoeffs) -> str:
    rows = []
    for m, c in enumerate(a.coeffs):
        rows.append(f"a_{{{m}}} = {latex_factored(c)}")
    return " \\\\\n".join(rows)


# -- text ------------------------------------------------------------------


def _text_coeffs(a: MeanCoeffs) -> str:
    if a.is_numeric():
        return ", ".join(format_scalar(c) for c in a.rationals())
    return "\n".join(f"a_{m} = {format_scalar(c)}" for m, c in enumerate(a.coeffs))


def _compare_line(r: AsymCompareResult) -> str:
    lhs = f"{r.left} - {r.right}" if r.left or r.right else "a - b"
    if r.verdict == "equal_to_order":
        return f"{lhs} = 0 to order {r.order}"
    rel = "≻" if r.verdict == "asym_greater" else "≺"
    return (f"{lhs} {rel} 0 (first nonzero: {encode_value(r.first_nonzero_value)} "
            f"at order {r.first_nonzero_index})")


def _cond_lines(report: Report) -> List[str]:
    out = []
    for c in report.conditions:
        line = f"order {c.order}: {format_scalar(c.polynomial)}"
        if c.factorization is not None and (c.factorization.factors or
                                            c.factorization.unit != 1):
            line += f"  =  {c.factorization}"
        out.append(line)
    return out


def _text_report(report: Report) -> str:
    lines = [f"{report.kind}: {report.subject}"]
    d = dict(report.details)
    for key in ("a1", "u", "p", "relation"):
        if key in d:
            name = {"a1": "a_1", "u": "u", "p": "p", "relation": "difference"}[key]
            lines.append(f"{name} = {d[key]}")
    lines.extend(_cond_lines(report))
    for i, s in enumerate(report.solutions):
        vals = ", ".join(f"{k} = {encode_value(v)}" for k, v in s.values)
        res = [r for r in report.residuals if r.solution == i]
        tail = ""
        if res:
            tail = "; " + ", ".join(f"order {r.order}: {encode_value(r.value)}" for r in res)
        lines.append(f"solution {i}: {vals} ({s.representation}){tail}")
    for key in sorted(d):
        if key.startswith("sweep_min_"):
            i = key.rsplit("_", 1)[1]
            lines.append(f"sweep {i}: min {d[key]} at s = {d.get('sweep_argmin_' + i, '?')}")
    if "constraint" in d and d["constraint"]:
        lines.append(f"constraint: {d['constraint']}")
    lines.append(f"verdict: {report.verdict}")
    if report.kind == "substab":
        lines.append(_substab_line(report))
    for n in report.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines)


def _substab_line(report: Report) -> str:
    rel = report.detail("relation", "")
    if report.verdict == "asym_greater":
        r = report.residuals[0]
        return f"{rel} ≻ 0 (first nonzero: {encode_value(r.value)} at order {r.order})"
    return f"{rel}: no double zero; constraint {report.detail('constraint', '')}"


def _latex_report(report: Report) -> str:
    rows = []
    for c in report.conditions:
        rows.append(f"C_{{{c.order}}} = {latex_factored(c.polynomial)}")
    for i, s in enumerate(report.solutions):
        vals = ",\\ ".join(f"{k} = {latex_scalar(v)}" for k, v in s.values)
        rows.append(vals)
    for r in report.residuals:
        rows.append(f"\\text{{order {r.order}}}: {latex_scalar(r.value)}")
    return " \\\\\n".join(rows)


# -- entry point -------------------------------------------------------------


def _json(d) -> str:
    return json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False)


def render(obj, fmt: str = "text") -> str:
    """Render coefficients, a report, a comparison or a plain value."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    if isinstance(obj, MeanCoeffs):
        if fmt == "json":
            return _json(coeffs_to_dict(obj))
        return _latex_coeffs(obj) if fmt == "latex" else _text_coeffs(obj)
    if isinstance(obj, AsymCompareResult):
        if fmt == "json":
            return _json(obj.to_dict())
        if fmt == "latex":
            rel = {"asym_greater": "\\succ", "asym_less": "\\prec"}.get(obj.verdict, "\\sim")
            return f"{obj.left} - {obj.right} {rel} 0"
        return _compare_line(obj)
    if isinstance(obj, Report):
        if fmt == "json":
            return _json(obj.to_dict())
        return _latex_report(obj) if fmt == "latex" else _text_report(obj)
    if isinstance(obj, dict):
        if fmt == "json":
            return _json(obj)
        return "\n".join(f"{k}: {v}" for k, v in sorted(obj.items()))
    if isinstance(obj, mpmath.mpf):
        return _json({"value": mpmath.nstr(obj, 40)}) if fmt == "json" else mpmath.nstr(obj, 40)
    if fmt == "json":
        return _json({"value": str(obj)})
    return latex_scalar(obj) if fmt == "latex" else str(obj)


def format_rationals(xs) -> str:
    return ", ".join(format_rational(x) for x in xs)
