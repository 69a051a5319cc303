"""Immutable report objects with a versioned JSON shape.

Every report serializes to::

    {"schema_version": 1, "kind": ..., "subject": ..., "verdict": ...,
     "conditions": [{"order", "polynomial", "factors"}],
     "solutions": [{<variable>: <value>, ..., "representation"}],
     "residuals": [{"order", "value"}],
     "details": {...}, "notes": [...]}

and ``from_dict`` restores an equal object.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

import mpmath

from ..exact import Poly, format_scalar, parse_poly
from .algebra import Factorization, QuadraticSurd, RootOf, parse_factor

__all__ = [
    "SCHEMA_VERSION",
    "Condition",
    "Solution",
    "Residual",
    "AsymCompareResult",
    "Report",
    "StabilityReport",
    "DisproofReport",
    "SubStabReport",
    "SimultaneousReport",
    "report_from_dict",
]

SCHEMA_VERSION = 1

ASYM_VERDICTS = ("asym_greater", "asym_less", "equal_to_order", "identically_zero_to_order")


# -- value codecs ----------------------------------------------------------


def encode_value(v) -> str:
    if isinstance(v, (QuadraticSurd, RootOf)):
        return str(v)
    if isinstance(v, (Fraction, int, Poly)):
        return format_scalar(v)
    if isinstance(v, mpmath.mpf):
        return "~" + mpmath.nstr(v, 30)
    if v is None:
        return ""
    raise TypeError(f"cannot encode {v!r}")


def decode_value(text: str):
    if text == "":
        return None
    if text.startswith("~"):
        return mpmath.mpf(text[1:])
    if text.startswith("RootOf("):
        inner = text[len("RootOf("):-1]
        poly_text, approx = inner.rsplit(",", 1)
        poly = parse_factor(poly_text)
        name = poly.support()[0]
        return RootOf(tuple(poly.univariate(name)), approx.strip())
    if "sqrt(" in text:
        return QuadraticSurd.parse(text)
    return parse_poly(text)


def _encode_factorization(f: Factorization) -> dict:
    return {
        "unit": format_scalar(f.unit),
        "factors": [{"factor": str(p), "multiplicity": e} for p, e in f.factors],
        "cofactor": str(f.cofactor),
    }


def _decode_factorization(d: dict) -> Factorization:
    return Factorization(
        Fraction(d["unit"]),
        tuple((parse_factor(x["factor"]), int(x["multiplicity"])) for x in d["factors"]),
        parse_factor(d["cofactor"]))


# -- pieces ----------------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    """A polynomial that must vanish at ``order``, with its factorization."""

    order: int
    polynomial: object
    factorization: Optional[Factorization] = None

    def to_dict(self) -> dict:
        d = {"order": self.order, "polynomial": encode_value(self.polynomial)}
        d["factors"] = _encode_factorization(self.factorization) if self.factorization else None
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Condition":
        f = d.get("factors")
        return cls(int(d["order"]), decode_value(d["polynomial"]),
                   _decode_factorization(f) if f else None)


@dataclass(frozen=True)
class Solution:
    """Parameter values (rational, surd or numeric root) found by an analysis."""

    values: Tuple[Tuple[str, object], ...]
    representation: str = ""

    def get(self, name: str):
        return dict(self.values)[name]

    def to_dict(self) -> dict:
        d = {k: encode_value(v) for k, v in self.values}
        d["representation"] = self.representation
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Solution":
        vals = tuple((k, decode_value(v)) for k, v in d.items() if k != "representation")
        return cls(vals, d.get("representation", ""))


@dataclass(frozen=True)
class Residual:
    """Exact value of an equation (or difference coefficient) at ``order``.

    ``solution`` indexes the report's solutions the value belongs to.
    """

    order: int
    value: object
    solution: Optional[int] = None

    def to_dict(self) -> dict:
        d = {"order": self.order, "value": encode_value(self.value)}
        if self.solution is not None:
            d["solution"] = self.solution
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Residual":
        return cls(int(d["order"]), decode_value(d["value"]), d.get("solution"))


@dataclass(frozen=True)
class AsymCompareResult:
    """Outcome of scanning ``a - b`` for its first nonzero coefficient."""

    verdict: str
    first_nonzero_index: Optional[int]
    first_nonzero_value: object
    order: int = 0
    left: str = ""
    right: str = ""

    def __post_init__(self):
        if self.verdict not in ASYM_VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def symbol(self) -> str:
        return {"asym_greater": "≻", "asym_less": "≺"}.get(self.verdict, "∼")

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "compare",
            "verdict": self.verdict,
            "first_nonzero_index": self.first_nonzero_index,
            "first_nonzero_value": encode_value(self.first_nonzero_value),
            "order": self.order,
            "left": self.left,
            "right": self.right,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AsymCompareResult":
        return cls(d["verdict"], d["first_nonzero_index"],
                   decode_value(d["first_nonzero_value"]), int(d.get("order", 0)),
                   d.get("left", ""), d.get("right", ""))


@dataclass(frozen=True)
class Report:
    subject: str
    verdict: str
    conditions: Tuple[Condition, ...] = ()
    solutions: Tuple[Solution, ...] = ()
    residuals: Tuple[Residual, ...] = ()
    details: Tuple[Tuple[str, str], ...] = ()
    notes: Tuple[str, ...] = field(default=())

    kind = "report"

    def detail(self, key: str, default=None):
        return dict(self.details).get(key, default)

    def condition(self, order: int) -> Condition:
        for c in self.conditions:
            if c.order == order:
                return c
        raise KeyError(order)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "subject": self.subject,
            "verdict": self.verdict,
            "conditions": [c.to_dict() for c in self.conditions],
            "solutions": [s.to_dict() for s in self.solutions],
            "residuals": [r.to_dict() for r in self.residuals],
            "details": dict(self.details),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
        return cls(
            d["subject"], d["verdict"],
            tuple(Condition.from_dict(c) for c in d["conditions"]),
            tuple(Solution.from_dict(s) for s in d["solutions"]),
            tuple(Residual.from_dict(r) for r in d["residuals"]),
            tuple(sorted(d.get("details", {}).items())),
            tuple(d.get("notes", ())))


class StabilityReport(Report):
    kind = "stability"


class DisproofReport(Report):
    kind = "disproof"


class SubStabReport(Report):
    kind = "substab"


class SimultaneousReport(Report):
    kind = "simultaneous"


_KINDS: Dict[str, type] = {
    c.kind: c for c in (StabilityReport, DisproofReport, SubStabReport, SimultaneousReport)
}


def report_from_dict(d: dict):
    kind = d.get("kind")
    if kind == "compare":
        return AsymCompareResult.from_dict(d)
    if kind not in _KINDS:
        raise ValueError(f"unknown report kind {kind!r}")
    return _KINDS[kind].from_dict(d)
