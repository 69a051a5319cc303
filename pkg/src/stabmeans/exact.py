"""Exact scalars: rationals and sparse multivariate polynomials over them.

Rationals are plain :class:`fractions.Fraction` values.  :class:`Poly` is a
sparse polynomial with named variables whose coefficients are Fractions.  The
two together form the coefficient ring used by every recursion in the
package: any code that only uses ``+``, ``-``, ``*`` and division by a
rational works unchanged on either kind, so passing a symbolic ``a1`` gives
polynomial answers and passing a number gives exact rational answers.

>>> p, q = symbols("p q")
>>> (p + q) * (p - q)
Poly('p^2 - q^2')
>>> Fraction(1, 2) + Fraction(1, 3)
Fraction(5, 6)
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from .errors import InexactDivision, MissingVariable, SymbolicCoefficient

__all__ = [
    "Fraction",
    "Poly",
    "Scalar",
    "symbols",
    "as_scalar",
    "to_rational",
    "is_zero",
    "scalar_add",
    "scalar_mul",
    "scalar_neg",
    "scalar_div_rat",
    "poly_eval",
    "poly_exact_divide",
    "format_rational",
    "format_scalar",
    "parse_rational",
    "parse_poly",
]

Monomial = Tuple[int, ...]


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"n"`` or ``"n/d"``; decimals are rejected on purpose."""
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", text):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def _name_key(name: str):
    return tuple(int(x) if x.isdigit() else x for x in re.split(r"(\d+)", name))


class Poly:
    """Sparse polynomial over the rationals.

    ``terms`` maps exponent vectors (aligned with ``variables``) to nonzero
    Fraction coefficients.  Instances are immutable by convention.
    """

    __slots__ = ("variables", "terms", "_key")

    def __init__(self, terms: Mapping[Monomial, object] | None = None,
                 variables: Iterable[str] = ()):
        self.variables: Tuple[str, ...] = tuple(variables)
        n = len(self.variables)
        clean: Dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError("exponent vector length does not match variables")
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self.terms: Dict[Monomial, Fraction] = clean
        self._key = None

    # -- construction -------------------------------------------------------

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls._raw({(1,): Fraction(1)}, (name,))

    @classmethod
    def const(cls, c) -> "Poly":
        c = Fraction(c)
        return cls._raw({(): c} if c else {}, ())

    @classmethod
    def _raw(cls, terms, variables) -> "Poly":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._key = None
        return obj

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> Tuple[str, ...]:
        """Variables that actually occur, in declaration order."""
        used = [False] * len(self.variables)
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise SymbolicCoefficient(f"{self} is not constant")
        return sum(self.terms.values(), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree(self, name: str) -> int:
        if name not in self.variables:
            return 0 if self.terms else -1
        i = self.variables.index(name)
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def _canon(self):
        if self._key is None:
            self._key = frozenset(
                (tuple(sorted((v, e) for v, e in zip(self.variables, m) if e)), c)
                for m, c in self.terms.items()
            )
        return self._key

    def as_dict(self) -> Dict[Tuple[Tuple[str, int], ...], Fraction]:
        """Terms keyed by ``((name, exponent), ...)`` with zero exponents dropped."""
        return dict(self._canon())

    # -- alignment helpers --------------------------------------------------

    def _extended(self, names: Tuple[str, ...]) -> Dict[Monomial, Fraction]:
        if names == self.variables:
            return self.terms
        idx = [names.index(v) for v in self.variables]
        n = len(names)
        out = {}
        for mono, c in self.terms.items():
            new = [0] * n
            for i, e in zip(idx, mono):
                new[i] = e
            out[tuple(new)] = c
        return out

    @staticmethod
    def _merged_names(a: "Poly", b: "Poly") -> Tuple[str, ...]:
        if a.variables == b.variables:
            return a.variables
        extra = tuple(v for v in b.variables if v not in a.variables)
        return a.variables + extra

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            zero = (0,) * len(self.variables)
            terms = dict(self.terms)
            c = terms.get(zero, 0) + other
            if c:
                terms[zero] = Fraction(c)
            else:
                terms.pop(zero, None)
            return Poly._raw(terms, self.variables)
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        names = Poly._merged_names(self, other)
        terms = dict(self._extended(names))
        for mono, c in other._extended(names).items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return Poly._raw(terms, names)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()}, self.variables)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw({}, self.variables)
            other = Fraction(other)
            return Poly._raw({m: c * other for m, c in self.terms.items()},
                             self.variables)
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        names = Poly._merged_names(self, other)
        a = self._extended(names)
        b = other._extended(names)
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly._raw(out, names)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            raise TypeError("division by a polynomial is not supported; "
                            "use poly_exact_divide")
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            inv = 1 / Fraction(other)
            return Poly._raw({m: c * inv for m, c in self.terms.items()},
                             self.variables)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a non-negative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._canon() == other._canon()
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash(self._canon())

    def __bool__(self):
        return bool(self.terms)

    # -- evaluation ---------------------------------------------------------

    def eval(self, assignment: Mapping[str, object]) -> Fraction:
        return poly_eval(self, assignment)

    def subs(self, mapping: Mapping[str, object]):
        """Substitute scalars (Fractions or Polys) for some variables."""
        keep = [v for v in self.variables if v not in mapping]
        keep_idx = [i for i, v in enumerate(self.variables) if v not in mapping]
        sub_idx = [(i, mapping[v]) for i, v in enumerate(self.variables) if v in mapping]
        powers: Dict[Tuple[int, int], object] = {}

        def power(i, val, e):
            key = (i, e)
            if key not in powers:
                powers[key] = val ** e
            return powers[key]

        result: Scalar = Fraction(0)
        base_vars = tuple(keep)
        for mono, c in self.terms.items():
            term = Poly._raw({tuple(mono[i] for i in keep_idx): c}, base_vars)
            factor: Scalar = Fraction(1)
            for i, val in sub_idx:
                e = mono[i]
                if e:
                    factor = factor * power(i, as_scalar(val), e)
            result = result + term * factor
        return result

    def coefficients_in(self, name: str) -> list:
        """Coefficients of ``name^0, name^1, ...`` as polynomials in the rest."""
        if name not in self.variables:
            return [self]
        i = self.variables.index(name)
        rest = self.variables[:i] + self.variables[i + 1:]
        buckets: Dict[int, Dict[Monomial, Fraction]] = {}
        for mono, c in self.terms.items():
            buckets.setdefault(mono[i], {})[mono[:i] + mono[i + 1:]] = c
        deg = max(buckets) if buckets else 0
        return [Poly._raw(buckets.get(k, {}), rest) for k in range(deg + 1)]

    def univariate(self, name: str) -> list:
        """Rational coefficient list (low to high) of a polynomial in ``name`` only."""
        extra = [v for v in self.support() if v != name]
        if extra:
            raise SymbolicCoefficient(f"{self} depends on {extra}, not only {name}")
        return [c.constant_value() for c in self.coefficients_in(name)]

    @classmethod
    def from_univariate(cls, coeffs, name: str) -> "Poly":
        return cls._raw({(k,): Fraction(c) for k, c in enumerate(coeffs) if c}, (name,))

    # -- ordering / printing -----------------------------------------------

    def sorted_terms(self):
        """Terms in graded lexicographic order (highest first).

        Variables rank by natural name order (``a2`` before ``a10``), not by
        the order they were declared in, so equal polynomials print alike.
        """
        order = sorted(range(len(self.variables)), key=lambda i: _name_key(self.variables[i]))

        def key(mc):
            mono = mc[0]
            return sum(mono), tuple(mono[i] for i in order)

        return sorted(self.terms.items(), key=key, reverse=True)

    def leading_term(self):
        return self.sorted_terms()[0] if self.terms else None

    def content(self) -> Fraction:
        """Positive rational gcd of the coefficients (so the quotient is primitive)."""
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den) if num else Fraction(0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            names = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in sorted(zip(self.variables, mono), key=lambda ve: _name_key(ve[0])) if e
            )
            mag = abs(c)
            if not names:
                body = format_rational(mag)
            elif mag == 1:
                body = names
            else:
                body = f"{format_rational(mag)}*{names}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({str(self)!r})"


Scalar = Union[Fraction, Poly]


def symbols(names: str):
    """``symbols("p q")`` -> tuple of variable polynomials."""
    out = tuple(Poly.var(n) for n in names.replace(",", " ").split())
    return out[0] if len(out) == 1 else out


def as_scalar(x) -> Scalar:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def to_rational(x) -> Fraction:
    """Return ``x`` as a Fraction, raising SymbolicCoefficient if it is not constant."""
    if isinstance(x, Poly):
        return x.constant_value()
    return Fraction(x)


def is_zero(x) -> bool:
    return not x


def scalar_add(a, b) -> Scalar:
    return as_scalar(a) + as_scalar(b)


def scalar_mul(a, b) -> Scalar:
    return as_scalar(a) * as_scalar(b)


def scalar_neg(a) -> Scalar:
    return -as_scalar(a)


def scalar_div_rat(a, d) -> Scalar:
    d = Fraction(d)
    if not d:
        raise ZeroDivisionError("division by zero rational")
    return as_scalar(a) / d


def poly_eval(p, assignment: Mapping[str, object]) -> Fraction:
    if not isinstance(p, Poly):
        return Fraction(p)
    missing = [v for v in p.support() if v not in assignment]
    if missing:
        raise MissingVariable(f"no value for {', '.join(missing)}")
    total = Fraction(0)
    vals = [Fraction(assignment[v]) if v in assignment else Fraction(0) for v in p.variables]
    for mono, c in p.terms.items():
        t = c
        for val, e in zip(vals, mono):
            if e:
                t *= val ** e
        total += t
    return total


def poly_exact_divide(p, q) -> Scalar:
    """Quotient of ``p`` by ``q`` when ``q`` divides ``p`` exactly.

    Long division on graded-lex leading terms; any leading term of the
    remainder that is not a monomial multiple of ``lt(q)`` proves the
    division is inexact.
    """
    p = as_scalar(p)
    q = as_scalar(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    if not isinstance(q, Poly) or q.is_constant():
        return p / to_rational(q)
    if not isinstance(p, Poly):
        p = Poly.const(p)
    names = Poly._merged_names(p, q)
    rem = Poly._raw(dict(p._extended(names)), names)
    div = Poly._raw(dict(q._extended(names)), names)
    lm_q, lc_q = div.leading_term()
    quotient = Poly._raw({}, names)
    while rem.terms:
        lm_r, lc_r = rem.leading_term()
        shift = tuple(a - b for a, b in zip(lm_r, lm_q))
        if any(e < 0 for e in shift):
            raise InexactDivision(f"{q} does not divide {p}")
        t = Poly._raw({shift: lc_r / lc_q}, names)
        quotient = quotient + t
        rem = rem - t * div
    return quotient


def format_scalar(x) -> str:
    if isinstance(x, Poly):
        return str(x)
    return format_rational(x)


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_poly(text: str) -> Scalar:
    """Parse the expanded textual form produced by ``str(Poly)``.

    Accepts ``+ - * / ^ **`` and parentheses; division is only by constants.
    Returns a Fraction when the expression has no variables.
    """
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            if op == "*":
                val = val * rhs
            else:
                val = val / to_rational(rhs)
        return val

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, e = take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            return base ** e
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return Fraction(val)
        if kind == "name":
            return Poly.var(val)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parenthesis")
            return inner
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    if isinstance(result, Poly) and result.is_constant():
        return result.constant_value()
    return result
