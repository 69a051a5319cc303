"""Exact algebra used by the analyses.

Univariate polynomials are plain lists of Fractions, lowest degree first.
Only what the analyses need is here: rational roots, quadratic surds,
arithmetic modulo a defining polynomial and a trial search for linear
factors of multivariate polynomials.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import mpmath

from ..errors import InexactDivision
from ..exact import Poly, as_scalar, format_rational, parse_poly, poly_exact_divide

__all__ = [
    "QuadraticSurd",
    "RootOf",
    "Factorization",
    "square_free_part",
    "upoly_trim",
    "upoly_eval",
    "upoly_mul",
    "upoly_divmod",
    "upoly_gcd",
    "rational_roots",
    "real_roots",
    "reduce_mod",
    "factor_linear",
]


def square_free_part(n: int) -> Tuple[int, int]:
    """Split ``n > 0`` as ``k^2 * d`` with ``d`` square-free; returns ``(k, d)``."""
    if n <= 0:
        raise ValueError("square_free_part needs a positive integer")
    k = 1
    d = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1
    return k, d * n


_SURD_RE = re.compile(
    r"^\s*(?:(?P<a>[-+]?\d+(?:/\d+)?)\s*)?"
    r"(?:(?P<sign>[-+])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?sqrt\((?P<d>\d+)\))?\s*$")


class QuadraticSurd:
    """``a + b*sqrt(radicand)`` with rational ``a, b`` and square-free ``radicand``.

    Arithmetic is closed in the field generated by ``sqrt(radicand)``;
    Fractions and ints mix in freely.  A value with ``b = 0`` compares equal
    to the corresponding Fraction.

    >>> q = QuadraticSurd(1, Fraction(1, 2), 2)
    >>> 2 * q * q - 4 * q + 1
    QuadraticSurd('0')
    """

    __slots__ = ("a", "b", "radicand")

    def __init__(self, a, b=0, radicand: int = 1):
        a = Fraction(a)
        b = Fraction(b)
        radicand = int(radicand)
        if radicand <= 0:
            raise ValueError("radicand must be positive")
        k, d = square_free_part(radicand)
        b *= k
        if d == 1:
            a, b = a + b, Fraction(0)
        if not b:
            d = 1
        self.a = a
        self.b = b
        self.radicand = d

    def _lift(self, other):
        if isinstance(other, QuadraticSurd):
            if other.radicand == 1 or self.radicand == 1 or other.radicand == self.radicand:
                return other
            raise ValueError(f"sqrt({self.radicand}) and sqrt({other.radicand}) do not mix")
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(other)
        return NotImplemented

    def _d(self, other):
        return max(self.radicand, other.radicand)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.a + o.a, self.b + o.b, self._d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.radicand)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d = self._d(o)
        return QuadraticSurd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.radicand

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.a, -self.b, self.radicand)

    def inverse(self) -> "QuadraticSurd":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero surd")
        c = self.conjugate()
        return QuadraticSurd(c.a / n, c.b / n, self.radicand)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** -n
        out = QuadraticSurd(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_rational(self) -> bool:
        return not self.b

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def sign(self) -> int:
        """Exact sign of the real value."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if not sb:
            return sa
        if not sa or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.radicand
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, QuadraticSurd) else other
        if o is NotImplemented:
            return NotImplemented
        return (self.a, self.b, self.radicand if self.b else 1) == \
            (o.a, o.b, o.radicand if o.b else 1)

    def __hash__(self):
        return hash(self.a) if not self.b else hash((self.a, self.b, self.radicand))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def to_mpf(self):
        return mpmath.mpf(self.a.numerator) / self.a.denominator + \
            mpmath.mpf(self.b.numerator) / self.b.denominator * mpmath.sqrt(self.radicand)

    def minimal_polynomial(self) -> List[Fraction]:
        """Monic minimal polynomial over the rationals, lowest degree first."""
        if not self.b:
            return [-self.a, Fraction(1)]
        return [self.norm(), -2 * self.a, Fraction(1)]

    def __str__(self):
        if not self.b:
            return format_rational(self.a)
        mag = abs(self.b)
        root = f"sqrt({self.radicand})" if mag == 1 else f"{format_rational(mag)}*sqrt({self.radicand})"
        if not self.a:
            return ("-" if self.b < 0 else "") + root
        return f"{format_rational(self.a)} {'-' if self.b < 0 else '+'} {root}"

    def __repr__(self):
        return f"QuadraticSurd({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "QuadraticSurd":
        """Inverse of ``str``: ``"1 - 1/2*sqrt(2)"``, ``"-sqrt(7)"``, ``"3/4"``."""
        m = _SURD_RE.match(text)
        if not m or (m.group("a") is None and m.group("d") is None):
            raise ValueError(f"not a quadratic surd: {text!r}")
        a = Fraction(m.group("a") or 0)
        if m.group("d") is None:
            return cls(a)
        b = Fraction(m.group("b") or 1)
        if m.group("sign") == "-":
            b = -b
        return cls(a, b, int(m.group("d")))


@dataclass(frozen=True)
class RootOf:
    """A real root of an integer polynomial beyond degree 2, kept numerically.

    ``poly`` is the defining polynomial (lowest degree first) and ``approx``
    a decimal string of the isolated root.
    """

    poly: Tuple[Fraction, ...]
    approx: str

    def to_mpf(self):
        return mpmath.mpf(self.approx)

    def sign(self) -> int:
        v = self.to_mpf()
        return (v > 0) - (v < 0)

    def minimal_polynomial(self) -> List[Fraction]:
        return list(self.poly)

    def __str__(self):
        return f"RootOf({_upoly_str(self.poly)}, {self.approx})"


# -- univariate polynomials ------------------------------------------------


def upoly_trim(a: Sequence) -> List[Fraction]:
    out = [Fraction(c) for c in a]
    while out and not out[-1]:
        out.pop()
    return out


def upoly_eval(a: Sequence, x):
    acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def upoly_mul(a: Sequence, b: Sequence) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return upoly_trim(out)


def upoly_divmod(a: Sequence, b: Sequence) -> Tuple[List[Fraction], List[Fraction]]:
    a = upoly_trim(a)
    b = upoly_trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b):
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, x in enumerate(b):
            r[shift + i] -= c * x
        r = upoly_trim(r)
    return upoly_trim(q), r


def upoly_gcd(a: Sequence, b: Sequence) -> List[Fraction]:
    """Monic gcd; the gcd of two zero polynomials is ``[]``."""
    a = upoly_trim(a)
    b = upoly_trim(b)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    if not a:
        return []
    return [c / a[-1] for c in a]


def _upoly_str(a: Sequence, name: str = "x") -> str:
    return str(Poly.from_univariate(a, name)) if upoly_trim(a) else "0"


def _integer_coeffs(a: Sequence[Fraction]) -> List[int]:
    den = 1
    for c in a:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g else ints


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(a: Sequence) -> List[Fraction]:
    """Distinct rational roots, ascending (rational-root theorem)."""
    a = upoly_trim(a)
    if len(a) < 2:
        return []
    roots = set()
    while a and not a[0]:
        roots.add(Fraction(0))
        a = a[1:]
    while len(a) >= 2:
        ints = _integer_coeffs(a)
        found = None
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if not upoly_eval(a, cand):
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.add(found)
        a = upoly_divmod(a, [-found, Fraction(1)])[0]
    return sorted(roots)


def _strip_roots(a: List[Fraction], roots: Sequence[Fraction]) -> List[Fraction]:
    for r in roots:
        while True:
            q, rem = upoly_divmod(a, [-r, Fraction(1)])
            if rem:
                break
            a = q
    return a


def real_roots(a: Sequence, digits: int = 60) -> List[Tuple[object, List[Fraction]]]:
    """Distinct real roots with the polynomial each one is reduced against.

    Rational roots come first (paired with ``x - r``), then the irrational
    ones: degree-2 parts as :class:`QuadraticSurd` with their minimal
    polynomial, higher-degree parts as :class:`RootOf` paired with the
    square-free remaining factor.
    """
    a = upoly_trim(a)
    if len(a) < 2:
        return []
    rats = rational_roots(a)
    out: List[Tuple[object, List[Fraction]]] = [(r, [-r, Fraction(1)]) for r in rats]
    rest = _strip_roots(a, rats)
    if len(rest) < 2:
        return out
    # square-free part of what is left
    deriv = [k * c for k, c in enumerate(rest)][1:]
    g = upoly_gcd(rest, deriv)
    if len(g) > 1:
        rest = upoly_divmod(rest, g)[0]
    rest = [c / rest[-1] for c in rest]
    if len(rest) == 3:
        c, b, _ = rest
        disc = b * b - 4 * c
        if disc < 0:
            return out
        num, den = disc.numerator, disc.denominator
        k, d = square_free_part(num * den)
        half = Fraction(k, 2 * den)
        for sgn in (-1, 1):
            out.append((QuadraticSurd(-b / 2, sgn * half, d), rest))
        return out
    with mpmath.workdps(digits + 20):
        found = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in reversed(rest)],
                                 maxsteps=200, extraprec=4 * digits)
        reals = sorted(mpmath.re(z) for z in found if abs(mpmath.im(z)) < mpmath.mpf(10) ** -digits)
        for z in reals:
            out.append((RootOf(tuple(rest), mpmath.nstr(z, digits)), rest))
    return out


def reduce_mod(p: Sequence, m: Sequence) -> List[Fraction]:
    """Remainder of ``p`` modulo ``m``: the value of ``p`` in Q[x]/(m)."""
    return upoly_divmod(p, m)[1]


def value_at_root(p: Sequence, root, m: Sequence):
    """Exact value of ``p`` at ``root`` (rational or surd) via reduction mod ``m``.

    For :class:`RootOf` roots the value is returned as an mpf.
    """
    r = reduce_mod(p, m)
    if isinstance(root, RootOf):
        with mpmath.workdps(len(root.approx) + 10):
            return upoly_eval(r, root.to_mpf()) if r else mpmath.mpf(0)
    if not r:
        return Fraction(0)
    return upoly_eval(r, root)


# -- multivariate linear factors -------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """``unit * prod(f^e for f, e in factors) * cofactor``.

    Factors are primitive integer polynomials with a positive leading
    coefficient; the cofactor is whatever the linear search left over.
    """

    unit: Fraction
    factors: Tuple[Tuple[Poly, int], ...]
    cofactor: Poly

    def expand(self):
        out = as_scalar(self.unit) * self.cofactor
        for f, e in self.factors:
            out = out * f ** e
        return out

    def __str__(self):
        parts = []
        for f, e in self.factors:
            body = str(f) if len(f.terms) == 1 else f"({f})"
            parts.append(body if e == 1 else f"{body}^{e}")
        if not self.cofactor.is_constant():
            parts.append(f"({self.cofactor})")
        body = " * ".join(parts)
        unit = self.unit
        if not body:
            return format_rational(unit)
        if unit == 1:
            return body
        if unit == -1:
            return "-" + body
        return f"{format_rational(unit)} * {body}"


def _primitive(p: Poly) -> Tuple[Fraction, Poly]:
    c = p.content()
    lead = p.leading_term()[1]
    if lead < 0:
        c = -c
    return c, p / c


def _linear_candidates(names: Sequence[str], bound: int):
    nvar = len(names)
    rng = range(-bound, bound + 1)
    seen = set()
    for coeffs in itertools.product(rng, repeat=nvar + 1):
        *lin, c0 = coeffs
        if not any(lin):
            continue
        g = 0
        for c in coeffs:
            g = math.gcd(g, c)
        if g != 1:
            continue
        terms = {}
        for i, c in enumerate(lin):
            if c:
                mono = [0] * nvar
                mono[i] = 1
                terms[tuple(mono)] = Fraction(c)
        if c0:
            terms[(0,) * nvar] = Fraction(c0)
        cand = Poly(terms, names)
        if cand.leading_term()[1] < 0:
            continue
        if cand in seen:
            continue
        seen.add(cand)
        yield cand


def _vanishes_on(p: Poly, f: Poly, names) -> bool:
    # cheap necessary test: p is zero at two rational points of the hyperplane f = 0
    lead_var = next(v for v in names if f.degree(v) == 1)
    rest = [v for v in names if v != lead_var]
    coeff = f.coefficients_in(lead_var)
    for shift in (Fraction(2, 7), Fraction(-5, 3)):
        point = {v: shift + i for i, v in enumerate(rest)}
        c0 = coeff[0].eval(point) if isinstance(coeff[0], Poly) else Fraction(coeff[0])
        c1 = coeff[1].eval(point) if isinstance(coeff[1], Poly) else Fraction(coeff[1])
        point[lead_var] = -c0 / c1
        if p.eval(point):
            return False
    return True


def factor_linear(p, bound: int = 3) -> Factorization:
    """Pull out linear factors of ``p`` over the rationals.

    Univariate input is split completely into its rational linear factors.
    Multivariate input is searched for factors ``c0 + sum c_i x_i`` with
    integer ``|c_i| <= bound``; each candidate is screened on its zero set
    and confirmed by exact division.
    """
    p = as_scalar(p)
    if not isinstance(p, Poly) or p.is_constant():
        value = p.constant_value() if isinstance(p, Poly) else p
        return Factorization(value, (), Poly.const(1))
    names = p.support()
    unit, rest = _primitive(p)
    factors: List[Tuple[Poly, int]] = []
    if len(names) == 1:
        x = names[0]
        coeffs = rest.univariate(x)
        for r in rational_roots(coeffs):
            f = Poly.from_univariate([-r.numerator, r.denominator], x)
            f_unit, f = _primitive(f)
            e = 0
            while True:
                try:
                    q = poly_exact_divide(rest, f)
                except InexactDivision:
                    break
                rest = q if isinstance(q, Poly) else Poly.const(q)
                e += 1
            if e:
                factors.append((f, e))
    else:
        for cand in _linear_candidates(names, bound):
            if not isinstance(rest, Poly) or rest.total_degree() < 1:
                break
            if not _vanishes_on(rest, cand, names):
                continue
            e = 0
            while True:
                try:
                    q = poly_exact_divide(rest, cand)
                except InexactDivision:
                    break
                rest = as_scalar(q)
                e += 1
                if not isinstance(rest, Poly):
                    rest = Poly.const(rest)
            if e:
                factors.append((cand, e))
    if not isinstance(rest, Poly):
        rest = Poly.const(rest)
    if rest.is_constant():
        unit *= rest.constant_value()
        rest = Poly.const(1)
    else:
        c, rest = _primitive(rest)
        unit *= c
    factors.sort(key=lambda fe: (fe[0].total_degree(), len(fe[0].terms),
                                 max(abs(c) for c in fe[0].terms.values()), str(fe[0])))
    return Factorization(unit, tuple(factors), rest)


def parse_factor(text: str) -> Poly:
    out = parse_poly(text)
    return out if isinstance(out, Poly) else Poly.const(out)
