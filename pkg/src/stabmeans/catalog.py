"""Parametric mean families: closed-form evaluation, exact series, numeric oracle.

Three independent routes to expansion coefficients meet here:

* :func:`mean_eval` evaluates a mean in arbitrary precision from its closed form;
* :func:`exact_coeffs` derives the coefficients exactly by writing
  ``M(x - t, x + t) = x F(u)`` with ``u = t/x`` and building ``F`` from
  binomial, logarithmic and inverse-trigonometric series;
* :func:`oracle_coeffs` fits the coefficients numerically from
  :func:`mean_eval` values.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

import mpmath

from .errors import DegreeBoundExceeded, DomainError, IllConditioned, SpecSyntaxError
from .exact import Poly, format_rational, parse_rational
from .expansion import MeanCoeffs
from .series import convolve, gould_power, series_exp, series_inverse

__all__ = [
    "FAMILIES",
    "MeanSpec",
    "parse_mean_spec",
    "mean_eval",
    "power_mean_eval",
    "exact_coeffs",
    "exact_coeffs_symbolic",
    "oracle_coeffs",
]

FAMILIES = {
    "power": 1,
    "gini": 2,
    "stolarsky": 2,
    "genlog": 1,
    "seiffert1": 0,
    "seiffert2": 0,
    "neuman_sandor": 0,
    "logarithmic": 0,
    "identric": 0,
    "geometric": 0,
    "arithmetic": 0,
    "harmonic": 0,
    "heron": 0,
}

_ALIASES = {
    "ns": "neuman_sandor",
    "NS": "neuman_sandor",
    "A": "arithmetic",
    "G": "geometric",
    "H": "harmonic",
    "L": "logarithmic",
    "I": "identric",
    "P": "seiffert1",
    "T": "seiffert2",
    "He": "heron",
}

_SYMBOLS = {
    "power": "B",
    "gini": "G",
    "stolarsky": "E",
    "genlog": "L",
    "seiffert1": "P",
    "seiffert2": "T",
    "neuman_sandor": "NS",
    "logarithmic": "L",
    "identric": "I",
    "geometric": "G",
    "arithmetic": "A",
    "harmonic": "H",
    "heron": "He",
}

# parameter names used by exact_coeffs_symbolic
SYMBOLIC_PARAMS = {
    "power": ("r",),
    "gini": ("p", "r"),
    "stolarsky": ("p", "r"),
    "genlog": ("r",),
}


@dataclass(frozen=True)
class MeanSpec:
    family: str
    params: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        fam = _ALIASES.get(self.family, self.family)
        if fam not in FAMILIES:
            raise SpecSyntaxError(f"unknown mean family {self.family!r}")
        params = tuple(Fraction(p) for p in self.params)
        if len(params) != FAMILIES[fam]:
            raise SpecSyntaxError(
                f"{fam} takes {FAMILIES[fam]} parameter(s), got {len(params)}")
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "params", params)

    def __str__(self):
        if not self.params:
            return "ns" if self.family == "neuman_sandor" else self.family
        return f"{self.family}:" + ",".join(format_rational(p) for p in self.params)

    @property
    def symbol(self) -> str:
        """Short mathematical name, e.g. ``B_2`` or ``E_{1,3}``."""
        base = _SYMBOLS[self.family]
        if not self.params:
            return base
        ps = ",".join(format_rational(p) for p in self.params)
        return f"{base}_{{{ps}}}" if len(self.params) > 1 or "/" in ps or "-" in ps else f"{base}_{ps}"


def parse_mean_spec(text: str) -> MeanSpec:
    """Parse ``"power:2"``, ``"gini:1/2,3"``, ``"seiffert1"``, ``"ns"`` ..."""
    text = text.strip()
    m = re.fullmatch(r"([A-Za-z_0-9]+)(?::(.*))?", text)
    if not m:
        raise SpecSyntaxError(f"bad mean spec {text!r}")
    name, rest = m.groups()
    fam = _ALIASES.get(name, name.lower())
    fam = _ALIASES.get(fam, fam)
    params: List[Fraction] = []
    if rest is not None:
        try:
            params = [parse_rational(p) for p in rest.split(",")]
        except ValueError as exc:
            raise SpecSyntaxError(str(exc)) from None
    return MeanSpec(fam, tuple(params))


# -- exact series in u ----------------------------------------------------


def _binom(r: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out = out * (r - i) / (i + 1)
    return out


def _even_binomial(r: Fraction, n: int) -> List[Fraction]:
    """``((1+u)^r + (1-u)^r) / 2``."""
    return [_binom(r, k) if k % 2 == 0 else Fraction(0) for k in range(n + 1)]


def _odd_binomial_over_u(r: Fraction, n: int) -> List[Fraction]:
    """``((1+u)^r - (1-u)^r) / (2 r u)``; the ``r -> 0`` limit is ``artanh(u)/u``."""
    if r == 0:
        return [Fraction(1, k + 1) if k % 2 == 0 else Fraction(0) for k in range(n + 1)]
    return [_binom(r, k + 1) / r if k % 2 == 0 else Fraction(0) for k in range(n + 1)]


def _log1p(sign: int, n: int) -> List[Fraction]:
    """``log(1 + sign*u)``."""
    out = [Fraction(0)]
    for k in range(1, n + 1):
        out.append(Fraction((-1) ** (k + 1) * sign ** k, k))
    return out


def _binomial(r: Fraction, sign: int, n: int) -> List[Fraction]:
    return [_binom(r, k) * sign ** k for k in range(n + 1)]


def _arcsin_over_u(n: int, hyperbolic: bool = False) -> List[Fraction]:
    out = []
    for k in range(n + 1):
        if k % 2:
            out.append(Fraction(0))
            continue
        j = k // 2
        c = Fraction(math.comb(2 * j, j), 4 ** j * (2 * j + 1))
        out.append(-c if hyperbolic and j % 2 else c)
    return out


def _arctan_over_u(n: int) -> List[Fraction]:
    return [Fraction((-1) ** (k // 2), k + 1) if k % 2 == 0 else Fraction(0)
            for k in range(n + 1)]


def _ratio(num, den, n):
    return convolve(num, series_inverse(den, n), n)


def _shift_down(a: Sequence[Fraction], n: int) -> List[Fraction]:
    """Divide a series with zero constant term by ``u``."""
    if a[0]:
        raise ValueError("series has a constant term")
    return list(a[1: n + 2])


def _gini_equal(p: Fraction, n: int) -> List[Fraction]:
    # log F = [(1+u)^p log(1+u) + (1-u)^p log(1-u)] / [(1+u)^p + (1-u)^p]
    plus = convolve(_binomial(p, 1, n), _log1p(1, n), n)
    minus = convolve(_binomial(p, -1, n), _log1p(-1, n), n)
    num = [x + y for x, y in zip(plus, minus)]
    den = [x + y for x, y in zip(_binomial(p, 1, n), _binomial(p, -1, n))]
    return series_exp(_ratio(num, den, n), n)


def _stolarsky_equal(p: Fraction, n: int) -> List[Fraction]:
    # log F = -1/p + [(1+u)^p log(1+u) - (1-u)^p log(1-u)] / [(1+u)^p - (1-u)^p]
    m = n + 1
    plus = convolve(_binomial(p, 1, m), _log1p(1, m), m)
    minus = convolve(_binomial(p, -1, m), _log1p(-1, m), m)
    num = _shift_down([x - y for x, y in zip(plus, minus)], n)
    den = _shift_down([x - y for x, y in zip(_binomial(p, 1, m), _binomial(p, -1, m))], n)
    q = _ratio(num, den, n)
    q[0] -= 1 / p
    return series_exp(q, n)


def _u_series(spec: MeanSpec, n: int) -> List[Fraction]:
    """Coefficients ``F_0..F_n`` with ``M(x - t, x + t) = x F(t / x)``."""
    fam = spec.family
    ps = spec.params
    if fam == "arithmetic":
        return [Fraction(1)] + [Fraction(0)] * n
    if fam == "geometric":
        return _power_series(Fraction(0), n)
    if fam == "harmonic":
        return _power_series(Fraction(-1), n)
    if fam == "power":
        return _power_series(ps[0], n)
    if fam == "heron":
        root = _power_series(Fraction(0), n)
        return [(2 + root[0]) / 3] + [c / 3 for c in root[1:]]
    if fam == "gini":
        p, r = ps
        if p == r:
            return _power_series(Fraction(0), n) if p == 0 else _gini_equal(p, n)
        ratio = _ratio(_even_binomial(p, n), _even_binomial(r, n), n)
        return gould_power(ratio, 1 / (p - r), n)
    if fam == "stolarsky":
        return _stolarsky_series(ps[0], ps[1], n)
    if fam == "genlog":
        r = ps[0]
        if r == -1:
            return _stolarsky_series(Fraction(0), Fraction(1), n)
        return _stolarsky_series(r + 1, Fraction(1), n)
    if fam == "logarithmic":
        return series_inverse(_odd_binomial_over_u(Fraction(0), n), n)
    if fam == "identric":
        return _stolarsky_equal(Fraction(1), n)
    if fam == "seiffert1":
        return series_inverse(_arcsin_over_u(n), n)
    if fam == "seiffert2":
        return series_inverse(_arctan_over_u(n), n)
    if fam == "neuman_sandor":
        return series_inverse(_arcsin_over_u(n, hyperbolic=True), n)
    raise AssertionError(fam)


def _power_series(r: Fraction, n: int) -> List[Fraction]:
    if r == 0:
        # G(x - t, x + t) = x sqrt(1 - u^2)
        base = [Fraction(1)] + [Fraction(0)] * n
        if n >= 2:
            base[2] = Fraction(-1)
        return gould_power(base, Fraction(1, 2), n)
    return gould_power(_even_binomial(r, n), 1 / r, n)


def _stolarsky_series(p: Fraction, r: Fraction, n: int) -> List[Fraction]:
    if p == r:
        return _power_series(Fraction(0), n) if p == 0 else _stolarsky_equal(p, n)
    ratio = _ratio(_odd_binomial_over_u(p, n), _odd_binomial_over_u(r, n), n)
    return gould_power(ratio, 1 / (p - r), n)


@lru_cache(maxsize=512)
def exact_coeffs(spec: MeanSpec, m_max: int) -> MeanCoeffs:
    """Exact rational expansion coefficients ``a_0..a_{m_max}`` of a catalog mean.

    >>> exact_coeffs(parse_mean_spec("seiffert1"), 3).rationals()
    (Fraction(1, 1), Fraction(-1, 6), Fraction(-17, 360), Fraction(-367, 15120))
    """
    if isinstance(spec, str):
        spec = parse_mean_spec(spec)
    f = _u_series(spec, 2 * m_max)
    return MeanCoeffs(tuple(f[0::2]), str(spec))


# -- symbolic parameters via exact interpolation ----------------------------


def _interpolate_1d(xs: Sequence[Fraction], ys: Sequence) -> List:
    """Monomial coefficients of the interpolating polynomial (Newton form)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    poly[0] = coef[n - 1]
    deg = 0
    for i in range(n - 2, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * n
        for k in range(deg + 1):
            new[k + 1] += poly[k]
            new[k] -= poly[k] * xs[i]
        new[0] += coef[i]
        poly = new
        deg += 1
    return poly


_HELD_OUT = {
    1: [(Fraction(2, 7),), (Fraction(-5, 11),)],
    2: [(Fraction(1, 5), Fraction(2, 7)), (Fraction(-3, 4), Fraction(5, 6))],
}


def _grid(family: str, count: int) -> List[Fraction]:
    if family == "genlog":
        return [Fraction(2 * i + 1, 2) for i in range(count)]
    return [Fraction(2 * i + 1, 3) for i in range(count)]


def _grid2(count: int) -> List[Fraction]:
    return [-Fraction(3 * j + 1, 4) for j in range(count)]


def exact_coeffs_symbolic(family: str, m_max: int, degree_cap: int | None = None) -> MeanCoeffs:
    """Coefficients as polynomials in the family parameters.

    Evaluates :func:`exact_coeffs` on a tensor grid of rational parameter
    values, interpolates each coefficient exactly and certifies the result at
    held-out points.  The degree bound starts at ``2*m_max + 1`` and is
    raised when a held-out check fails.
    """
    family = _ALIASES.get(family, family)
    if family not in SYMBOLIC_PARAMS:
        raise ValueError(f"no symbolic parameters for family {family!r}")
    names = SYMBOLIC_PARAMS[family]
    nvar = len(names)
    degree = 2 * m_max + 1
    cap = degree_cap if degree_cap is not None else 4 * m_max + 4
    while degree <= cap:
        result = _interpolate_family(family, names, m_max, degree)
        if all(_agrees(family, result, pt, m_max) for pt in _HELD_OUT[nvar]):
            return MeanCoeffs(tuple(result), family)
        degree += 2
    raise DegreeBoundExceeded(
        f"{family}: interpolation did not certify up to degree {cap}")


def _interpolate_family(family, names, m_max, degree):
    xs = _grid(family, degree + 1)
    variables = tuple(names)
    if len(names) == 1:
        samples = [exact_coeffs(MeanSpec(family, (x,)), m_max).coeffs for x in xs]
        out = []
        for m in range(m_max + 1):
            cs = _interpolate_1d(xs, [s[m] for s in samples])
            out.append(_simplify(Poly({(k,): c for k, c in enumerate(cs)}, variables)))
        return out
    ys = _grid2(degree + 1)
    table = [[exact_coeffs(MeanSpec(family, (x, y)), m_max).coeffs for y in ys] for x in xs]
    out = []
    for m in range(m_max + 1):
        # interpolate in the second parameter for each first-parameter row
        rows = [_interpolate_1d(ys, [table[i][j][m] for j in range(len(ys))])
                for i in range(len(xs))]
        terms = {}
        for e2 in range(degree + 1):
            cs = _interpolate_1d(xs, [row[e2] for row in rows])
            for e1, c in enumerate(cs):
                if c:
                    terms[(e1, e2)] = c
        out.append(_simplify(Poly(terms, variables)))
    return out


def _simplify(p: Poly):
    return p.constant_value() if p.is_constant() else p


def _agrees(family, coeffs, point, m_max) -> bool:
    names = SYMBOLIC_PARAMS[family]
    exact = exact_coeffs(MeanSpec(family, point), m_max).coeffs
    assignment = dict(zip(names, point))
    for c, e in zip(coeffs, exact):
        value = c.eval(assignment) if isinstance(c, Poly) else c
        if value != e:
            return False
    return True


# -- arbitrary precision evaluation ---------------------------------------


def _mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def power_mean_eval(r, s, t):
    """``B_r(s, t)`` for any real exponent (mpmath value), at the current precision."""
    r = mpmath.mpf(r)
    if r == 0:
        return mpmath.sqrt(s * t)
    return ((s ** r + t ** r) / 2) ** (1 / r)


def _closed_form(spec: MeanSpec, s, t):
    fam = spec.family
    ps = [_mpf(p) for p in spec.params]
    log = mpmath.log
    if fam == "arithmetic":
        return (s + t) / 2
    if fam == "geometric":
        return mpmath.sqrt(s * t)
    if fam == "harmonic":
        return 2 * s * t / (s + t)
    if fam == "heron":
        return (s + mpmath.sqrt(s * t) + t) / 3
    if fam == "power":
        return power_mean_eval(ps[0], s, t)
    if fam == "gini":
        p, r = ps
        if p != r:
            return ((s ** p + t ** p) / (s ** r + t ** r)) ** (1 / (p - r))
        if p == 0:
            return mpmath.sqrt(s * t)
        return mpmath.exp((s ** p * log(s) + t ** p * log(t)) / (s ** p + t ** p))
    if fam == "stolarsky":
        return _stolarsky_eval(ps[0], ps[1], s, t)
    if fam == "genlog":
        r = ps[0]
        if r == -1:
            return (t - s) / (log(t) - log(s))
        if r == 0:
            return _identric(s, t)
        return ((t ** (r + 1) - s ** (r + 1)) / ((r + 1) * (t - s))) ** (1 / r)
    if fam == "logarithmic":
        return (t - s) / (log(t) - log(s))
    if fam == "identric":
        return _identric(s, t)
    if fam == "seiffert1":
        return (t - s) / (2 * mpmath.asin((t - s) / (t + s)))
    if fam == "seiffert2":
        return (t - s) / (2 * mpmath.atan((t - s) / (t + s)))
    if fam == "neuman_sandor":
        return (t - s) / (2 * mpmath.asinh((t - s) / (t + s)))
    raise AssertionError(fam)


def _identric(s, t):
    return mpmath.exp((t * mpmath.log(t) - s * mpmath.log(s)) / (t - s) - 1)


def _stolarsky_eval(p, r, s, t):
    log = mpmath.log
    if p == r:
        if p == 0:
            return mpmath.sqrt(s * t)
        tp, sp = t ** p, s ** p
        return mpmath.exp(-1 / p + (tp * log(t) - sp * log(s)) / (tp - sp))
    if p == 0 or r == 0:
        q = r if p == 0 else p
        return ((t ** q - s ** q) / (q * (log(t) - log(s)))) ** (1 / q)
    return ((r * (t ** p - s ** p)) / (p * (t ** r - s ** r))) ** (1 / (p - r))


def _near_diagonal(spec: MeanSpec, s, t, precision: int):
    x = (s + t) / 2
    u = (t - s) / (s + t)
    u2 = u * u
    # enough terms that u^(2K+2) drops below 2^-(precision+32)
    bits = -mpmath.log(abs(u), 2) if u else mpmath.inf
    k = 1 if bits == mpmath.inf else int(mpmath.ceil((precision + 32) / (2 * bits)))
    coeffs = exact_coeffs(spec, max(k, 1)).rationals()
    total = mpmath.mpf(0)
    power = mpmath.mpf(1)
    for c in coeffs:
        total += _mpf(c) * power
        power *= u2
    return x * total


def mean_eval(spec, s, t, precision: int = 128):
    """Evaluate a catalog mean at ``(s, t)`` to about ``precision`` bits.

    ``s`` and ``t`` may be ints, Fractions, strings or mpf values.  Close to
    the diagonal the closed forms cancel catastrophically, so there the exact
    series in ``u = (t-s)/(t+s)`` is summed instead.
    """
    if isinstance(spec, str):
        spec = parse_mean_spec(spec)
    with mpmath.workprec(precision + precision // 4 + 32):
        s = _to_mpf(s)
        t = _to_mpf(t)
        if not (s > 0 and t > 0):
            raise DomainError(f"means are defined for positive arguments, got ({s}, {t})")
        if s == t:
            return +s
        u = abs(t - s) / (t + s)
        if u < mpmath.mpf(2) ** (-precision / 4):
            return _near_diagonal(spec, s, t, precision)
        return _closed_form(spec, s, t)


def _to_mpf(x):
    if isinstance(x, Fraction):
        return _mpf(x)
    return mpmath.mpf(x)


# -- numeric oracle --------------------------------------------------------


def oracle_coeffs(spec, m_max: int, precision: int = 256, x0=None,
                  extra_terms: int | None = None, tol=None) -> List:
    """Numerically fitted coefficients ``a_0..a_{m_max}`` (mpmath values).

    Samples ``y_j = M(x_j - 1, x_j + 1) / x_j`` at ``x_j = x0 * 2^j`` and
    solves the least-squares problem ``y_j = sum_n a_n x_j^(-2n)``.  The
    model carries ``extra_terms`` nuisance coefficients beyond ``m_max`` to
    absorb truncation error, and two extra rows.  The fit is repeated with
    two more nuisance terms; if the requested coefficients move by more than
    ``tol`` (relative, or absolute for coefficients below 1 in size),
    :class:`IllConditioned` is raised.
    """
    if isinstance(spec, str):
        spec = parse_mean_spec(spec)
    extra = 4 if extra_terms is None else extra_terms
    # the smallest design entry is 4^-((K+2)(K-1)) for K = m_max + extra + 3 columns
    k = m_max + extra + 3
    prec = max(int(precision), 2 * (k + 2) * (k - 1) + 64)
    x0 = mpmath.mpf(64 if x0 is None else x0)
    with mpmath.workprec(prec):
        tol = mpmath.mpf(10) ** -15 if tol is None else mpmath.mpf(tol)
        first = _fit(spec, m_max + extra, x0, prec)
        second = _fit(spec, m_max + extra + 2, x0, prec)
        gap = max(abs(a - b) / max(abs(b), 1)
                  for a, b in zip(first[: m_max + 1], second[: m_max + 1]))
        if gap > tol:
            raise IllConditioned(
                f"oracle fit for {spec} unstable (relative change {mpmath.nstr(gap, 5)}); "
                "raise precision or x0", residual=gap)
        return [+v for v in second[: m_max + 1]]


def _fit(spec, n_unknowns, x0, prec):
    # unknowns scaled by z0^n so the design matrix has entries 4^(-j n) <= 1
    rows = n_unknowns + 1 + 2
    z0 = 1 / (x0 * x0)
    a_rows = []
    b = []
    for j in range(rows):
        x = x0 * mpmath.mpf(2) ** j
        w = mpmath.mpf(4) ** -j
        a_rows.append([w ** n for n in range(n_unknowns + 1)])
        b.append(mean_eval(spec, x - 1, x + 1, prec) / x)
    sol, _res = mpmath.qr_solve(mpmath.matrix(a_rows), mpmath.matrix(b))
    return [sol[i] / z0 ** i for i in range(n_unknowns + 1)]
