"""Asymptotic expansions of resultant, stable, stabilizable and stabilized means.

All means are symmetric and homogeneous, described by the coefficients of

    M(x - t, x + t) ~ sum_n a_n t^(2n) x^(-2n+1),   x -> oo,

with ``a_0 = 1``.  The resultant mean-map is
``R(K, N, M)(s, t) = K(N(s, M(s, t)), N(M(s, t), t))``; stable, stabilizable
and stabilized means are its fixed points with one of ``K``, ``N``, ``M``
unknown.  Coefficients may be Fractions or :class:`~stabmeans.exact.Poly`
values; the arithmetic is the same either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

import mpmath

from .errors import InsufficientOrder, NotNormalized, SymbolicCoefficient
from .exact import Poly, Scalar, as_scalar, symbols, to_rational
from .series import convolve, g_h_prefix, gould_power

__all__ = [
    "MeanCoeffs",
    "DSSeqs",
    "as_mean_coeffs",
    "generic_coeffs",
    "d_s_seqs",
    "resultant_coeffs",
    "stable_coeffs",
    "stabilizable_coeffs",
    "stabilized_coeffs",
    "shifted_coeffs",
    "expansion_eval",
]


@dataclass(frozen=True)
class MeanCoeffs:
    """Coefficients ``a_0..a_N`` of a mean's expansion, with ``a_0 = 1``."""

    coeffs: Tuple[Scalar, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        cs = tuple(as_scalar(c) for c in self.coeffs)
        if not cs or cs[0] != 1:
            raise NotNormalized(f"{self.label or 'mean'}: a_0 must be 1")
        cs = (Fraction(1),) + cs[1:]
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "MeanCoeffs":
        if order > self.order:
            raise InsufficientOrder(f"{self.label}: order {self.order} < {order}")
        return MeanCoeffs(self.coeffs[: order + 1], self.label)

    def is_numeric(self) -> bool:
        return all(not isinstance(c, Poly) or c.is_constant() for c in self.coeffs)

    def rationals(self) -> Tuple[Fraction, ...]:
        return tuple(to_rational(c) for c in self.coeffs)

    def subs(self, mapping) -> "MeanCoeffs":
        return MeanCoeffs(
            tuple(c.subs(mapping) if isinstance(c, Poly) else c for c in self.coeffs),
            self.label)


@dataclass(frozen=True)
class DSSeqs:
    """Half-difference and half-sum sequences of the two inner means.

    ``T ~ sum d_m t^(2m+1) x^(-2m)`` and ``X ~ sum s_m t^(2m) x^(-2m+1)``.
    """

    d: Tuple[Scalar, ...]
    s: Tuple[Scalar, ...]


def as_mean_coeffs(a, label: str = "") -> MeanCoeffs:
    if isinstance(a, MeanCoeffs):
        return a
    return MeanCoeffs(tuple(a), label)


def generic_coeffs(prefix: str, order: int) -> MeanCoeffs:
    """Fully symbolic ``(1, <prefix>1, <prefix>2, ...)``."""
    names = " ".join(f"{prefix}{i}" for i in range(1, order + 1))
    vs = symbols(names) if order else ()
    if order == 1:
        vs = (vs,)
    return MeanCoeffs((Fraction(1),) + tuple(vs), prefix)


def _require(a: MeanCoeffs, order: int, role: str) -> None:
    if a.order < order:
        raise InsufficientOrder(f"{role} coefficients have order {a.order}, need {order}")


def _ds(aN: Sequence[Scalar], aM: Sequence[Scalar], m_max: int):
    # W_n = g^(2n) h^(1-2n); d_m and s_m read W_n at 2m+1-2n and 2m-2n
    g, h = g_h_prefix(aM, 2 * m_max, 2 * m_max + 2)
    d: List[Scalar] = []
    s: List[Scalar] = []
    weights = [list(h)]
    for n in range(1, m_max + 1):
        length = 2 * m_max + 1 - 2 * n
        gp = gould_power(g, 2 * n, length)
        hp = gould_power(h, 1 - 2 * n, length)
        weights.append(convolve(gp, hp, length))
    for m in range(m_max + 1):
        dm: Scalar = Fraction(0)
        sm: Scalar = Fraction(0)
        for n in range(m + 1):
            an = aN[n]
            if not an:
                continue
            w = weights[n]
            dm = dm + an * w[2 * m + 1 - 2 * n]
            sm = sm + an * w[2 * m - 2 * n]
        d.append(-dm / 2)
        s.append(sm / 2)
    return d, s


def d_s_seqs(aN, aM, m_max: int) -> DSSeqs:
    aN = as_mean_coeffs(aN, "N")
    aM = as_mean_coeffs(aM, "M")
    _require(aN, m_max, "N")
    _require(aM, m_max, "M")
    d, s = _ds(aN.coeffs, aM.coeffs, m_max)
    return DSSeqs(tuple(d), tuple(s))


def _resultant(aK, aN, aM, m_max: int, only_top: bool = False) -> List[Scalar]:
    d, s = _ds(aN, aM, m_max)
    lo = m_max if only_top else 0
    out = []
    inner = []
    for n in range(m_max + 1):
        length = m_max - n
        if n == 0:
            inner.append(s)
            continue
        dp = gould_power(d, 2 * n, length)
        sp = gould_power(s, 1 - 2 * n, length)
        inner.append(convolve(dp, sp, length))
    for m in range(lo, m_max + 1):
        acc: Scalar = Fraction(0)
        for n in range(m + 1):
            if aK[n]:
                acc = acc + aK[n] * inner[n][m - n]
        out.append(acc)
    return out


def resultant_coeffs(aK, aN, aM, m_max: int) -> MeanCoeffs:
    """Coefficients of ``R(K, N, M) = K(N(s, M), N(M, t))`` up to index ``m_max``."""
    aK = as_mean_coeffs(aK, "K")
    aN = as_mean_coeffs(aN, "N")
    aM = as_mean_coeffs(aM, "M")
    for a, role in ((aK, "K"), (aN, "N"), (aM, "M")):
        _require(a, m_max, role)
    coeffs = _resultant(aK.coeffs, aN.coeffs, aM.coeffs, m_max)
    return MeanCoeffs(tuple(coeffs), "R")


# Coefficient of the unknown a_m inside a_m^R, per unknown role:
# K enters through d_0^(2m) s_0^(1-2m) = 2^(-2m), N through s_m's n = m term
# (also 2^(-2m)) and M through h_(2m) in s_m's n = 0 term (1/2).
def _self_weight(role: str, m: int) -> Fraction:
    quarter = Fraction(1, 4 ** m)
    if role == "stable":
        return Fraction(1, 2) + 2 * quarter
    if role == "N":
        return quarter
    if role == "M":
        return Fraction(1, 2)
    raise ValueError(role)


def _solve_triangular(role: str, known, start: List[Scalar], m_max: int) -> List[Scalar]:
    """Grow the unknown sequence one index at a time.

    At step ``m`` the unknown's ``a_m`` is set to zero, ``a_m^R`` is computed
    from the lower coefficients and the linear equation
    ``a_m = rest + w a_m`` is solved for ``a_m``.
    """
    unknown = list(start)
    for m in range(len(unknown), m_max + 1):
        trial = unknown + [Fraction(0)]
        if role == "stable":
            seqs = (trial, trial, trial)
        elif role == "N":
            seqs = (known[0][: m + 1], trial, known[1][: m + 1])
        else:
            seqs = (known[0][: m + 1], known[1][: m + 1], trial)
        rest = _resultant(*seqs, m, only_top=True)[0]
        unknown.append(rest / (1 - _self_weight(role, m)))
    return unknown


def stable_coeffs(a1, m_max: int) -> MeanCoeffs:
    """Expansion of the stable mean with first coefficient ``a1``.

    ``a1`` may be rational or a Poly; each later coefficient is then a
    polynomial in it.  Nothing checks that a genuine mean with this ``a1``
    exists.

    >>> stable_coeffs(Fraction(-1, 2), 5).rationals()[1:]
    (Fraction(-1, 2), Fraction(-1, 8), Fraction(-1, 16), Fraction(-5, 128), Fraction(-7, 256))
    """
    if m_max < 0:
        raise ValueError("m_max must be non-negative")
    start = [Fraction(1)] if m_max == 0 else [Fraction(1), as_scalar(a1)]
    return MeanCoeffs(tuple(_solve_triangular("stable", None, start, m_max)), "stable")


def stabilizable_coeffs(aK, aM, m_max: int) -> MeanCoeffs:
    """Expansion of the ``(K, M)``-stabilizable mean ``N = R(K, N, M)``."""
    aK = as_mean_coeffs(aK, "K")
    aM = as_mean_coeffs(aM, "M")
    _require(aK, m_max, "K")
    _require(aM, m_max, "M")
    seq = _solve_triangular("N", (aK.coeffs, aM.coeffs), [Fraction(1)], m_max)
    return MeanCoeffs(tuple(seq), "stabilizable")


def stabilized_coeffs(aK, aN, m_max: int) -> MeanCoeffs:
    """Expansion of the ``(K, N)``-stabilized mean ``M = R(K, N, M)``."""
    aK = as_mean_coeffs(aK, "K")
    aN = as_mean_coeffs(aN, "N")
    _require(aK, m_max, "K")
    _require(aN, m_max, "N")
    seq = _solve_triangular("M", (aK.coeffs, aN.coeffs), [Fraction(1)], m_max)
    return MeanCoeffs(tuple(seq), "stabilized")


def _binom(top: int, k: int) -> Fraction:
    num = 1
    for i in range(k):
        num *= top - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    return Fraction(num, den)


def shifted_coeffs(a, m_max: int) -> List[Scalar]:
    """Coefficients ``a_m(s, t)`` of ``M(x+s, x+t) ~ sum a_m(s,t) x^(-m+1)``."""
    a = as_mean_coeffs(a)
    _require(a, m_max // 2, "mean")
    s, t = symbols("s t")
    diff = t - s
    tot = t + s
    out: List[Scalar] = []
    for m in range(m_max + 1):
        acc: Scalar = Fraction(0)
        for n in range(m // 2 + 1):
            c = _binom(1 - 2 * n, m - 2 * n)
            if not c or not a[n]:
                continue
            acc = acc + a[n] * c * diff ** (2 * n) * tot ** (m - 2 * n)
        out.append(acc / 2 ** m)
    return out


def expansion_eval(a, x, t, order: int):
    """Partial sum ``sum_{n<=order} a_n t^(2n) x^(-2n+1)`` in mpmath arithmetic."""
    a = as_mean_coeffs(a)
    _require(a, order, "mean")
    x = mpmath.mpf(x)
    t = mpmath.mpf(t)
    if not t:
        return x
    try:
        coeffs = [to_rational(c) for c in a.coeffs[: order + 1]]
    except SymbolicCoefficient:
        raise SymbolicCoefficient("expansion_eval needs numeric coefficients") from None
    ratio = (t / x) ** 2
    total = mpmath.mpf(0)
    term = x
    for c in coeffs:
        total += term * mpmath.mpf(c.numerator) / c.denominator
        term *= ratio
    return total
