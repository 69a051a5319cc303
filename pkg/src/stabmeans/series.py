"""Truncated asymptotic power series kernel.

A coefficient sequence ``a = (a_0, ..., a_N)`` stands for the prefix of
``sum a_n x^(-n)``.  Every routine takes an explicit truncation index and
refuses to guess missing coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import (
    IndexOutOfRange,
    InsufficientOrder,
    NotNormalized,
    UnsupportedExponent,
    ZeroLeadingCoefficient,
)
from .exact import Poly, Scalar, as_scalar, to_rational

__all__ = [
    "gould_power",
    "convolve",
    "series_inverse",
    "series_exp",
    "build_g_h",
    "build_g_h_tilde",
    "g_h_prefix",
    "D_S_terms",
    "D_S_terms_unreduced",
]


def _need(seq: Sequence, n_max: int, what: str = "sequence") -> None:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if len(seq) < n_max + 1:
        raise InsufficientOrder(
            f"{what} has order {len(seq) - 1}, need at least {n_max}")


def _normalize_exponent(r):
    if isinstance(r, Poly):
        if r.is_constant():
            r = r.constant_value()
        else:
            if r.total_degree() > 1 or len(r.support()) > 1:
                raise UnsupportedExponent(
                    f"symbolic exponent must be linear in one parameter, got {r}")
            return r
    if isinstance(r, int):
        return r
    r = Fraction(r)
    return r.numerator if r.denominator == 1 else r


def gould_power(a: Sequence[Scalar], r, n_max: int) -> List[Scalar]:
    """Coefficients ``P[0..n_max, r, a]`` of the ``r``-th power of a series.

    Uses the recurrence
    ``P[n] = 1/(n a_0) * sum_{k=1}^{n} (k(1+r) - n) a_k P[n-k]`` with
    ``P[0] = a_0^r``.  Integer ``r`` works for any nonzero rational ``a_0``;
    rational or symbolic ``r`` requires ``a_0 = 1``.

    >>> gould_power([Fraction(2), Fraction(-1), 0, 0], -1, 3)
    [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16)]
    """
    _need(a, n_max)
    try:
        a0 = to_rational(a[0])
    except Exception as exc:
        raise ZeroLeadingCoefficient("leading coefficient must be a rational") from exc
    if not a0:
        raise ZeroLeadingCoefficient("leading coefficient is zero")
    r = _normalize_exponent(r)
    if isinstance(r, int):
        p0: Scalar = a0 ** r
    else:
        if a0 != 1:
            raise UnsupportedExponent(
                f"non-integer exponent {r} needs a leading coefficient of 1, got {a0}")
        p0 = Fraction(1)
    coeffs = [as_scalar(c) for c in a[: n_max + 1]]
    out: List[Scalar] = [p0]
    one_plus_r = 1 + r
    for n in range(1, n_max + 1):
        acc: Scalar = Fraction(0)
        for k in range(1, n + 1):
            ak = coeffs[k]
            if not ak:
                continue
            prev = out[n - k]
            if not prev:
                continue
            acc = acc + (k * one_plus_r - n) * ak * prev
        out.append(acc / (n * a0))
    return out


def convolve(a: Sequence[Scalar], b: Sequence[Scalar], n_max: int) -> List[Scalar]:
    """Cauchy product truncated at index ``n_max``."""
    _need(a, n_max, "first factor")
    _need(b, n_max, "second factor")
    out = []
    for n in range(n_max + 1):
        acc: Scalar = Fraction(0)
        for k in range(n + 1):
            x, y = a[k], b[n - k]
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def series_inverse(a: Sequence[Scalar], n_max: int) -> List[Scalar]:
    return gould_power(a, -1, n_max)


def series_exp(a: Sequence[Scalar], n_max: int) -> List[Scalar]:
    """``exp`` of a series with zero constant term."""
    _need(a, n_max)
    if a[0]:
        raise ValueError("series_exp needs a zero constant term")
    out: List[Scalar] = [Fraction(1)]
    for n in range(1, n_max + 1):
        acc: Scalar = Fraction(0)
        for k in range(1, n + 1):
            if a[k]:
                acc = acc + k * a[k] * out[n - k]
        out.append(acc / n)
    return out


def _check_mean(a: Sequence[Scalar]) -> None:
    if not a or a[0] != 1:
        raise NotNormalized("mean coefficient sequence must start with 1")


def g_h_prefix(a: Sequence[Scalar], g_len: int, h_len: int, tilde: bool = False):
    """The auxiliary sequences ``g``/``h`` (or their tilde versions) to given lengths.

    ``g = (1, a1, 0, a2, 0, a3, ...)`` and ``h = (2, -1, a1, 0, a2, 0, ...)``;
    the tilde versions are ``(1, -a1, 0, -a2, ...)`` and ``(2, 1, a1, 0, ...)``.
    """
    _check_mean(a)
    order = len(a) - 1
    g: List[Scalar] = [Fraction(0)] * g_len
    h: List[Scalar] = [Fraction(0)] * h_len
    if g_len:
        g[0] = Fraction(1)
    for idx in range(1, g_len, 2):
        j = (idx + 1) // 2
        if j > order:
            raise InsufficientOrder(f"g needs a_{j}, sequence has order {order}")
        g[idx] = -a[j] if tilde else as_scalar(a[j])
    if h_len:
        h[0] = Fraction(2)
    if h_len > 1:
        h[1] = Fraction(1 if tilde else -1)
    for idx in range(2, h_len, 2):
        j = idx // 2
        if j > order:
            raise InsufficientOrder(f"h needs a_{j}, sequence has order {order}")
        h[idx] = as_scalar(a[j])
    return g, h


def build_g_h(a: Sequence[Scalar]) -> Tuple[List[Scalar], List[Scalar]]:
    """``g`` and ``h`` of order ``2N`` for a mean sequence of order ``N``."""
    n = 2 * (len(a) - 1) + 1
    return g_h_prefix(a, n, n)


def build_g_h_tilde(a: Sequence[Scalar]) -> Tuple[List[Scalar], List[Scalar]]:
    n = 2 * (len(a) - 1) + 1
    return g_h_prefix(a, n, n, tilde=True)


def _check_dsk(m: int, n: int, k: int) -> None:
    if m < 0 or not 0 <= n <= m // 2 or not 0 <= k <= m - 2 * n:
        raise IndexOutOfRange(f"(m, n, k) = ({m}, {n}, {k}) outside the admissible range")


def _pp(g, h, m, n, k):
    pg = gould_power(g, 2 * n, k)[k]
    ph = gould_power(h, 1 - 2 * n, m - 2 * n - k)[m - 2 * n - k]
    return pg * ph


def D_S_terms(m: int, n: int, k: int, g: Sequence[Scalar], h: Sequence[Scalar]):
    """Reduced ``(D(m,n,k), S(m,n,k))``: one of the two is always zero by parity."""
    _check_dsk(m, n, k)
    prod = 2 * _pp(g, h, m, n, k)
    if m % 2:
        return -prod, Fraction(0)
    return Fraction(0), prod


def D_S_terms_unreduced(m: int, n: int, k: int, g, h, g_tilde, h_tilde):
    """``(D, S)`` straight from their definitions as tilde minus/plus plain products."""
    _check_dsk(m, n, k)
    plain = _pp(g, h, m, n, k)
    tilde = _pp(g_tilde, h_tilde, m, n, k)
    return tilde - plain, tilde + plain
