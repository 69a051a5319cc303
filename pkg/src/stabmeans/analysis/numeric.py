"""High-precision numeric checks of the defining functional equations."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence, Tuple

import mpmath

from ..catalog import MeanSpec, mean_eval, parse_mean_spec, power_mean_eval
from ..errors import DomainError, NonConvergence

__all__ = [
    "DEFAULT_GRID",
    "resultant_eval",
    "functional_eq_residual",
    "compound_mean",
    "substab_sweep",
    "sweep_points",
]

DEFAULT_GRID: Tuple[Tuple[int, int], ...] = ((1, 2), (1, 4), (3, 7), (1, 100))

RELATIONS = ("stable", "stabilizable", "stabilized")

MeanFn = Callable[[object, object], object]


def _as_fn(mean, precision: int) -> MeanFn:
    if callable(mean):
        return mean
    spec = parse_mean_spec(mean) if isinstance(mean, str) else mean
    return lambda s, t: mean_eval(spec, s, t, precision)


def _num(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if hasattr(x, "to_mpf"):
        return x.to_mpf()
    return mpmath.mpf(x)


def resultant_eval(K, N, M, s, t, precision: int = 128):
    """``R(K, N, M)(s, t) = K(N(s, M(s, t)), N(M(s, t), t))``.

    Means are MeanSpecs, spec strings or callables ``(s, t) -> mpf``.
    """
    k, n, m = (_as_fn(x, precision) for x in (K, N, M))
    with mpmath.workprec(precision + 32):
        s, t = _num(s), _num(t)
        mst = m(s, t)
        return k(n(s, mst), n(mst, t))


def functional_eq_residual(K, N, M, relation: str,
                           samples: Iterable[Tuple[object, object]] = DEFAULT_GRID,
                           precision: int = 128):
    """Largest ``|LHS - R(K, N, M)| / |LHS|`` over the samples.

    The left-hand side is ``M`` for the stable and stabilized relations and
    ``N`` for the stabilizable one; for ``stable`` all three should be the
    same mean.
    """
    if relation not in RELATIONS:
        raise ValueError(f"relation must be one of {RELATIONS}")
    lhs_mean = N if relation == "stabilizable" else M
    lhs_fn = _as_fn(lhs_mean, precision)
    worst = mpmath.mpf(0)
    with mpmath.workprec(precision + 32):
        for s, t in samples:
            s, t = _num(s), _num(t)
            if not (s > 0 and t > 0):
                raise DomainError(f"samples must be positive, got ({s}, {t})")
            lhs = lhs_fn(s, t)
            rhs = resultant_eval(K, N, M, s, t, precision)
            worst = max(worst, abs(lhs - rhs) / abs(lhs))
    with mpmath.workprec(precision):
        return +worst


def compound_mean(K, N, s, t, precision: int = 128, max_iter: int = 10000):
    """Gauss compound mean: iterate ``(s, t) <- (K(s, t), N(s, t))``.

    Stops when the two iterates agree to ``2^(16 - precision)`` relative.
    """
    k = _as_fn(K, precision)
    n = _as_fn(N, precision)
    with mpmath.workprec(precision + 32):
        s, t = _num(s), _num(t)
        if not (s > 0 and t > 0):
            raise DomainError(f"compound mean needs positive arguments, got ({s}, {t})")
        tol = mpmath.mpf(2) ** (16 - precision)
        gap = abs(s - t) / max(s, t)
        for _ in range(max_iter):
            if gap <= tol:
                break
            s, t = k(s, t), n(s, t)
            gap = abs(s - t) / max(s, t)
        else:
            raise NonConvergence(f"no convergence after {max_iter} steps", gap=gap)
        with mpmath.workprec(precision):
            return +((s + t) / 2)


def sweep_points(count: int = 200, tail: int = 10) -> Sequence:
    """Points of ``(0, 1/2)``: a uniform grid plus ``10^-3 .. 10^-(2+tail)``.

    ``s = 1/2`` is left out: every mean difference vanishes on the diagonal.
    """
    pts = [mpmath.mpf(k) / (2 * count) for k in range(1, count)]
    pts += [mpmath.mpf(10) ** -e for e in range(3, 3 + tail)]
    return sorted(pts)


def substab_sweep(target, p, q, precision: int = 128, points=None):
    """Minimum of ``target(s, 1-s) - R(B_p, target, B_q)(s, 1-s)`` over a grid.

    This is numeric evidence only, not a proof of the inequality.  ``p``
    and ``q`` may be rationals, surds or mpf values; the difference is
    symmetric in ``s <-> 1-s`` so only ``s <= 1/2`` is sampled.  Returns
    ``(minimum, argmin s)``.
    """
    tfn = _as_fn(target, precision)
    with mpmath.workprec(precision + 32):
        p, q = _num(p), _num(q)
        kfn = lambda a, b: power_mean_eval(p, a, b)
        mfn = lambda a, b: power_mean_eval(q, a, b)
        pts = points if points is not None else sweep_points()
        best = None
        for s in pts:
            s = _num(s)
            t = 1 - s
            d = tfn(s, t) - resultant_eval(kfn, tfn, mfn, s, t, precision)
            if best is None or d < best[0]:
                best = (d, s)
    with mpmath.workprec(precision):
        return +best[0], +best[1]
