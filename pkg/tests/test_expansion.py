from fractions import Fraction as F

import mpmath
import pytest
import sympy
from sympy import QQ
from sympy.polys.rings import ring
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import from_sympy, typed_poly
from stabmeans.catalog import exact_coeffs, mean_eval, parse_mean_spec
from stabmeans.errors import InsufficientOrder, SymbolicCoefficient
from stabmeans.exact import poly_eval, symbols
from stabmeans.expansion import (
    MeanCoeffs,
    d_s_seqs,
    expansion_eval,
    generic_coeffs,
    resultant_coeffs,
    shifted_coeffs,
    stabilizable_coeffs,
    stabilized_coeffs,
    stable_coeffs,
)

a1, p, q = symbols("a1 p q")
ZERO = MeanCoeffs((F(1),) + (F(0),) * 6)

def _ring(orders):
    names = ["u"] + [f"a{r}{i}" for r in orders for i in range(1, orders[r] + 1)]
    R, *gens = ring(names, QQ)
    u = gens[0]
    table = dict(zip(names, gens))
    seqs = {r: [R.one] + [table[f"a{r}{i}"] for i in range(1, n + 1)] for r, n in orders.items()}
    return R, u, seqs


def _trunc(f, n):
    return f.ring({m: c for m, c in f.terms() if m[0] <= n})


def _mean_series(coeffs, lo, hi, n):
    # M(X - T, X + T) = X * sum c_k (T/X)^(2k) with X = (lo+hi)/2 starting at 1
    X = (lo + hi) / 2
    T = (hi - lo) / 2
    e = X - 1
    inv, pw = X.ring.one, X.ring.one
    for _ in range(n):
        pw = _trunc(-pw * e, n)
        inv += pw
    sq = _trunc(_trunc(T * inv, n) ** 2, n)
    out, pw = 0, X.ring.one
    for c in coeffs:
        out += c * pw
        pw = _trunc(pw * sq, n)
    return _trunc(X * out, n)


def _coeff(f, j):
    """Coefficient of u^j as a package Poly."""
    part = f.ring({m: c for m, c in f.terms() if m[0] == j})
    return from_sympy(part.as_expr().subs(sympy.Symbol("u"), 1))


def direct_resultant(K, N, M, u, order):
    """K(N(s, M), N(M, t)) at s = 1-u, t = 1+u as a truncated series in u."""
    n = 2 * order
    m = sum(c * u ** (2 * k) for k, c in enumerate(M))
    n1 = _mean_series(N, 1 - u, m, n)
    n2 = _mean_series(N, m, 1 + u, n)
    r = _mean_series(K, n1, n2, n)
    return [_coeff(r, 2 * k) for k in range(order + 1)]


def test_resultant_against_direct_composition():
    _, u, seqs = _ring({"K": 3, "N": 3, "M": 3})
    ours = resultant_coeffs(generic_coeffs("aK", 3), generic_coeffs("aN", 3),
                            generic_coeffs("aM", 3), 3)
    direct = direct_resultant(seqs["K"], seqs["N"], seqs["M"], u, 3)
    for mine, theirs in zip(ours.coeffs, direct):
        assert mine == theirs


def test_d_s_sequences():
    ds = d_s_seqs(generic_coeffs("aN", 3), generic_coeffs("aM", 3), 3)
    assert ds.d[0] == F(1, 2) and ds.s[0] == 1
    ds = d_s_seqs(ZERO, ZERO, 4)
    assert ds.d == (F(1, 2), 0, 0, 0, 0)
    assert ds.s == (1, 0, 0, 0, 0)
    with pytest.raises(InsufficientOrder):
        d_s_seqs(ZERO.truncate(1), ZERO, 3)


def test_d_s_first_order_by_substitution():
    # N(1-u, M) and N(M, 1+u): X = (N1+N2)/2 = sum s_m u^2m, T = (N2-N1)/2 = u sum d_m u^2m
    _, u, seqs = _ring({"N": 2, "M": 2})
    m = sum(c * u ** (2 * k) for k, c in enumerate(seqs["M"]))
    n1 = _mean_series(seqs["N"], 1 - u, m, 5)
    n2 = _mean_series(seqs["N"], m, 1 + u, 5)
    X = (n1 + n2) / 2
    T = (n2 - n1) / 2
    ds = d_s_seqs(generic_coeffs("aN", 2), generic_coeffs("aM", 2), 2)
    for k in range(3):
        assert ds.s[k] == _coeff(X, 2 * k)
        assert ds.d[k] == _coeff(T, 2 * k + 1)


def test_stable_examples():
    s = stable_coeffs(a1, 3)
    assert s[2] == a1 * (1 + a1) * (1 - 4 * a1) / 6
    assert s[3] == a1 * (1 + a1) * (6 - 31 * a1 + 36 * a1**2 + 64 * a1**3) / 90
    assert stable_coeffs(F(0), 6).rationals() == (1, 0, 0, 0, 0, 0, 0)
    assert stable_coeffs(F(-1, 2), 5).rationals() == (
        1, F(-1, 2), F(-1, 8), F(-1, 16), F(-5, 128), F(-7, 256))


def test_stabilizable_lists():
    K, M = generic_coeffs("aK", 3), generic_coeffs("aM", 3)
    n = stabilizable_coeffs(K, M, 3)
    names = dict(K1="aK1", K2="aK2", K3="aK3", M1="aM1", M2="aM2", M3="aM3")
    assert n[1] == typed_poly("(K1 + 2*M1)/3", **names)
    assert n[2] == typed_poly(
        "(-2*K1*(6*M1+5)*M1 - K1**2*(8*M1+3) + K1 + 3*K2 + 8*M1**3 + 4*M1**2"
        " + 2*M1 + 24*M2)/45", **names)
    assert n[3] == typed_poly(
        "(K1**3*(8*M1*(26*M1+23)+41) + 2*K1**2*(M1*(4*M1*(40*M1+81)+61) - 5*(48*M2+7))"
        " - K1*(18*K2*(16*M1+7) + 408*M2 + 16*M1*(2*M1*(M1*(3*M1-7)-1) + 54*M2 + 11) - 21)"
        " - 6*K2*(M1*(68*M1+71) - 3) + 45*K3"
        " + 6*M1*(32*M1**4 - 12*M1**2 + 16*(16*M1+7)*M2 + 7) + 144*(M2 + 10*M3))/2835",
        **names)


def test_stabilizable_examples():
    lg = stabilizable_coeffs(ZERO, stable_coeffs(F(-1, 2), 6), 6)
    assert lg[1] == F(-1, 3) and lg[2] == F(-4, 45)
    assert lg.rationals() == exact_coeffs(parse_mean_spec("logarithmic"), 6).rationals()
    bp, bq = stable_coeffs((p - 1) / 2, 2), stable_coeffs((q - 1) / 2, 2)
    n = stabilizable_coeffs(bp, bq, 2)
    assert n[1] == (p + 2 * q - 3) / 6
    assert n[2] == typed_poly(
        "(-45 - 2*p**3 + p**2*(5-8*q) + 2*p*(5+2*(5-3*q)*q) + 4*q*(5+(5-2*q)*q))/360",
        p="p", q="q")


def test_stabilized_lists():
    K, N = generic_coeffs("aK", 2), generic_coeffs("aN", 2)
    assert stabilized_coeffs(K, N, 2)[1] == (K[1] + N[1]) / 2
    k, n = symbols("k n")
    m = stabilized_coeffs(stable_coeffs(k, 3), stable_coeffs(n, 3), 3)
    names = dict(K="k", N="n")
    assert m[2] == typed_poly(
        "(-4*K**3 - 9*K**2*(1+2*N) + K*(1-6*N*(3+2*N)) + N*(7+N*(3+2*N)))/48", **names)
    assert m[3] == typed_poly(
        "(64*K**5 + 20*K**4*(17+30*N) + 5*K**3*(73+36*N*(10+7*N))"
        " + 5*K**2*(-17+3*N*(45+44*N*(3+N)))"
        " - 3*K*(-2+5*N*(38+N*(19+4*N*(4+5*N))))"
        " - N*(-186+N*(145+N*(595+4*N*(170+59*N)))))/2880", **names)


def test_stabilized_examples():
    ag = stabilized_coeffs(ZERO, stable_coeffs(F(-1, 2), 6), 6)
    assert ag[1] == F(-1, 4)
    assert ag.rationals() == exact_coeffs(parse_mean_spec("power:1/2"), 6).rationals()
    m = stabilized_coeffs(stable_coeffs((p - 1) / 2, 2), stable_coeffs((q - 1) / 2, 2), 2)
    assert m[1] == (p + q - 2) / 4
    assert m[2] == typed_poly(
        "(-24 - 2*p**3 + p**2*(6-9*q) + q*(2+q)*(4+q) + p*(8-6*(-2+q)*q))/192", p="p", q="q")


def test_heron_is_not_the_stabilized_mean():
    ag = stabilized_coeffs(ZERO, stable_coeffs(F(-1, 2), 2), 2)
    assert exact_coeffs(parse_mean_spec("heron"), 2)[1] == F(-1, 6) != ag[1]


def test_shifted_examples():
    s, t = symbols("s t")
    a = generic_coeffs("a", 3)
    sh = shifted_coeffs(a, 6)
    assert sh[0] == 1
    assert sh[1] == (s + t) / 2
    assert sh[2] == a[1] * (s - t) ** 2 / 4
    for m, c in enumerate(sh):
        val = c.subs({"s": -t}) if hasattr(c, "subs") else c
        assert val == (a[m // 2] * t**m if m % 2 == 0 else 0)


def test_shifted_numeric():
    g = exact_coeffs(parse_mean_spec("geometric"), 6)
    sh = shifted_coeffs(g, 12)
    x, s, t = mpmath.mpf(1000), mpmath.mpf(-3), mpmath.mpf(5)
    with mpmath.workprec(200):
        total = 0
        for m, c in enumerate(sh):
            v = poly_eval(c, {"s": -3, "t": 5}) if hasattr(c, "terms") else c
            total += mpmath.mpf(v.numerator) / v.denominator * x ** (1 - m)
        exact = mpmath.sqrt((x + s) * (x + t))
        assert abs(total - exact) < mpmath.mpf(10) ** -25


def test_expansion_eval():
    assert expansion_eval(ZERO, 7, 2, 4) == 7
    g = exact_coeffs(parse_mean_spec("geometric"), 4)
    with mpmath.workprec(128):
        val = expansion_eval(g, 100, 1, 4)
        assert abs(val / mpmath.sqrt(9999) - 1) < mpmath.mpf(10) ** -16
    P = exact_coeffs(parse_mean_spec("seiffert1"), 3)
    with mpmath.workprec(256):
        val = expansion_eval(P, 10**4, 1, 3)
        exact = mean_eval(parse_mean_spec("seiffert1"), 10**4 - 1, 10**4 + 1, 256)
        assert abs(val - exact) < mpmath.mpf(10) ** -25
    assert expansion_eval(g, 5, 0, 4) == 5
    with pytest.raises(SymbolicCoefficient):
        expansion_eval(stable_coeffs(a1, 2), 10, 1, 2)


rats = st.fractions(min_value=-2, max_value=2, max_denominator=9)


def test_stable_fixed_point_symbolic():
    s = stable_coeffs(a1, 8)
    assert resultant_coeffs(s, s, s, 8) == s


@settings(max_examples=10, deadline=None)
@given(rats)
def test_stable_fixed_point(x):
    s = stable_coeffs(x, 12)
    assert resultant_coeffs(s, s, s, 12).coeffs == s.coeffs


@settings(max_examples=8, deadline=None)
@given(rats, rats)
def test_stabilizable_and_stabilized_fixed_points(x, y):
    K, M = stable_coeffs(x, 8), stable_coeffs(y, 8)
    N = stabilizable_coeffs(K, M, 8)
    assert resultant_coeffs(K, N, M, 8).coeffs == N.coeffs
    Ms = stabilized_coeffs(K, M, 8)
    assert resultant_coeffs(K, M, Ms, 8).coeffs == Ms.coeffs


def test_power_means_are_stable():
    for r in (F(-3), F(-1), F(0), F(1, 2), F(1), F(2), F(3)):
        ex = exact_coeffs(parse_mean_spec(f"power:{r}"), 10)
        assert ex.coeffs == stable_coeffs((r - 1) / 2, 10).coeffs
