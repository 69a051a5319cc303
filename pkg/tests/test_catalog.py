import time
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import typed_poly
from stabmeans.catalog import (
    FAMILIES,
    MeanSpec,
    exact_coeffs,
    exact_coeffs_symbolic,
    mean_eval,
    oracle_coeffs,
    parse_mean_spec,
)
from stabmeans.errors import DomainError, SpecSyntaxError
from stabmeans.exact import symbols
from stabmeans.expansion import stable_coeffs

p, r = symbols("p r")
mp = mpmath.mpf


def spec(text):
    return parse_mean_spec(text)


def test_parse_specs():
    assert spec("power:2") == MeanSpec("power", (F(2),))
    assert spec("gini:1/2,3").params == (F(1, 2), F(3))
    assert spec("stolarsky:1,-1").params == (F(1), F(-1))
    assert spec("genlog:-1").family == "genlog"
    assert spec("ns").family == "neuman_sandor"
    assert str(spec("gini:1/2,3")) == "gini:1/2,3"
    for bad in ("power", "power:1.5", "gini:1", "nosuch", "seiffert1:2", ""):
        with pytest.raises(SpecSyntaxError):
            spec(bad)


def test_eval_examples():
    with mpmath.workprec(128):
        assert abs(mean_eval(spec("power:2"), 3, 4) - mpmath.sqrt(mp(25) / 2)) < mp(10) ** -35
        val = mean_eval(spec("seiffert1"), 99, 101)
        assert abs(val - 1 / mpmath.asin(mp(1) / 100)) < mp(10) ** -33
        assert abs(mean_eval(spec("stolarsky:0,0"), 4, 9) - 6) < mp(10) ** -35
        assert mean_eval(spec("seiffert2"), 5, 5) == 5
    with pytest.raises(DomainError):
        mean_eval(spec("geometric"), -1, 2)
    with pytest.raises(DomainError):
        mean_eval(spec("geometric"), 0, 2)


def test_near_diagonal_matches_closed_form_limit():
    # at u = 1e-40 the closed form cancels badly; the series branch must not
    with mpmath.workprec(256):
        x, t = mp(1), mp(10) ** -40
        for name in ("seiffert1", "seiffert2", "ns", "logarithmic", "identric", "stolarsky:1,3"):
            c = exact_coeffs(spec(name), 2).rationals()
            expect = x + F(c[1]).numerator * t**2 / F(c[1]).denominator
            got = mean_eval(spec(name), x - t, x + t, 256)
            assert abs(got - expect) < mp(10) ** -70


def test_exact_examples():
    pw = exact_coeffs_symbolic("power", 2)
    assert pw[1] == (r - 1) / 2
    assert pw[2] == -(r - 1) * (r + 1) * (2 * r - 3) / 24
    assert exact_coeffs(spec("seiffert1"), 3).rationals() == (1, F(-1, 6), F(-17, 360), F(-367, 15120))
    assert exact_coeffs(spec("ns"), 3).rationals() == (1, F(1, 6), F(-17, 360), F(367, 15120))
    assert exact_coeffs(spec("seiffert2"), 3).rationals() == (1, F(1, 3), F(-4, 45), F(44, 945))
    assert exact_coeffs(spec("logarithmic"), 1)[1] == F(-1, 3)
    assert exact_coeffs(spec("geometric"), 2).rationals() == (1, F(-1, 2), F(-1, 8))


def test_symbolic_families():
    gini = exact_coeffs_symbolic("gini", 2)
    assert gini[1] == (p + r - 1) / 2
    assert gini[2] == typed_poly(
        "(-3 - 2*p**3 + p**2*(3-2*r) + 2*r + (3-2*r)*r**2 + p*(2-2*(-3+r)*r))/24", p="p", r="r")
    sto = exact_coeffs_symbolic("stolarsky", 2)
    assert sto[1] == (p + r - 3) / 6
    assert sto[2] == typed_poly(
        "(-45 - 2*p**3 + p**2*(5-2*r) + r*(10+(5-2*r)*r) - 2*p*(-5+(-5+r)*r))/360",
        p="p", r="r")
    gl = exact_coeffs_symbolic("genlog", 2)
    assert gl[1] == (r - 1) / 6
    assert gl[2] == -(r - 1) * (2 * r**2 + 5 * r - 13) / 360


def test_symbolic_agrees_with_samples():
    sto = exact_coeffs_symbolic("stolarsky", 4)
    for pp, rr in ((F(5, 3), F(-2, 7)), (F(3), F(11, 2))):
        direct = exact_coeffs(MeanSpec("stolarsky", (pp, rr)), 4)
        assert tuple(c.eval({"p": pp, "r": rr}) if hasattr(c, "eval") else c
                     for c in sto.coeffs) == direct.rationals()


def test_oracle_examples():
    a = oracle_coeffs(spec("power:1"), 4, 256)
    assert abs(a[0] - 1) < mp(10) ** -20
    assert all(abs(x) < mp(10) ** -20 for x in a[1:])
    t = oracle_coeffs(spec("seiffert2"), 3, 256)
    for got, want in zip(t, (1, F(1, 3), F(-4, 45), F(44, 945))):
        want = mp(want.numerator) / want.denominator if isinstance(want, F) else mp(want)
        assert abs(got - want) < mp(10) ** -15 * abs(want)
    lg = oracle_coeffs(spec("logarithmic"), 2, 256)
    assert abs(lg[1] + mp(1) / 3) < mp(10) ** -15


@pytest.mark.parametrize("name", ["gini:1,2", "stolarsky:1/2,-2", "genlog:3", "identric",
                                  "harmonic", "heron", "gini:2,2", "stolarsky:2,0"])
def test_triangle(name):
    ex = exact_coeffs(spec(name), 6).rationals()
    with mpmath.workprec(256):
        orc = oracle_coeffs(spec(name), 6, 256)
        for got, want in zip(orc, ex):
            w = mp(want.numerator) / want.denominator
            assert abs(got - w) <= mp(10) ** -12 * max(abs(w), mp(10) ** -30)


def test_power_route_matches_recursion():
    for text in ("power:-2", "power:7/3", "gini:0,5", "gini:3,0"):
        ex = exact_coeffs(spec(text), 8)
        rr = spec(text).params[-1] if spec(text).params[0] == 0 else spec(text).params[0]
        assert ex.coeffs == stable_coeffs((rr - 1) / 2, 8).coeffs


positive = st.fractions(min_value=F(1, 40), max_value=50, max_denominator=40)
families = ["power:3", "power:-1/2", "gini:1,2", "gini:1/2,1/2", "stolarsky:1,3", "stolarsky:0,2",
            "stolarsky:3,3", "genlog:2", "seiffert1", "seiffert2", "ns", "logarithmic",
            "identric", "geometric", "arithmetic", "harmonic", "heron"]


def _val(x):
    return mp(x.numerator) / x.denominator


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(families), positive, positive)
def test_between_min_and_max(name, s, t):
    with mpmath.workprec(128):
        v = mean_eval(spec(name), _val(s), _val(t))
        lo, hi = min(_val(s), _val(t)), max(_val(s), _val(t))
        slack = mp(2) ** -100 * hi
        assert lo - slack <= v <= hi + slack


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(families), positive, positive, st.sampled_from([F(1, 3), F(2), F(10)]))
def test_symmetry_and_homogeneity(name, s, t, lam):
    with mpmath.workprec(128):
        s, t, lam = _val(s), _val(t), _val(lam)
        v = mean_eval(spec(name), s, t)
        assert abs(v - mean_eval(spec(name), t, s)) <= mp(2) ** -100 * v
        assert abs(mean_eval(spec(name), lam * s, lam * t) - lam * v) <= mp(2) ** -100 * lam * v


@pytest.mark.parametrize("left,right", [
    ("gini:0,3/2", "power:3/2"), ("gini:2,0", "power:2"),
    ("stolarsky:4,2", "power:2"), ("stolarsky:-1,-2", "power:-1"),
    ("stolarsky:3/2,3", "power:3/2"), ("stolarsky:2,-2", "geometric"),
    ("genlog:-1", "logarithmic"), ("genlog:0", "identric"), ("genlog:-2", "geometric"),
    ("genlog:-1/2", "power:1/2"), ("stolarsky:1,0", "logarithmic"), ("stolarsky:1,1", "identric"),
])
def test_embeddings(left, right):
    with mpmath.workprec(128):
        for s, t in ((1, 2), (3, 7), (1, 100)):
            a = mean_eval(spec(left), s, t)
            b = mean_eval(spec(right), s, t)
            assert abs(a - b) <= mp(2) ** -110 * b


def test_oracle_runtime_is_small():
    start = time.perf_counter()
    oracle_coeffs(spec("ns"), 6, 256)
    assert time.perf_counter() - start < 5


def test_all_families_parse_and_expand():
    for fam, arity in FAMILIES.items():
        params = ",".join(["3"] * arity if fam != "stolarsky" else ["3", "1"])
        text = f"{fam}:{params}" if arity else fam
        assert exact_coeffs(spec(text), 3)[0] == 1
