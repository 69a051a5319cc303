"""Analyses built on finitely many expansion coefficients.

Every verdict here compares finitely many coefficients, so it is a
necessary condition only: a family failing a condition is certainly not
stable (stabilizable, ...), one passing it is merely not ruled out.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence

import mpmath

from ..catalog import MeanSpec, exact_coeffs, exact_coeffs_symbolic, parse_mean_spec
from ..errors import OrderTooLow, SymbolicCoefficient, SymbolicUndecidable
from ..exact import Poly, as_scalar, symbols
from ..expansion import (
    MeanCoeffs,
    resultant_coeffs,
    stabilizable_coeffs,
    stabilized_coeffs,
    stable_coeffs,
)
from .algebra import QuadraticSurd, RootOf, factor_linear, real_roots, value_at_root
from .reports import (
    AsymCompareResult,
    Condition,
    DisproofReport,
    Residual,
    SimultaneousReport,
    Solution,
    StabilityReport,
    SubStabReport,
)

__all__ = [
    "asym_compare",
    "stability_conditions",
    "is_stable",
    "StabilityCheck",
    "stabilizable_disproof",
    "substab_optimize",
    "simultaneous_conditions",
    "power_coeffs",
]

NECESSARY = "necessary condition only: finitely many coefficients were compared"


def _spec(spec) -> MeanSpec:
    return parse_mean_spec(spec) if isinstance(spec, str) else spec


def _details(**kw) -> tuple:
    return tuple(sorted((k, str(v)) for k, v in kw.items()))


def _sign(v) -> int:
    if isinstance(v, (QuadraticSurd, RootOf)):
        return v.sign()
    if isinstance(v, Poly):
        if not v.is_constant():
            raise SymbolicUndecidable(f"sign of {v} depends on its variables")
        v = v.constant_value()
    v = Fraction(v) if not hasattr(v, "sign") else v
    return (v > 0) - (v < 0)


def _coeff_list(a):
    if isinstance(a, MeanCoeffs):
        return list(a.coeffs)
    return list(a)


def asym_compare(a, b, order: int, left: str = "", right: str = "") -> AsymCompareResult:
    """Sign of the first nonzero coefficient of ``a - b`` up to ``order``.

    Coefficients may be Fractions, constant Polys or quadratic surds.  The
    verdict is ``asym_greater`` when that coefficient is positive: a
    necessary condition for ``a >= b`` near the diagonal.
    """
    a = _coeff_list(a)
    b = _coeff_list(b)
    if len(a) <= order or len(b) <= order:
        raise ValueError(f"need coefficients up to index {order}")
    for m in range(order + 1):
        diff = a[m] - b[m]
        if isinstance(diff, Poly) and not diff.is_constant():
            raise SymbolicUndecidable(
                f"coefficient {m} of the difference is {diff}, not a number")
        s = _sign(diff)
        if s:
            verdict = "asym_greater" if s > 0 else "asym_less"
            value = diff.constant_value() if isinstance(diff, Poly) else diff
            return AsymCompareResult(verdict, m, value, order, left, right)
    return AsymCompareResult("equal_to_order", None, Fraction(0), order, left, right)


# -- stability of parametric families ---------------------------------------


def stability_conditions(family: str, orders: Sequence[int] = (2,)) -> StabilityReport:
    """Conditions ``C_m = a_m(family) - a_m(stable mean with the same a_1)``.

    Each ``C_m`` is a polynomial in the family parameters; the lowest one
    is split into linear factors, whose zero sets are the only candidates
    for stability.
    """
    family = {"L": "genlog"}.get(family, family)
    top = max(orders)
    sym = exact_coeffs_symbolic(family, top)
    st = stable_coeffs(sym[1], top)
    conditions = []
    for m in sorted(orders):
        c = sym[m] - st[m]
        fac = factor_linear(c) if m == min(orders) else None
        conditions.append(Condition(m, c, fac))
    first = conditions[0]
    solutions = []
    if isinstance(first.polynomial, Poly) and len(first.polynomial.support()) == 1:
        var = first.polynomial.support()[0]
        for r, _ in real_roots(first.polynomial.univariate(var)):
            solutions.append(Solution(((var, r),), "root of the lowest condition"))
    fac = first.factorization
    verdict = "stable_candidates" if fac and fac.factors else "no_stable_members"
    return StabilityReport(
        family, verdict, tuple(conditions), tuple(solutions), (),
        _details(a1=sym[1], family=family), (NECESSARY,))


class StabilityCheck(NamedTuple):
    stable: bool
    first_failure: Optional[int]


def is_stable(spec, order: int) -> StabilityCheck:
    """Compare a mean's coefficients with the stable ones sharing its ``a_1``."""
    if order < 2:
        raise OrderTooLow("stability is decided from index 2 on")
    a = exact_coeffs(_spec(spec), order)
    st = stable_coeffs(a[1], order)
    for m in range(2, order + 1):
        if a[m] != st[m]:
            return StabilityCheck(False, m)
    return StabilityCheck(True, None)


# -- stabilizability disproof ------------------------------------------------


def _univariate(p, name: str) -> List[Fraction]:
    p = as_scalar(p)
    if isinstance(p, Poly):
        return p.univariate(name)
    return [p]


def _check_roots(eqs, start: int, var: str, roots, solution_of):
    """Evaluate equations ``eqs[start:]`` exactly at each root.

    Returns per-root ``(solution, first failing order or None, value)``.
    """
    out = []
    for root, minpoly in roots:
        fail, value = None, Fraction(0)
        for m in range(start, len(eqs)):
            v = value_at_root(_univariate(eqs[m], var), root, minpoly)
            if _nonzero(v):
                fail, value = m, v
                break
        out.append((solution_of(root), fail, value))
    return out


def _nonzero(v) -> bool:
    if isinstance(v, (Fraction, int, QuadraticSurd)):
        return bool(v)
    # numeric value at a RootOf
    return abs(v) > 10 ** -40


def stabilizable_disproof(target, order: int = 3) -> DisproofReport:
    """Test whether ``target`` can be ``(K, M)``-stabilizable for stable K, M.

    With ``u = a_1^K`` and ``v = a_1^M`` the stabilizable coefficients are
    polynomials in ``(u, v)``.  Order 1 fixes ``u`` linearly in ``v``,
    order 2 leaves a polynomial in ``v`` whose real roots are tried exactly
    against the higher orders.
    """
    if order < 3:
        raise OrderTooLow("a disproof needs at least order 3")
    spec = _spec(target)
    a = exact_coeffs(spec, order)
    u, v = symbols("u v")
    n = stabilizable_coeffs(stable_coeffs(u, order), stable_coeffs(v, order), order)
    eqs = [n[m] - a[m] for m in range(order + 1)]
    lin = eqs[1].coefficients_in("u")
    u_of_v = -lin[0] / lin[1].constant_value()
    reduced = [as_scalar(e.subs({"u": u_of_v})) if isinstance(e, Poly) else e for e in eqs]
    conditions = [Condition(1, eqs[1], factor_linear(eqs[1]))]
    first = next((m for m in range(2, order + 1) if reduced[m]), None)
    if first is None:
        return DisproofReport(
            str(spec), "underdetermined", tuple(conditions), (), (),
            _details(u=u_of_v), (NECESSARY,))
    for m in range(2, order + 1):
        conditions.append(Condition(m, reduced[m],
                                    factor_linear(reduced[m]) if m == first else None))
    roots = real_roots(_univariate(reduced[first], "v"))

    def solution_of(root):
        return Solution((("u", _lin_at(u_of_v, "v", root)), ("v", root)), _kind(root))


    checked = _check_roots(reduced, first + 1, "v", roots, solution_of)
    solutions, residuals, survivors = [], [], 0
    for i, (sol, fail, value) in enumerate(checked):
        solutions.append(sol)
        if fail is None:
            survivors += 1
            residuals.append(Residual(order, Fraction(0), i))
        else:
            residuals.append(Residual(fail, value, i))
    verdict = "candidates_survive" if survivors else "inconsistent"
    return DisproofReport(
        str(spec), verdict, tuple(conditions), tuple(solutions), tuple(residuals),
        _details(u=u_of_v, survivors=survivors), (NECESSARY,))


# -- sub-stabilizability with power means -------------------------------------


def power_coeffs(name: str, order: int) -> MeanCoeffs:
    """Power mean ``B_<name>`` coefficients as polynomials in ``name``."""
    return exact_coeffs_symbolic("power", order).subs({"r": Poly.var(name)})


def _quadratic_constraint(coeffs: Sequence[Fraction], var: str) -> str:
    # c2 q^2 + c1 q + c0 >= 0  <=>  |2 a q + b| >= sqrt(disc) for a > 0 (integer form)
    from .algebra import _integer_coeffs
    c, b, a = _integer_coeffs(list(coeffs))
    if a < 0:
        a, b, c = -a, -b, -c
        rel = "<="
    else:
        rel = ">="
    disc = b * b - 4 * a * c
    lhs = f"{2 * a}{var}" if b == 0 else f"{2 * a}{var} {'-' if b < 0 else '+'} {abs(b)}"
    return f"|{lhs}| {rel} sqrt({disc})" if disc >= 0 else "holds for every real value"


def substab_optimize(target, order: int = 3, sweep: bool = True,
                     precision: int = 96) -> SubStabReport:
    """Best ``(p, q)`` for ``target`` against ``(B_p, B_q)``-stabilizable means.

    The difference ``target - N`` with ``N`` the ``(B_p, B_q)``-stabilizable
    mean (whose coefficients are those of ``R(B_p, N, B_q)``) is made to
    vanish at orders 1 and 2; the first surviving coefficient decides the
    asymptotic verdict at each optimum.

    With ``sweep`` the difference ``target - R(B_p, target, B_q)`` is also
    sampled on ``(s, 1-s)``.  An optimum whose sampled difference goes
    negative is discarded; if none is left the verdict is
    ``no_double_zero`` and the report carries the region where the
    order-2 coefficient is nonnegative instead.
    """
    if order < 3:
        raise OrderTooLow("the optimization needs at least order 3")
    spec = _spec(target)
    a = exact_coeffs(spec, order)
    kp = power_coeffs("p", order)
    mq = power_coeffs("q", order)
    n = stabilizable_coeffs(kp, mq, order)
    diff = [a[m] - n[m] for m in range(order + 1)]
    lin = diff[1].coefficients_in("p")
    p_of_q = as_scalar(-lin[0] / lin[1].constant_value())
    reduced = [as_scalar(d.subs({"p": p_of_q})) if isinstance(d, Poly) else d for d in diff]
    conditions = [Condition(1, diff[1], factor_linear(diff[1]))]
    for m in range(2, order + 1):
        conditions.append(Condition(m, reduced[m], factor_linear(reduced[m]) if m == 2 else None))
    sym = spec.symbol
    q2 = _univariate(reduced[2], "q")
    roots = real_roots(q2)

    solutions, residuals, verdicts = [], [], []
    for i, (root, minpoly) in enumerate(roots):
        solutions.append(Solution((("p", _lin_at(p_of_q, "q", root)), ("q", root)), _kind(root)))
        seq = [value_at_root(_univariate(reduced[m], "q"), root, minpoly)
               for m in range(order + 1)]
        res = asym_compare(seq, [0] * (order + 1), order)
        verdicts.append(res.verdict)
        residuals.append(Residual(res.first_nonzero_index if res.first_nonzero_index is not None
                                  else order, res.first_nonzero_value, i))
    details = dict(p=p_of_q, target=sym,
                   relation=f"{sym} - R(B_p,{sym},B_q)")
    notes = [NECESSARY]
    usable = [v == "asym_greater" for v in verdicts]
    if sweep:
        from .numeric import substab_sweep
        floor = -mpmath.mpf(2) ** (24 - precision)
        for i, sol in enumerate(solutions):
            low, at = substab_sweep(spec, sol.get("p"), sol.get("q"), precision)
            details[f"sweep_min_{i}"] = mpmath.nstr(low, 8)
            details[f"sweep_argmin_{i}"] = mpmath.nstr(at, 8)
            if low < floor:
                usable[i] = False
        notes.append("sweep: numeric samples of the difference on (s, 1-s), evidence only")
    if roots and any(usable) and all(v == "asym_greater" for v in verdicts):
        verdict = "asym_greater"
    else:
        verdict = "no_double_zero"
        details["constraint"] = _quadratic_constraint(q2, "q") if len(q2) == 3 else ""
        notes.append("with only the order-1 coefficient removed, the order-2 coefficient "
                     "must be nonnegative")
    return SubStabReport(str(spec), verdict, tuple(conditions), tuple(solutions),
                         tuple(residuals), _details(**details), tuple(notes))


def _kind(root) -> str:
    if isinstance(root, Fraction):
        return "rational"
    return "quadratic surd" if isinstance(root, QuadraticSurd) else "numeric root"


def _lin_at(expr, var: str, root):
    """Value of ``c0 + c1*var`` at a root (an mpf for numeric roots)."""
    c = _univariate(expr, var) + [Fraction(0), Fraction(0)]
    x = root.to_mpf() if isinstance(root, RootOf) else root
    return c[0] + c[1] * x


# -- simultaneous stabilizability / stabilization -----------------------------

CASES = ("stabilizable_swap", "stabilized_swap", "stabilizable_and_stabilized")


def simultaneous_conditions(case: str, order: int = 3) -> SimultaneousReport:
    """Necessary conditions for two fixed-point problems to share a solution.

    ``stabilizable_swap``: N is (K,M)- and (M,K)-stabilizable;
    ``stabilized_swap``: M is (K,N)- and (N,K)-stabilized;
    ``stabilizable_and_stabilized``: M is (K,N)-stabilizable and (K,N)-stabilized.
    K, M, N are stable, parametrized by ``k``, ``m``, ``n`` (their ``a_1``).
    """
    if case not in CASES:
        raise ValueError(f"case must be one of {CASES}")
    if order < 3:
        raise OrderTooLow("simultaneous conditions need order >= 3")
    k, m, n = symbols("k m n")
    sk = stable_coeffs(k, order)
    if case == "stabilizable_swap":
        other = stable_coeffs(m, order)
        first = stabilizable_coeffs(sk, other, order)
        second = stabilizable_coeffs(other, sk, order)
        var = "m"
    else:
        other = stable_coeffs(n, order)
        first = stabilized_coeffs(sk, other, order)
        if case == "stabilized_swap":
            second = stabilized_coeffs(other, sk, order)
        else:
            second = stabilizable_coeffs(sk, other, order)
        var = "n"
    diffs = [first[i] - second[i] for i in range(order + 1)]
    lowest = next((i for i in range(1, order + 1) if diffs[i]), None)
    conditions = []
    for i in range(1, order + 1):
        if diffs[i]:
            conditions.append(Condition(i, diffs[i], factor_linear(diffs[i]) if i == lowest else None))
    branches = []
    solutions = []
    residuals = []
    if lowest is not None:
        fac = conditions[0].factorization
        for f, _ in fac.factors:
            branches.append(f)
    # follow each branch: k = <other> or any linear relation solved for k
    for idx, f in enumerate(branches):
        ck = f.coefficients_in("k")
        if len(ck) < 2:
            continue
        k_val = as_scalar(-ck[0] / ck[1].constant_value())
        coeffs = [as_scalar(c.subs({"k": k_val})) if isinstance(c, Poly) else c for c in first]
        solutions.append(Solution((("k", k_val),), f"branch {f} = 0"))
        for i in range(1, order + 1):
            residuals.append(Residual(i, coeffs[i], idx))
    return SimultaneousReport(case, "conditions_found" if conditions else "no_conditions",
                              tuple(conditions), tuple(solutions), tuple(residuals),
                              _details(other=var), (NECESSARY,))


def stable_form_check(coeffs: Sequence, var: str, upto: int) -> bool:
    """Whether ``coeffs[2..upto]`` are the stable-mean polynomials in ``var``."""
    st = stable_coeffs(Poly.var(var), upto)
    return all(coeffs[i] == st[i] for i in range(2, upto + 1))


def resultant_difference(target, k_coeffs, m_coeffs, order: int):
    """Coefficients of ``target - R(K, target, M)`` (the literal resultant).

    ``target`` is a MeanSpec, a spec string or a coefficient list.
    """
    a = target if isinstance(target, MeanCoeffs) else exact_coeffs(_spec(target), order)
    r = resultant_coeffs(k_coeffs, a, m_coeffs, order)
    return [a[i] - r[i] for i in range(order + 1)]
