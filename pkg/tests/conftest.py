import sympy

from stabmeans.exact import parse_poly


def from_sympy(expr):
    """Convert an expanded sympy expression to a Poly or Fraction."""
    return parse_poly(str(sympy.expand(expr)))


def typed_poly(text, **names):
    """Parse a hand-typed display with sympy, then convert."""
    return from_sympy(sympy.sympify(text, locals={k: sympy.Symbol(v) for k, v in names.items()}))
