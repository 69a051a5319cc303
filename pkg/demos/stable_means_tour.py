"""Stable means from their first coefficient alone.

Builds the symbolic stable expansion, checks that power means follow it,
and shows that the resultant map fixes a stable sequence.

    python demos/stable_means_tour.py
"""

from fractions import Fraction

from stabmeans import exact_coeffs, parse_mean_spec, resultant_coeffs, stable_coeffs, symbols
from stabmeans.render import render

a1 = symbols("a1")

print("Stable expansion with a free first coefficient:")
print(render(stable_coeffs(a1, 3), "latex"))
print()

# power means B_r have a_1 = (r - 1)/2 and nothing else to choose
for r in ("-1", "0", "1/2", "2"):
    spec = parse_mean_spec(f"power:{r}")
    exact = exact_coeffs(spec, 6)
    guess = stable_coeffs((Fraction(r) - 1) / 2, 6)
    print(f"B_{r:>4}: {render(exact)}  stable form: {exact.coeffs == guess.coeffs}")
print()

# Seiffert's P is not stable: a_2 already disagrees
P = exact_coeffs(parse_mean_spec("P"), 4)
S = stable_coeffs(P[1], 4)
print("P          ", render(P))
print("stable, same a_1", render(S))
print()

S = stable_coeffs(Fraction(-1, 2), 8)
print("R(G, G, G) == G to order 8:", resultant_coeffs(S, S, S, 8).coeffs == S.coeffs)
