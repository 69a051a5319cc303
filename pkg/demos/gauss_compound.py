"""Functional equations checked numerically, and Gauss compound means.

    python demos/gauss_compound.py
"""

import mpmath

from stabmeans.analysis import compound_mean, functional_eq_residual

cases = [
    ("L = R(A, L, G)", ("A", "L", "G", "stabilizable")),
    ("L = R(H, L, A)", ("H", "L", "A", "stabilizable")),
    ("G = R(A, H, G)", ("A", "H", "G", "stabilized")),
    ("B_{1/2} = R(A, G, B_{1/2})", ("A", "G", "power:1/2", "stabilized")),
]
for label, (k, n, m, rel) in cases:
    res = functional_eq_residual(k, n, m, rel, precision=128)
    print(f"{label:28s} max relative residual {mpmath.nstr(res, 3)}")

# Heron's mean has a_1 = -1/6, not -1/4, so (A, G) does not stabilize it
res = functional_eq_residual("A", "G", "heron", "stabilized", precision=128)
print(f"{'He = R(A, G, He) fails':28s} max relative residual {mpmath.nstr(res, 3)}")
print()

print("A (x) H at (1, 4):", mpmath.nstr(compound_mean("A", "H", 1, 4, precision=128), 30))
print("A (x) G at (1, 2):", mpmath.nstr(compound_mean("A", "G", 1, 2, precision=192), 45))
with mpmath.workdps(50):
    print("mpmath.agm(1, 2): ", mpmath.nstr(mpmath.agm(1, 2), 45))
