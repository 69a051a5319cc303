"""Why P, T and NS are not stabilizable by stable means, and how close power means get.

    python demos/seiffert_substab.py
"""

from stabmeans.analysis import stabilizable_disproof, substab_optimize
from stabmeans.render import render

for target in ("seiffert1", "seiffert2", "ns"):
    print(render(stabilizable_disproof(target, 3)))
    print()

# the logarithmic mean passes the same test, with (A, G) and (H, A) among the survivors
print(render(stabilizable_disproof("logarithmic", 3)))
print()

for target in ("seiffert1", "ns", "seiffert2"):
    print(render(substab_optimize(target, 3)))
    print()
