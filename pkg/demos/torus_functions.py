# Whole functions on [0, 2] for a few torus knots, plus a CSV for plotting.

import sys
from fractions import Fraction as F

from upsilontor import ord_u, ord_v, torus_knot_staircase, upsilon_tor_function
from upsilontor.io import plot_csv
from upsilontor.upsilon import small_t_threshold

for p, q in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (5, 6)]:
    c = torus_knot_staircase(p, q)
    f = upsilon_tor_function(c)
    pts = ", ".join(f"({t}, {v})" for t, v in f.points())
    print(f"T({p},{q}): {len(c)} generators")
    print(f"   corners {pts}")
    print(f"   Ord_v = {ord_v(c, f)}  Ord_U = {ord_u(c)}"
          f"  linear up to t = {small_t_threshold(f)}")

# Ord_v can coincide while the functions differ
f11 = upsilon_tor_function(torus_knot_staircase(9, 11))
f13 = upsilon_tor_function(torus_knot_staircase(9, 13))
print()
print("T(9,11) and T(9,13) share Ord_v =", f11.initial_slope(), f13.initial_slope())
print("but at t = 2/5:", f11(F(2, 5)), "vs", f13(F(2, 5)))

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(plot_csv(f11, 401))
    print("wrote", sys.argv[1])
