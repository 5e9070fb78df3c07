# The (3,4) torus knot, one parameter at a time.
#
# Five generators a..e in a staircase.  For each t the complex gets a single
# filtration, levels (t/2) j + (1 - t/2) i, and column reduction pairs each
# torsion class with the chain that kills it.

from fractions import Fraction as F

from upsilontor import level_of_monomial, reduce, torus_knot_staircase, upsilon_tor_at

c = torus_knot_staircase(3, 4)
for g in c.generators:
    print(g.id, (g.i, g.j), "grading", g.maslov)

for t in (F(1, 2), F(6, 7)):
    print()
    print("t =", t)
    print("  levels:", [str(level_of_monomial(t, g)) for g in c.generators])
    b = reduce(c, t)
    for bar in b.finite_bars:
        ys, xs = bar.representative
        print(f"  bar {bar.birth} -> {bar.death}  length {bar.length}"
              f"  Y={[g for g, _ in ys]}  X={[g for g, _ in xs]}")
    print("  free class born at", b.infinite_birth)
    # twice the longest bar
    print("  UpsilonTor =", upsilon_tor_at(c, t))

# bar endpoints are shown modulo U, which lowers every level by 1.
# at 1/2 the two bars are 1/2 and 1/4; by 6/7 they have grown to 4/7 and 3/7
