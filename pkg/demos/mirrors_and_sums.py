# Mirror images and connected sums through the expression language.

from fractions import Fraction as F

from upsilontor import build, parity_functions, parse, upsilon_tor_function
from upsilontor.dsl import to_text

for text in ["torus(2,3)", "mirror(torus(2,3))", "sum(torus(2,3), mirror(torus(2,3)))",
             "sum(torus(3,4), torus(2,5))", "sum(torus(3,4), mirror(torus(2,5)))"]:
    e = parse(text)
    c = build(e)
    f = upsilon_tor_function(c)
    p = parity_functions(c)
    print(to_text(e))
    print(f"   {len(c)} generators, value at 1/2 = {f(F(1, 2))}, at 1 = {f(1)}")
    print(f"   even part at 1 = {p.even(1)}, odd part at 1 = {p.odd(1)}")

# the mirror keeps the function but moves torsion to the other parity;
# a sum takes the pointwise max, so K # -K looks just like K here
