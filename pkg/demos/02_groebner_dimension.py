"""
Counting the dimension of K(s)*(BG)
===================================

The relation ideal lives in GF(2)[a, b, c, x1, x2, y1, y2, T].  Its reduced
Groebner basis has finitely many standard monomials; their number is the
dimension, to be compared with 16^s/2 - 4^s/2 + 8^s.
"""
import time

from morava.grobner import buchberger
from morava.presentations import ALL_GROUPS, LEX_QUOTIENT_ORDER, expected_chi, presentation

for group in ALL_GROUPS:
    pres = presentation(group, 2)
    t0 = time.perf_counter()
    gb = buchberger(pres.generators)
    print(f"{group.value}: {len(gb)} basis elements, dimension {gb.dimension()} "
          f"(expected {expected_chi(2)}), {time.perf_counter() - t0:.2f}s")

# one of the crossed relations
print(presentation("g36", 2).ideal[3][1])

# the dimension does not depend on the order
gb = buchberger(presentation("g36", 2).generators, LEX_QUOTIENT_ORDER)
print("lex:", gb.dimension())
print("first lex basis elements:")
for g in gb.basis[:3]:
    print("  ", g)

# pairing x with b (the crossed reading) gives a smaller ring for G34
print("g34 crossed:", buchberger(presentation("g34", 2, "crossed").generators).dimension())
