"""
A monomial basis for G36 and G37
================================

Five families of monomials, 64 + 4 + 32 + 36 + 48 of them at s = 2.  They
are independent in the quotient, so they form a basis.
"""
from morava.grobner import buchberger, independent_in_quotient
from morava.presentations import basis_recipe, basis_recipe_sets, presentation, RING

for group in ("g36", "g37"):
    sets = basis_recipe_sets(group, 2)
    print(group, [len(f) for f in sets])
    gb = buchberger(presentation(group, 2).generators)
    print("  independent:", independent_in_quotient(basis_recipe(group, 2), gb))

print("a few members of the fifth family:")
for e in basis_recipe_sets("g36", 2)[4][:4]:
    print("  ", RING.monomial(e))
