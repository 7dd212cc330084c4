"""
Euler characteristic from the C2-action
=======================================

K(s)*(BH) splits into f free and tau trivial C2-summands, and
chi = f + 2^s tau.  This uses only linear algebra on the abelian ring, no
Groebner bases.
"""
from morava.abelian import decompose, model_for
from morava.presentations import ALL_GROUPS, expected_chi

for s in (2, 3):
    for group in ALL_GROUPS:
        dec = decompose(model_for(group, s))
        print(f"s={s} {group.value}: dim={dec.dim} f={dec.f} tau={dec.tau} "
              f"chi={dec.chi} expected={expected_chi(s)}")
