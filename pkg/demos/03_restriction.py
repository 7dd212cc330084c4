"""
Restricting relations to the abelian subgroup
=============================================

Every relation must map to zero in K(s)*(BH).  For G36 the ring is
F2[u, v, m]/(u^4, v^16, m^4) at s = 2.
"""
from morava.abelian import model_for, verify_restrictions
from morava.presentations import presentation

model = model_for("g36", 2)
print(model.ring)
for name in ("a", "x1", "x2", "T"):
    print(f"rho*({name}) =", model.rho[name])

print("t(u) =", model.t["u"])

report = verify_restrictions(model, presentation("g36", 2))
print(report.to_text())

# with the crossed pairing four G34 relations survive, in low degree
bad = verify_restrictions(model_for("g34", 2), presentation("g34", 2, "crossed"))
for check in bad.failures():
    print(check.name, "->", check.witness, f"({check.detail})")
