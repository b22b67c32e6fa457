"""
Global invariants of C2 acting on the 2-sphere
"""

from pathlib import Path

from eqobs import load_variety
from eqobs.burnside import reduce_count
from eqobs.globalcalc import (chi_G, global_obstruction, orbit_level_obstruction, poincare_hopf_check,
                              synthesize_form_data)

DATA = Path(__file__).parent / "data"

for name in ("antipodal_s2", "rotation_s2"):
    V, form = load_variety(DATA / f"{name}.json")
    print("##", name)
    chi = chi_G(V)
    print("chi_G =", chi, " chi =", reduce_count(chi))
    print("global obstruction =", global_obstruction(V))
    print("from the singular orbits:", orbit_level_obstruction(V, form))
    rep = poincare_hopf_check(V, form)
    print("Poincare-Hopf:", rep.lhs, "=", rep.rhs, rep.equal)

## Any form data with the right index sums gives the same answer
V, _ = load_variety(DATA / "rotation_s2.json")
for seed in range(3):
    form = synthesize_form_data(V, seed)
    print([(r.stratum, [o.index for o in r.orbits]) for r in form.records], orbit_level_obstruction(V, form))
