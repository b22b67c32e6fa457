"""
Equivariant Euler obstruction and radial index of a 1-form on a C2-curve germ
"""

from pathlib import Path

from eqobs import eq_euler_obstruction, eq_radial_index, load_germ, verify_theorem
from eqobs.burnside import reduce_count
from eqobs.local import germ_obstruction

DATA = Path(__file__).parent / "data"

## A curve with a C2-fixed singular point x and a free regular part
germ, form = load_germ(DATA / "c2_curve.json")
for s in germ.strata:
    print(s.id, "dim", s.dim, "isotropy order", s.isotropy.order)

## The two local invariants of the form
eu = eq_euler_obstruction(form)
rad = eq_radial_index(form)
print("Euler obstruction:", eu, " points:", reduce_count(eu))
print("radial index:     ", rad, " points:", reduce_count(rad))

## Obstruction expressed through radial indices on every stratum closure
report = verify_theorem(form)
for k, (lhs, rhs, ok) in report.per_stratum.items():
    print(f"closure of {k}: {lhs}  vs  {rhs}  {'ok' if ok else 'MISMATCH'}")

## The obstruction of the germ itself
print("Eu of the germ at x:", germ_obstruction(germ, "x"))
