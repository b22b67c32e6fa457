"""Equivariant radial index and local Euler obstruction of an invariant 1-form on a germ.

The 1-form enters only through the singular points of a deformation that is a
radial extension of its restriction to each stratum: for every stratum a list
of orbits, each with its local index on the stratum and an isotropy subgroup.

Signs.  With ``flavor="complex"`` the contribution of a stratum ``V_i`` carries
``(-1)**(dim V - dim V_i)`` where ``dim V`` is the dimension of the whole germ,
also when evaluating restrictions to a closure of a smaller stratum.  The
``"real"`` flavor carries no signs.  Under this convention the closure of a
stratum ``V_k`` is scored with the ambient sign; the intrinsic complex-flavor
index of that closure as a germ of its own differs by ``(-1)**(dim V - dim V_k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .burnside import BurnsideElement
from .errors import GroupMismatch, ValidationError
from .groups import Subgroup
from .poset import StratGermData, ValidationReport, m_tilde, zeta

FLAVORS = ("real", "complex")


@dataclass(frozen=True)
class Orbit:
    index: int
    isotropy: Subgroup


@dataclass(frozen=True)
class StratumRecord:
    stratum: object
    orbits: tuple


class FormSingularityData:
    def __init__(self, germ: StratGermData, records, flavor: str = "complex", validate: bool = True):
        self.germ = germ
        self.records = tuple(
            r if isinstance(r, StratumRecord) else StratumRecord(r[0], tuple(r[1])) for r in records
        )
        self.flavor = flavor
        if validate:
            self.validate().raise_for_errors()

    def __eq__(self, other):
        if not isinstance(other, FormSingularityData):
            return NotImplemented
        return self.germ == other.germ and self.records == other.records and self.flavor == other.flavor

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        germ = self.germ
        if self.flavor not in FLAVORS:
            rep.errors.append(f"flavor must be one of {FLAVORS}, got {self.flavor!r}")
        table = germ.group.classes
        counts: dict = {}
        for rec in self.records:
            if rec.stratum not in germ.poset.ids:
                rep.errors.append(f"form data refers to unknown stratum {rec.stratum!r}")
                continue
            s = germ.stratum(rec.stratum)
            want = table.class_of(s.isotropy)
            for orb in rec.orbits:
                counts[rec.stratum] = counts.get(rec.stratum, 0) + 1
                if orb.isotropy.parent != germ.group:
                    rep.errors.append(f"stratum {rec.stratum!r}: orbit isotropy is not a subgroup of the acting group")
                elif table.class_of(orb.isotropy) != want:
                    rep.errors.append(
                        f"stratum {rec.stratum!r}: orbit isotropy {table.names[table.class_of(orb.isotropy)]} "
                        f"is not conjugate to the stratum isotropy {table.names[want]}")
                if s.dim == 0 and orb.index != 1:
                    rep.errors.append(f"stratum {rec.stratum!r} is a point: its orbit index must be 1, got {orb.index}")
        for s in germ.strata:
            if s.dim == 0:
                c = counts.get(s.id, 0)
                if c > 1:
                    rep.errors.append(f"point stratum {s.id!r} is a single orbit but has {c} orbit records")
                elif c == 0:
                    rep.warnings.append(f"point stratum {s.id!r} has no singular-point record")
        return rep

    def orbits_on(self, sid):
        for rec in self.records:
            if rec.stratum == sid:
                yield from rec.orbits

    def sign(self, sid) -> int:
        if self.flavor == "real":
            return 1
        return -1 if (self.germ.dim - self.germ.stratum(sid).dim) % 2 else 1

    def index_sum(self, sid) -> int:
        """``t_i``: sum of the local indices over the orbits on stratum ``sid``."""
        return sum(o.index for o in self.orbits_on(sid))


def s_coefficients(data: FormSingularityData) -> dict:
    """``s_i = sign_i * t_i`` for every stratum."""
    return {sid: data.sign(sid) * data.index_sum(sid) for sid in data.germ.ids}


def _check_stratum(data: FormSingularityData, k):
    if k not in data.germ.poset.ids:
        raise ValidationError([f"unknown stratum {k!r}"])


def eq_radial_index(data: FormSingularityData, k=None) -> BurnsideElement:
    """Equivariant radial index of the form on the closure of stratum ``k`` (default: top).

    ``sum_i s_i [H/H_i] zeta(i, k)``.
    """
    germ = data.germ
    k = germ.top if k is None else k
    _check_stratum(data, k)
    H = germ.group
    z = zeta(germ)
    s = s_coefficients(data)
    out = BurnsideElement.zero(H)
    for i in germ.ids:
        if z[(i, k)] and s[i]:
            out = out + BurnsideElement.basis(H, germ.isotropy_class(i), s[i] * z[(i, k)])
    return out


def eq_euler_obstruction(data: FormSingularityData, k=None) -> BurnsideElement:
    """Equivariant local Euler obstruction of the form on the closure of stratum ``k``.

    Summed orbit by orbit: ``sign * Eu(V_k, V_(p)) * ind * [H/H_p]``.
    """
    germ = data.germ
    k = germ.top if k is None else k
    _check_stratum(data, k)
    H = germ.group
    out = BurnsideElement.zero(H)
    for rec in data.records:
        eu = germ.eu_value(k, rec.stratum)
        if not eu:
            continue
        sign = data.sign(rec.stratum)
        for orb in rec.orbits:
            out = out + BurnsideElement.coset(orb.isotropy, sign * eu * orb.index)
    return out


@dataclass
class TheoremReport:
    lhs: BurnsideElement
    rhs: BurnsideElement
    equal: bool
    per_stratum: dict = field(default_factory=dict)

    @property
    def all_equal(self) -> bool:
        return self.equal and all(v[2] for v in self.per_stratum.values())


def _mtilde_combination(data: FormSingularityData, k, mt) -> BurnsideElement:
    out = BurnsideElement.zero(data.germ.group)
    for j in data.germ.ids:
        c = mt[(j, k)]
        if c:
            out = out + c * eq_radial_index(data, j)
    return out


def verify_theorem(data: FormSingularityData) -> TheoremReport:
    """Compare the obstruction with the m~-weighted radial indices, for the top and every stratum."""
    germ = data.germ
    mt = m_tilde(germ)
    per = {}
    for k in germ.ids:
        lhs = eq_euler_obstruction(data, k)
        rhs = _mtilde_combination(data, k, mt)
        per[k] = (lhs, rhs, lhs == rhs)
    lhs, rhs, eq = per[germ.top]
    return TheoremReport(lhs, rhs, eq, per)


def radial_form_data(germ: StratGermData, point_stratum) -> FormSingularityData:
    """Singularity record of ``d|r|^2``: one fixed orbit of index 1 at the point."""
    s = germ.stratum(point_stratum)
    problems = []
    if s.dim != 0:
        problems.append(f"point stratum {point_stratum!r} must have dimension 0")
    if any(germ.poset.lt(i, point_stratum) for i in germ.ids):
        problems.append(f"point stratum {point_stratum!r} must be minimal")
    if s.isotropy.order != germ.group.order:
        problems.append(f"point stratum {point_stratum!r} must be fixed by the whole group")
    if problems:
        raise ValidationError(problems)
    return FormSingularityData(germ, [(point_stratum, [Orbit(1, s.isotropy)])], flavor="real")


def germ_obstruction(germ: StratGermData, point_stratum) -> BurnsideElement:
    """``Eu^H(V, x) = Eu(V, {x}) [H/H]``."""
    return eq_euler_obstruction(radial_form_data(germ, point_stratum))


def gsv_from_relation(eu_omega: BurnsideElement, germ_eu: BurnsideElement,
                      chi_milnor: BurnsideElement, n: int) -> BurnsideElement:
    """Equivariant GSV index of an ICIS of dimension ``n`` from the obstruction relation."""
    for x in (germ_eu, chi_milnor):
        if x.group != eu_omega.group:
            raise GroupMismatch("all arguments must live in the same Burnside ring")
    sign = -1 if n % 2 else 1
    return eu_omega - sign * germ_eu + sign * chi_milnor


def eu_from_gsv(gsv: BurnsideElement, germ_eu: BurnsideElement,
                chi_milnor: BurnsideElement, n: int) -> BurnsideElement:
    """The same relation solved for the obstruction of the form."""
    for x in (germ_eu, chi_milnor):
        if x.group != gsv.group:
            raise GroupMismatch("all arguments must live in the same Burnside ring")
    sign = -1 if n % 2 else 1
    return gsv + sign * germ_eu - sign * chi_milnor


def nonequivariant_values(data: FormSingularityData, k=None) -> tuple[int, int]:
    """(Euler obstruction, radial index) of the form on the closure of ``k``, point by point.

    Each orbit is expanded into its ``|H| / |H_p|`` points.
    """
    germ = data.germ
    k = germ.top if k is None else k
    eu_sum = rad_sum = 0
    for rec in data.records:
        if not germ.poset.leq(rec.stratum, k):
            continue
        sign = data.sign(rec.stratum)
        for orb in rec.orbits:
            for _ in range(germ.group.order // orb.isotropy.order):
                rad_sum += sign * orb.index
                eu_sum += sign * germ.eu_value(k, rec.stratum) * orb.index
    return eu_sum, rad_sum

