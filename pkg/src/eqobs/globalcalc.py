"""Global invariants of a compact (or affine) stratified G-variety.

Every stratum has a constant isotropy class, so its equivariant Euler
characteristic is ``chi(W_j/G) [G/H_j]``.  The global equivariant Euler
obstruction is computed twice: stratum by stratum from the Euler-obstruction
table, and orbit by orbit by inducing local contributions of a form's
singular points from their isotropy groups.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .burnside import BurnsideElement, induce
from .errors import ValidationError
from .groups import PermGroup
from .local import Orbit, StratumRecord
from .poset import StratGermData, Stratum, ValidationReport, validate_germ

KINDS = ("compact", "affine")


@dataclass(frozen=True)
class GlobalStratum(Stratum):
    quotient_euler: int = 0


class CompactStratVariety(StratGermData):
    """A stratified G-variety; ``Eu(V, W_j)`` is read from the top column of the table.

    ``kind`` (compact or affine) is carried for reporting only.
    """

    def __init__(self, group: PermGroup, strata, relations, top, eu: dict,
                 kind: str = "compact", ambient_dim: int | None = None, validate: bool = True):
        super().__init__(group, strata, relations, top, eu, ambient_dim=ambient_dim, validate=False)
        self.kind = kind
        if validate:
            self.validate().raise_for_errors()

    def __eq__(self, other):
        if not isinstance(other, CompactStratVariety):
            return NotImplemented
        return super().__eq__(other) and self.kind == other.kind

    def validate(self) -> ValidationReport:
        rep = validate_germ(self)
        if self.kind not in KINDS:
            rep.errors.append(f"kind must be one of {KINDS}, got {self.kind!r}")
        for s in self.strata:
            if not isinstance(s, GlobalStratum):
                rep.errors.append(f"stratum {s.id!r} has no quotient_euler")
        return rep

    def eu_global(self, sid) -> int:
        """``Eu(V, W_j)``."""
        return self.eu_value(self.top, sid)


class GlobalFormData:
    """Orbits of singular points of a G-invariant form (radial at infinity if affine)."""

    def __init__(self, variety: CompactStratVariety, records, validate: bool = True):
        self.variety = variety
        self.records = tuple(
            r if isinstance(r, StratumRecord) else StratumRecord(r[0], tuple(r[1])) for r in records
        )
        if validate:
            self.validate().raise_for_errors()

    def __eq__(self, other):
        if not isinstance(other, GlobalFormData):
            return NotImplemented
        return self.variety == other.variety and self.records == other.records

    def validate(self, check_sums: bool = False) -> ValidationReport:
        rep = ValidationReport()
        V = self.variety
        table = V.group.classes
        for rec in self.records:
            if rec.stratum not in V.poset.ids:
                rep.errors.append(f"form data refers to unknown stratum {rec.stratum!r}")
                continue
            want = V.isotropy_class(rec.stratum)
            for orb in rec.orbits:
                if orb.isotropy.parent != V.group:
                    rep.errors.append(f"stratum {rec.stratum!r}: orbit isotropy is not a subgroup of the acting group")
                elif table.class_of(orb.isotropy) != want:
                    rep.errors.append(f"stratum {rec.stratum!r}: orbit isotropy is not in the stratum's class "
                                      f"{table.names[want]}")
        if check_sums:
            for sid, got, want in self.sum_mismatches():
                rep.errors.append(f"stratum {sid!r}: orbit indices sum to {got}, expected chi(W/G) = {want}")
        return rep

    def index_sum(self, sid) -> int:
        return sum(o.index for rec in self.records if rec.stratum == sid for o in rec.orbits)

    def sum_mismatches(self) -> list[tuple]:
        out = []
        for s in self.variety.strata:
            got = self.index_sum(s.id)
            if got != s.quotient_euler:
                out.append((s.id, got, s.quotient_euler))
        return out


def chi_G(variety: CompactStratVariety) -> BurnsideElement:
    """Equivariant Euler characteristic ``sum_j chi(W_j/G) [G/H_j]``."""
    G = variety.group
    out = BurnsideElement.zero(G)
    for s in variety.strata:
        out = out + BurnsideElement.basis(G, variety.isotropy_class(s.id), s.quotient_euler)
    return out


def global_obstruction(variety: CompactStratVariety) -> BurnsideElement:
    """``sum_j Eu(V, W_j) chi(W_j/G) [G/H_j]``."""
    G = variety.group
    out = BurnsideElement.zero(G)
    for s in variety.strata:
        c = variety.eu_global(s.id) * s.quotient_euler
        if c:
            out = out + BurnsideElement.basis(G, variety.isotropy_class(s.id), c)
    return out


def _check_form(variety, form, check):
    if form.variety is not variety and form.variety != variety:
        raise ValidationError(["form data belongs to a different variety"])
    form.validate(check_sums=check).raise_for_errors()


def orbit_level_obstruction(variety: CompactStratVariety, form: GlobalFormData,
                            check: bool = False) -> BurnsideElement:
    """Sum over singular orbits of ``I_{G_p}^G(Eu(V, W_(p)) ind [G_p/G_p])``."""
    _check_form(variety, form, check)
    out = BurnsideElement.zero(variety.group)
    for rec in form.records:
        eu = variety.eu_global(rec.stratum)
        for orb in rec.orbits:
            local = BurnsideElement.unit(orb.isotropy.group) * (eu * orb.index)
            out = out + induce(local, orb.isotropy)
    return out


def induced_index_sum(variety: CompactStratVariety, form: GlobalFormData,
                      check: bool = False) -> BurnsideElement:
    """Sum over singular orbits of ``I_{G_p}^G(ind [G_p/G_p])``."""
    _check_form(variety, form, check)
    out = BurnsideElement.zero(variety.group)
    for rec in form.records:
        for orb in rec.orbits:
            out = out + induce(BurnsideElement.unit(orb.isotropy.group) * orb.index, orb.isotropy)
    return out


@dataclass
class PoincareHopfReport:
    lhs: BurnsideElement
    rhs: BurnsideElement
    equal: bool
    diagnostics: list = field(default_factory=list)


def poincare_hopf_check(variety: CompactStratVariety, form: GlobalFormData) -> PoincareHopfReport:
    lhs = induced_index_sum(variety, form)
    rhs = chi_G(variety)
    diag = [f"stratum {sid!r}: orbit indices sum to {got}, chi(W/G) = {want}"
            for sid, got, want in form.sum_mismatches()]
    return PoincareHopfReport(lhs, rhs, lhs == rhs, diag)


def synthesize_form_data(variety: CompactStratVariety, seed: int, max_orbits: int = 3,
                         index_range: tuple[int, int] = (-5, 5)) -> GlobalFormData:
    """Random orbit data whose indices on each stratum sum to ``chi(W_j/G)``.

    Deterministic in ``seed``; isotropy groups are random conjugates of the
    stratum representative.
    """
    rng = random.Random(seed)
    G = variety.group
    lo, hi = index_range
    records = []
    for s in variety.strata:
        k = rng.randint(0 if s.quotient_euler == 0 else 1, max_orbits)
        idx = [rng.randint(lo, hi) for _ in range(k - 1)]
        if k:
            idx.append(s.quotient_euler - sum(idx))
        orbits = tuple(Orbit(i, s.isotropy.conjugate(rng.randrange(G.order))) for i in idx)
        if orbits:
            records.append(StratumRecord(s.id, orbits))
    return GlobalFormData(variety, records)


def nonequivariant_values(variety: CompactStratVariety, form: GlobalFormData) -> dict:
    """Integer counterparts computed point by point (each orbit has ``|G|/|G_p|`` points)."""
    G = variety.group
    eu_sum = ind_sum = 0
    for rec in form.records:
        for orb in rec.orbits:
            for _ in range(G.order // orb.isotropy.order):
                ind_sum += orb.index
                eu_sum += variety.eu_global(rec.stratum) * orb.index
    chi = sum(s.quotient_euler * (G.order // s.isotropy.order) for s in variety.strata)
    return {"global_obstruction": eu_sum, "index_sum": ind_sum, "chi": chi}
