import random

import pytest
from hypothesis import given, strategies as st

from eqobs.burnside import BurnsideElement, parse_element, reduce_count
from eqobs.errors import ValidationError
from eqobs.fuzz import random_variety_doc
from eqobs.globalcalc import (CompactStratVariety, GlobalFormData, chi_G, global_obstruction, induced_index_sum,
                              orbit_level_obstruction, poincare_hopf_check, synthesize_form_data)
from eqobs.groups import generate_group
from eqobs.io import load_variety
from eqobs.local import Orbit

from builders import variety
from conftest import DEMO_DATA
from oracles import left_cosets

C2 = generate_group("cyclic:2")


def c2(expr):
    return parse_element(expr, C2)


def test_chi_g_empty():
    V = CompactStratVariety(C2, [], [], None, {}, validate=False)
    assert chi_G(V) == BurnsideElement.zero(C2)


def test_antipodal_sphere():
    V, form = load_variety(DEMO_DATA / "antipodal_s2.json")
    assert chi_G(V) == c2("[G/H1_0]")
    assert reduce_count(chi_G(V)) == 2
    assert global_obstruction(V) == c2("[G/H1_0]")
    assert orbit_level_obstruction(V, form) == global_obstruction(V)
    rep = poincare_hopf_check(V, form)
    assert rep.equal and rep.lhs == c2("[G/H1_0]") and not rep.diagnostics


def test_rotation_sphere():
    V, form = load_variety(DEMO_DATA / "rotation_s2.json")
    assert chi_G(V) == c2("2[G/H2_0]")
    assert reduce_count(chi_G(V)) == 2
    rep = poincare_hopf_check(V, form)
    assert rep.equal and rep.lhs == rep.rhs == c2("2[G/H2_0]")
    assert orbit_level_obstruction(V, form) == global_obstruction(V) == c2("2[G/H2_0]")


def test_smooth_obstruction_is_euler_characteristic():
    V = variety([("p", 0, [[1, 0]], 2), ("r", 1, [], 3)], [("p", "r")], "r", {("p", "r"): 1})
    assert global_obstruction(V) == chi_G(V)


def test_two_strata_obstruction():
    V = variety([("p", 0, [[1, 0]], 5), ("r", 1, [], -2)], [("p", "r")], "r", {("p", "r"): 4})
    assert global_obstruction(V) == c2("20[G/H2_0] - 2[G/H1_0]")


def test_rotation_like_with_larger_obstruction():
    V = variety([("poles", 0, [[1, 0]], 2), ("rest", 1, [], 0)], [("poles", "rest")], "rest",
                {("poles", "rest"): 3})
    assert global_obstruction(V) == c2("6[G/H2_0]")


def test_single_fixed_point_orbit_level():
    V = variety([("p", 0, [[1, 0]], 1), ("r", 1, [], 0)], [("p", "r")], "r", {("p", "r"): 7})
    form = GlobalFormData(V, [("p", [Orbit(1, C2.whole())])])
    assert orbit_level_obstruction(V, form) == c2("7[G/H2_0]")


def test_trivial_group_is_classical():
    C1 = generate_group("cyclic:1")
    V = variety([("a", 0, [], 3), ("b", 2, [], -1)], [("a", "b")], "b", {("a", "b"): 2}, group="cyclic:1")
    form = GlobalFormData(V, [("a", [Orbit(2, C1.whole()), Orbit(1, C1.whole())]), ("b", [Orbit(-1, C1.whole())])])
    rep = poincare_hopf_check(V, form)
    assert rep.equal
    assert reduce_count(rep.lhs) == 2 == reduce_count(chi_G(V))


def test_mismatch_is_reported():
    V, _ = load_variety(DEMO_DATA / "rotation_s2.json")
    form = GlobalFormData(V, [("poles", [Orbit(1, C2.whole())])])
    rep = poincare_hopf_check(V, form)
    assert not rep.equal
    assert rep.diagnostics == ["stratum 'poles': orbit indices sum to 1, chi(W/G) = 2"]
    with pytest.raises(ValidationError, match="expected chi"):
        orbit_level_obstruction(V, form, check=True)
    # without the cross-check the value is still computed
    assert orbit_level_obstruction(V, form) == c2("[G/H2_0]")


def test_wrong_isotropy_rejected():
    V, _ = load_variety(DEMO_DATA / "rotation_s2.json")
    with pytest.raises(ValidationError, match="class"):
        GlobalFormData(V, [("rest", [Orbit(1, C2.whole())])])


def test_form_for_another_variety():
    V, form = load_variety(DEMO_DATA / "rotation_s2.json")
    W, _ = load_variety(DEMO_DATA / "antipodal_s2.json")
    with pytest.raises(ValidationError, match="different variety"):
        orbit_level_obstruction(W, form)


def test_synthesize_is_deterministic_and_honours_sums():
    V, _ = load_variety(DEMO_DATA / "rotation_s2.json")
    a, b = synthesize_form_data(V, 11), synthesize_form_data(V, 11)
    assert a == b
    assert not a.sum_mismatches()
    for rec in a.records:
        for o in rec.orbits:
            assert V.group.classes.class_of(o.isotropy) == V.isotropy_class(rec.stratum)


# -- properties over random varieties ---------------------------------------------

@st.composite
def varieties(draw):
    seed = draw(st.integers(0, 2 ** 32))
    rng = random.Random(seed)
    V, _ = load_variety(random_variety_doc(rng))
    return V, synthesize_form_data(V, rng.randrange(2 ** 32))


def induced_count_oracle(V, form, weight):
    """Point count of the induced sets, by listing cosets of each isotropy group."""
    total = 0
    for rec in form.records:
        for o in rec.orbits:
            total += len(left_cosets(V.group.elements, set(o.isotropy.perms))) * weight(rec.stratum) * o.index
    return total


@given(varieties())
def test_global_identities(vf):
    V, form = vf
    assert orbit_level_obstruction(V, form, check=True) == global_obstruction(V)
    rep = poincare_hopf_check(V, form)
    assert rep.equal and induced_index_sum(V, form) == chi_G(V)
    G = V.group
    expected = sum(V.eu_global(s.id) * s.quotient_euler * (G.order // s.isotropy.order) for s in V.strata)
    assert reduce_count(global_obstruction(V)) == expected
    assert reduce_count(orbit_level_obstruction(V, form)) == induced_count_oracle(V, form, V.eu_global)
    assert reduce_count(induced_index_sum(V, form)) == induced_count_oracle(V, form, lambda s: 1)
    chi = chi_G(V)
    assert chi == sum((BurnsideElement.basis(G, V.isotropy_class(s.id), s.quotient_euler) for s in V.strata),
                      BurnsideElement.zero(G))
