import random

import pytest
import sympy
from hypothesis import given, strategies as st

from eqobs.burnside import BurnsideElement, parse_element, reduce_count
from eqobs.errors import GroupMismatch, ValidationError
from eqobs.groups import generate_group
from eqobs.local import (FormSingularityData, Orbit, eq_euler_obstruction, eq_radial_index,
                         eu_from_gsv, germ_obstruction, gsv_from_relation, s_coefficients, verify_theorem)
from eqobs.io import load_germ

from builders import C2_CURVE, germ, germ_doc

C2 = generate_group("cyclic:2")


def c2(expr):
    return parse_element(expr, C2)


@pytest.fixture
def curve():
    return germ(**C2_CURVE)


def test_c2_curve_values(curve):
    g, form = curve
    assert s_coefficients(form) == {"x": -1, "reg": 3}
    assert eq_radial_index(form) == c2("-[G/H2_0] + 3[G/H1_0]")
    assert eq_radial_index(form, "x") == c2("-[G/H2_0]")
    eu = eq_euler_obstruction(form)
    assert eu == c2("-2[G/H2_0] + 3[G/H1_0]")
    assert reduce_count(eu) == 4
    assert reduce_count(eq_radial_index(form)) == 5
    assert germ_obstruction(g, "x") == c2("2[G/H2_0]")


def test_smooth_single_stratum():
    g, form = germ([("v", 2, [])], [], "v", form=[("v", [4])])
    assert eq_radial_index(form) == c2("4[G/H1_0]")
    assert eq_euler_obstruction(form) == eq_radial_index(form)
    rep = verify_theorem(form)
    assert rep.lhs == rep.rhs == eq_radial_index(form)


def test_smooth_germ_obstruction():
    g, _ = germ([("x", 0, [[1, 0]]), ("v", 1, [])], [("x", "v")], "v", {("x", "v"): 1})
    assert germ_obstruction(g, "x") == BurnsideElement.unit(C2)


def test_no_records_gives_zero(curve):
    g, _ = curve
    form = FormSingularityData(g, [])
    assert eq_euler_obstruction(form) == BurnsideElement.zero(C2)
    assert eq_radial_index(form) == BurnsideElement.zero(C2)
    assert form.validate().warnings


def test_verify_theorem_c2(curve):
    rep = verify_theorem(curve[1])
    assert rep.all_equal
    assert str(rep.lhs) == str(rep.rhs) == "-2*[G/H2_0] + 3*[G/H1_0]"


def test_unknown_stratum(curve):
    with pytest.raises(ValidationError):
        eq_radial_index(curve[1], "nope")


def test_form_validation_errors(curve):
    g, _ = curve
    with pytest.raises(ValidationError, match="not conjugate"):
        FormSingularityData(g, [("reg", [Orbit(1, C2.whole())])])
    with pytest.raises(ValidationError, match="must be 1"):
        FormSingularityData(g, [("x", [Orbit(2, C2.whole())])])
    with pytest.raises(ValidationError, match="single orbit"):
        FormSingularityData(g, [("x", [Orbit(1, C2.whole()), Orbit(1, C2.whole())])])
    with pytest.raises(ValidationError, match="flavor"):
        FormSingularityData(g, [], flavor="quaternionic")


def test_germ_obstruction_requires_fixed_minimal_point(curve):
    g, _ = curve
    with pytest.raises(ValidationError):
        germ_obstruction(g, "reg")
    g2, _ = germ([("x", 0, []), ("v", 1, [])], [("x", "v")], "v", {("x", "v"): 1})
    with pytest.raises(ValidationError, match="fixed"):
        germ_obstruction(g2, "x")


# -- independent oracle for the main identity --------------------------------------

def oracle_sides(g, form):
    """Evaluate both sides of the identity directly from orbit lists and a sympy Moebius matrix."""
    H = g.group
    ids = list(g.ids)
    idx = {x: n for n, x in enumerate(ids)}
    Z = sympy.zeros(len(ids))
    for i in ids:
        for j in ids:
            if g.poset.leq(i, j):
                Z[idx[i], idx[j]] = 1
    MU = Z.inv()
    dimV = g.stratum(g.top).dim

    def sign(i):
        return 1 if form.flavor == "real" else (-1) ** (dimV - g.stratum(i).dim)

    def cls(sub):
        return H.classes.class_of(sub)

    def rad(j):
        c = [0] * len(H.classes)
        for rec in form.records:
            if g.poset.leq(rec.stratum, j):
                for o in rec.orbits:
                    c[cls(o.isotropy)] += sign(rec.stratum) * o.index
        return c

    def eu_of(k):
        c = [0] * len(H.classes)
        for rec in form.records:
            e = g.eu.get((rec.stratum, k), 0) if g.poset.leq(rec.stratum, k) else 0
            for o in rec.orbits:
                c[cls(o.isotropy)] += sign(rec.stratum) * e * o.index
        return c

    out = {}
    for k in ids:
        rhs = [0] * len(H.classes)
        for j in ids:
            coef = sum(MU[idx[j], idx[i]] * (g.eu.get((i, k), 0) if g.poset.leq(i, k) else 0) for i in ids)
            for t, v in enumerate(rad(j)):
                rhs[t] += int(coef) * v
        out[k] = (tuple(eu_of(k)), tuple(rhs))
    return out


@st.composite
def diamond_germs(draw):
    seed = draw(st.integers(0, 2 ** 32))
    rng = random.Random(seed)
    group = rng.choice(["cyclic:2", "symmetric:3", "dihedral:4"])
    G = generate_group(group)
    doc = germ_doc(
        [("0", 1, []), ("a", 2, []), ("b", 2, []), ("t", 3, [])],
        [("0", "a"), ("0", "b"), ("a", "t"), ("b", "t")], "t",
        {p: rng.randint(-5, 5) for p in [("0", "a"), ("0", "b"), ("0", "t"), ("a", "t"), ("b", "t")]},
        group=group)
    doc["flavor"] = rng.choice(["real", "complex"])
    doc["form_data"] = []
    for s in ["0", "a", "b", "t"]:
        orbs = [{"index": rng.randint(-5, 5), "isotropy": []} for _ in range(rng.randint(0, 3))]
        doc["form_data"].append({"stratum": s, "orbits": orbs})
    return load_germ(doc)


@given(diamond_germs())
def test_theorem_on_diamond_against_oracle(gf):
    g, form = gf
    rep = verify_theorem(form)
    assert rep.all_equal
    for k, (lhs, rhs) in oracle_sides(g, form).items():
        assert lhs == rhs
        assert eq_euler_obstruction(form, k).coeffs == lhs


def test_theorem_with_nontrivial_isotropy():
    G = generate_group("dihedral:4")
    T = G.classes
    whole = [list(p) for p in G.whole().generators()]
    refl = [list(p) for p in T.classes[T.by_name("H2_0")].generators()]
    doc = germ_doc([("p", 0, whole), ("l", 1, refl), ("v", 2, [])],
                   [("p", "l"), ("l", "v")], "v", {("p", "l"): 2, ("p", "v"): -3, ("l", "v"): 4},
                   group="dihedral:4", form=[("p", [1]), ("l", [2, -1]), ("v", [5])])
    g, form = load_germ(doc)
    rep = verify_theorem(form)
    assert rep.all_equal
    for k, (lhs, rhs) in oracle_sides(g, form).items():
        assert lhs == rhs


# -- invariants ----------------------------------------------------------------------

def test_splitting_an_orbit_record(curve):
    g, form = curve
    split = FormSingularityData(g, [("x", [Orbit(1, C2.whole())]),
                                    ("reg", [Orbit(5, C2.trivial()), Orbit(-2, C2.trivial())])])
    for k in g.ids:
        assert eq_euler_obstruction(split, k) == eq_euler_obstruction(form, k)
        assert eq_radial_index(split, k) == eq_radial_index(form, k)


def test_flavor_consistency(curve):
    g, form = curve
    real = FormSingularityData(g, form.records, flavor="real")
    dimV = g.dim
    expected = BurnsideElement.zero(C2)
    for rec in form.records:
        part = FormSingularityData(g, [rec], flavor="real", validate=False)
        expected = expected + (-1) ** (dimV - g.stratum(rec.stratum).dim) * eq_euler_obstruction(part)
    assert eq_euler_obstruction(form) == expected
    assert eq_euler_obstruction(real) == c2("2[G/H2_0] + 3[G/H1_0]")


@given(diamond_germs())
def test_reduction_matches_pointwise_sum(gf):
    g, form = gf
    dimV = g.dim
    total = 0
    for rec in form.records:
        for o in rec.orbits:
            n_points = len({frozenset(tuple(p[i] for i in h) for h in o.isotropy.perms) for p in g.group.elements})
            sign = 1 if form.flavor == "real" else (-1) ** (dimV - g.stratum(rec.stratum).dim)
            total += n_points * sign * g.eu[(rec.stratum, g.top)] * o.index
    assert reduce_count(eq_euler_obstruction(form)) == total


# -- GSV relation --------------------------------------------------------------------

def test_gsv_examples():
    eu = c2("-2[G/H2_0] + 3[G/H1_0]")
    unit = BurnsideElement.unit(C2)
    assert gsv_from_relation(eu, unit, unit, 2) == eu
    got = gsv_from_relation(eu, c2("2[G/H2_0]"), c2("[G/H2_0] - [G/H1_0]"), 1)
    assert got == c2("-[G/H2_0] + 4[G/H1_0]")
    assert str(got) == "-1*[G/H2_0] + 4*[G/H1_0]"
    chi = c2("7[G/H1_0]")
    assert gsv_from_relation(eu, chi, chi, 3) == eu


def test_gsv_group_mismatch():
    with pytest.raises(GroupMismatch):
        gsv_from_relation(BurnsideElement.unit(C2), BurnsideElement.unit(generate_group("cyclic:3")),
                          BurnsideElement.unit(C2), 1)


S3 = generate_group("symmetric:3")
s3_elements = st.lists(st.integers(-9, 9), min_size=4, max_size=4).map(lambda c: BurnsideElement(S3, tuple(c)))


@given(s3_elements, s3_elements, s3_elements, st.integers(0, 6))
def test_gsv_roundtrip(eu, germ_eu, chi, n):
    gsv = gsv_from_relation(eu, germ_eu, chi, n)
    assert eu_from_gsv(gsv, germ_eu, chi, n) == eu
    sign = (-1) ** n
    assert eu == gsv + sign * germ_eu - sign * chi
